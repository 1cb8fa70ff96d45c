#pragma once

#include "cutproject/analysis.hpp"
#include "cutproject/hull.hpp"
#include "cutproject/serialize.hpp"
#include "cutproject/transforms.hpp"

namespace cutproject {

Json to_json(const CertificateCheck& c);
CertificateCheck check_from_json(const Json& j);

Json to_json(const TransformCertificate& c);
TransformCertificate certificate_from_json(const Json& j);
TransformCertificate::Kind certificate_kind_from_string(const std::string& s);

Json to_json(const GenericLatticeCertificate& c);

Json to_json(const DensityReport& r);
Json to_json(const EquidistributionReport& r);
Json to_json(const RepetitivityReport& r);
Json to_json(const PatchComparison& r);
Json to_json(const LimitPatchReport& r);

/// Decimal rendering used in reports next to exact forms.
Json approx_json(const ScalarVec& v);

}  // namespace cutproject
