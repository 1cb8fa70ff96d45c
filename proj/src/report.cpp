#include "cutproject/report.hpp"

#include "cutproject/error.hpp"

namespace cutproject {

namespace {

Json optional_point(const std::optional<ScalarVec>& x) { return x ? to_json(*x) : Json(nullptr); }

Json patch_summary(const Patch& p) { return Json{{"box", to_json(p.box)}, {"count", p.size()}}; }

}  // namespace

Json approx_json(const ScalarVec& v) { return Json(to_doubles(v)); }

Json to_json(const CertificateCheck& c) {
  return Json{{"name", c.name},     {"box", to_json(c.box)}, {"window", to_json(c.window)},
              {"shift", c.shift},   {"passed", c.passed},    {"detail", c.detail}};
}

CertificateCheck check_from_json(const Json& j) {
  CertificateCheck c;
  c.name = j.at("name").get<std::string>();
  c.box = box_from_json(j.at("box"));
  c.window = window_from_json(j.at("window"));
  c.shift = j.value("shift", 0LL);
  c.passed = j.at("passed").get<bool>();
  c.detail = j.value("detail", "");
  return c;
}

TransformCertificate::Kind certificate_kind_from_string(const std::string& s) {
  using K = TransformCertificate::Kind;
  for (K k : {K::Translation, K::QuotientTranslation, K::InjectiveExtension, K::WindowAugmentation})
    if (to_string(k) == s) return k;
  throw InvalidInput("unknown certificate kind " + s);
}

Json to_json(const TransformCertificate& c) {
  Json checks = Json::array();
  for (const auto& k : c.checks) checks.push_back(to_json(k));
  Json notes = Json::object();
  for (const auto& [k, v] : c.notes) notes[k] = v;
  return Json{{"kind", to_string(c.kind)}, {"input_id", c.input_id}, {"output_id", c.output_id},
              {"lift_rule", c.lift_rule}, {"passed", c.passed()},   {"checks", checks},
              {"notes", notes}};
}

TransformCertificate certificate_from_json(const Json& j) {
  try {
    TransformCertificate c;
    c.kind = certificate_kind_from_string(j.at("kind").get<std::string>());
    c.input_id = j.at("input_id").get<std::string>();
    c.output_id = j.at("output_id").get<std::string>();
    c.lift_rule = j.value("lift_rule", "");
    for (const auto& k : j.at("checks")) c.checks.push_back(check_from_json(k));
    if (j.contains("notes"))
      for (const auto& [k, v] : j.at("notes").items()) c.notes.emplace_back(k, v.get<std::string>());
    return c;
  } catch (const Json::exception& e) {
    throw InvalidInput(std::string("certificate: ") + e.what());
  }
}

Json to_json(const GenericLatticeCertificate& c) {
  Json constants = Json::array();
  for (const auto& e : c.constants) constants.push_back(e.text());
  Json rejected = Json::array();
  for (const auto& [text, why] : c.rejected) rejected.push_back(Json{{"constant", text}, {"reason", why}});
  return Json{{"constants", constants},     {"bound", c.bound},   {"precision_bits", c.precision_bits},
              {"heuristic", c.heuristic},   {"passed", c.passed}, {"rejected", rejected}};
}

Json to_json(const DensityReport& r) {
  const bool regular = r.lower == r.upper;
  Json rows = Json::array();
  for (std::size_t i = 0; i < r.n.size(); ++i) {
    Json row{{"n", r.n[i]},
             {"count", r.counts[i]},
             {"empirical", r.empirical[i]},
             {"correction", r.correction(i)},
             {"within", static_cast<bool>(r.within[i])}};
    if (regular) row["error"] = r.empirical[i] - r.lower.to_double();
    rows.push_back(row);
  }
  return Json{{"lower", to_json(r.lower)},
              {"upper", to_json(r.upper)},
              {"lower_approx", r.lower.to_double()},
              {"upper_approx", r.upper.to_double()},
              {"boundary_constant", r.boundary_constant},
              {"rows", rows},
              {"all_within", r.all_within()}};
}

Json to_json(const EquidistributionReport& r) {
  return Json{{"status", to_string(r.status)},
              {"points", r.points},
              {"max_coefficient", r.max_coefficient},
              {"worst_character", approx_json(r.worst_character)},
              {"characters", r.characters},
              {"cells", r.cells},
              {"cells_hit", r.cells_hit},
              {"discrepancy", r.discrepancy},
              {"tolerance", r.tolerance}};
}

Json to_json(const RepetitivityReport& r) {
  return Json{{"passed", r.passed},
              {"candidates", r.candidates},
              {"returns", r.returns},
              {"witness_center", optional_point(r.witness_center)}};
}

Json to_json(const PatchComparison& r) {
  return Json{{"holds", r.holds}, {"witness", optional_point(r.witness)}, {"detail", r.detail}};
}

Json to_json(const LimitPatchReport& r) {
  Json steps = Json::array();
  for (std::size_t i = 0; i < r.sequence.size(); ++i) {
    Json s{{"n", r.sequence[i]}, {"distance", r.distances[i]}};
    if (i < r.patches.size()) s["count"] = r.patches[i].size();
    steps.push_back(s);
  }
  Json boundary = Json::array();
  for (const auto& x : r.boundary_points) boundary.push_back(to_json(x));
  return Json{{"holds", r.holds()},
              {"stabilized", r.stabilized},
              {"lower_included", r.lower_included},
              {"upper_included", r.upper_included},
              {"steps", steps},
              {"limit", patch_summary(r.limit)},
              {"lower", patch_summary(r.lower)},
              {"upper", patch_summary(r.upper)},
              {"boundary_points", boundary},
              {"stall", r.stall ? Json(*r.stall) : Json(nullptr)}};
}

}  // namespace cutproject
