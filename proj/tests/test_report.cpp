#include <doctest.h>

#include "cutproject/error.hpp"
#include "cutproject/report.hpp"

using namespace cutproject;

TEST_CASE("certificates survive a JSON round trip") {
  const auto s = CutProjectScheme::fibonacci();
  TranslationOptions opts;
  opts.multiples = {-1, 1};
  const Translation t = translate_cps(s, {Scalar::parse("tau/3")}, opts);
  const Json j = to_json(t.certificate);
  const TransformCertificate back = certificate_from_json(j);
  CHECK(to_json(back).dump() == j.dump());
  CHECK(back.passed());
  CHECK(back.checks.size() == t.certificate.checks.size());

  Translation replay = t;
  replay.certificate = back;
  CHECK(reverify(replay));

  Json broken = j;
  broken["kind"] = "Rotation";
  CHECK_THROWS_AS(certificate_from_json(broken), InvalidInput);
  broken = j;
  broken.erase("checks");
  CHECK_THROWS_AS(certificate_from_json(broken), InvalidInput);
}

TEST_CASE("reports carry the exact density bounds") {
  const auto s = CutProjectScheme::fibonacci();
  const Window w = Window::interval(Interval::half_open(Scalar(-1), Scalar::parse("tau-1")));
  const Json j = to_json(empirical_density(s, w, {100}));
  CHECK(scalar_from_json(j.at("lower")) == Scalar::parse("tau/sqrt(5)"));
  CHECK(j.at("rows").size() == 1);
  CHECK(j.at("rows")[0].contains("error"));
}
