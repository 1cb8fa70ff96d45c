#include <doctest.h>

#include "cutproject/analysis.hpp"
#include "cutproject/error.hpp"
#include "cutproject/hull.hpp"
#include "oracles.hpp"

using namespace cutproject;
using oracles::same_points;

namespace {

const Scalar kTau = oracles::tau();
const Scalar kTop = kTau - Scalar(1);

HPoint real_point(const Scalar& x) { return HPoint{{FactorCoord{RealCoord{{x}}}}}; }
Scalar star_value(const HPoint& h) { return std::get<RealCoord>(h.factors[0].v).x[0]; }

Interval fib_interval() { return Interval::half_open(Scalar(-1), kTop); }
Window fib_window() { return Window::interval(fib_interval()); }
Window open_window() { return Window::interval(Interval::open(Scalar(-1), kTop)); }
Window closed_window() { return Window::interval(Interval::closed(Scalar(-1), kTop)); }

AlmostModelSetWitness fib_witness() {
  return {open_window(), closed_window(), [](const LatticePoint& lp) { return fib_window().contains(lp.star); }};
}

}  // namespace

TEST_CASE("shifted projections") {
  const auto s = CutProjectScheme::fibonacci();
  const Box b = Box::cube(1, Scalar(0), Scalar(20));
  const Patch base = s.project_points(b, fib_window());
  CHECK(same_points(shifted_projection(s, fib_window(), {{Scalar(0)}, s.space().zero()}, b).points, base.points));
  for (const IntVec& n : {IntVec{1, 0}, IntVec{-2, 3}, IntVec{5, -4}}) {
    const LatticePoint l = s.point(n);
    CHECK(same_points(shifted_projection(s, fib_window(), {l.x, l.star}, b).points, base.points));
  }
  const Scalar r2 = Scalar::sqrt(2);
  const Scalar tenth = Scalar::rational(1, 10);
  const auto oracle = oracles::fibonacci_points(
      b, [&](const Scalar& c) { return fib_interval().contains(c + tenth); }, 40, r2);
  const Patch p = shifted_projection(s, fib_window(), {{r2}, real_point(tenth)}, b);
  CHECK(same_points(p.points, oracle));
  CHECK(p.size() > 5);
  // Covariance under a lattice vector added to a non-lattice shift.
  const LatticePoint l = s.point({3, -1});
  CHECK(same_points(shifted_projection(s, fib_window(), {ScalarVec{r2} + l.x, s.space().add(real_point(tenth), l.star)}, b).points,
                    p.points));
}

TEST_CASE("limit patches at the origin and at a generic target") {
  const auto s = CutProjectScheme::fibonacci();
  const Box k = Box::cube(1, Scalar(-10), Scalar(10));
  const auto at_zero = limit_patch_check(s, fib_witness(), s.space().zero(), k);
  CHECK(at_zero.holds());
  CHECK(same_points(at_zero.limit.points, s.project_points(k, fib_window()).points));

  const HPoint t = real_point(kTop / Scalar(2));
  const auto rep = limit_patch_check(s, fib_witness(), t, k);
  CHECK(rep.holds());
  CHECK(rep.boundary_points.empty());
  CHECK(same_points(rep.lower.points, rep.upper.points));
  CHECK(rep.sequence.size() >= 2);
  for (std::size_t i = 0; i < rep.distances.size(); ++i) CHECK(rep.distances[i] <= 0.1 * std::pow(0.5, i) + 1e-12);
}

TEST_CASE("limit patch at a boundary target flags the boundary point") {
  const auto s = CutProjectScheme::fibonacci();
  const Box k = Box::cube(1, Scalar(-10), Scalar(10));
  const LatticePoint n0 = s.point({1, 1});
  const HPoint t = real_point(star_value(n0.star) - kTop);
  const auto rep = limit_patch_check(s, fib_witness(), t, k);
  // The window length tau is itself a star (of (1, -1)), so t - 1 is the
  // star of n0 - (1, -1) = (0, 2) and both ends of t + W hit points.
  REQUIRE(rep.boundary_points.size() == 2);
  CHECK(equal(rep.boundary_points[0], n0.x));
  CHECK(equal(rep.boundary_points[1], s.point({0, 2}).x));
  CHECK(rep.lower_included);
  CHECK(rep.upper_included);
  CHECK(rep.upper.size() == rep.lower.size() + 2);
}

TEST_CASE("limit patch reports a stall") {
  const auto s = CutProjectScheme::fibonacci();
  LimitPatchOptions opts;
  opts.tolerance = 1e-3;
  opts.max_search_radius = 16;
  const auto rep = limit_patch_check(s, fib_witness(), real_point(Scalar::rational(1, 3)), Box::cube(1, Scalar(-5), Scalar(5)), opts);
  CHECK(rep.stall.has_value());
  CHECK_FALSE(rep.holds());
}

TEST_CASE("generic shifts") {
  const auto s = CutProjectScheme::fibonacci();
  const Window w = fib_window();
  CHECK(s.space().is_zero(generic_shift(s, w, w, 100).t));

  const Window u = open_window();
  const Window upper = Window::interval(Interval{Scalar(-1), kTop, false, true});
  const auto g = generic_shift(s, u, upper, 500);
  CHECK(g.attempt == 0);
  CHECK(std::fabs(star_value(g.t).to_double() - 1 / std::numbers::pi) < 1e-12);
  CHECK_FALSE(shift_collision(s, u, upper, g.t, 1000).has_value());
  const Box k = Box::cube(1, Scalar(-10), Scalar(10));
  CHECK(same_points(s.project_points(k, u.translate(g.t)).points, s.project_points(k, upper.translate(g.t)).points));

  const IntVec n0{4, -3};
  const HPoint bad = real_point(star_value(s.star(n0)) - kTop);
  const auto hit = shift_collision(s, u, upper, bad, 10);
  REQUIRE(hit);
  CHECK(*hit == n0);
  const auto g2 = generic_shift(s, u, upper, 10, 3, 1, {bad});
  REQUIRE(g2.rejected.size() == 1);
  CHECK(g2.rejected[0].second == n0);
  CHECK(g2.attempt == 1);
  CHECK_THROWS_AS(generic_shift(s, u, upper, 10, 0, 1, {bad}), CertificationFailure);
}

TEST_CASE("hull classification") {
  const auto s = CutProjectScheme::fibonacci();
  const AlmostModelSetWitness upper{open_window(), closed_window(),
                                    [](const LatticePoint& lp) { return closed_window().contains(lp.star); }};
  const auto plain = hull_classification_check(s, upper, {{Scalar(0)}, s.space().zero()}, Box::cube(1, Scalar(-20), Scalar(20)));
  CHECK(plain.passed());
  CHECK_FALSE(plain.translation.has_value());

  const Box k = Box::cube(1, Scalar(-20), Scalar(20));
  const ShiftParameter x{{Scalar::sqrt(2)}, s.space().zero()};
  const auto rep = hull_classification_check(s, fib_witness(), x, k);
  CHECK(rep.passed());
  REQUIRE(rep.translation.has_value());
  CHECK_FALSE(rep.translation->commensurate());
  const auto oracle = oracles::fibonacci_points(k, [](const Scalar& c) { return fib_interval().contains(c); }, 40,
                                                Scalar::sqrt(2));
  CHECK(same_points(rep.gamma.points, oracle));

  const ShiftParameter xt{{kTau / Scalar(3)}, real_point(Scalar::rational(1, 5))};
  const auto twisted = hull_classification_check(s, fib_witness(), xt, k);
  CHECK(twisted.passed());
  REQUIRE(twisted.translation.has_value());
  CHECK(twisted.translation->m == 3);

  Patch corrupted = rep.gamma;
  corrupted.points.push_back({Scalar::sqrt(2) + Scalar::rational(1, 2)});
  sort_points(corrupted.points);
  const auto bad = hull_classification_check(s, fib_witness(), x, k, corrupted);
  CHECK_FALSE(bad.passed());
  REQUIRE(bad.witness);
  CHECK(equal(*bad.witness, {Scalar::sqrt(2) + Scalar::rational(1, 2)}));
}
