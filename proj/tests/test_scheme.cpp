#include <doctest.h>

#include <random>
#include <set>

#include "cutproject/error.hpp"
#include "cutproject/scheme.hpp"
#include "cutproject/serialize.hpp"

using namespace cutproject;

namespace {

const Scalar kTau = Scalar::parse("tau");
const Scalar kTauConj = Scalar(1) - kTau;

HPoint real_point(const Scalar& x) { return HPoint{{FactorCoord{RealCoord{{x}}}}}; }

Window fib_window() { return Window::interval(Interval::half_open(Scalar(-1), kTau - Scalar(1))); }

// Independent scan over a + b tau with |a|, |b| <= n, using the Galois
// conjugate directly instead of the scheme's star map.
std::vector<ScalarVec> brute_fibonacci(const Box& b, const Interval& w, long long n) {
  std::vector<ScalarVec> out;
  for (long long a = -n; a <= n; ++a) {
    for (long long c = -n; c <= n; ++c) {
      const Scalar x = Scalar(a) + Scalar(c) * kTau;
      const Scalar conj = Scalar(a) + Scalar(c) * kTauConj;
      if (b.contains(ScalarVec{x}) && w.contains(conj)) out.push_back({x});
    }
  }
  sort_points(out);
  return out;
}

bool same_points(const std::vector<ScalarVec>& a, const std::vector<ScalarVec>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!equal(a[i], b[i])) return false;
  return true;
}

// Z[sqrt2]^2 embedded in R^2 x R^2 by (x, conjugate x) coordinatewise.
CutProjectScheme planar_scheme() {
  const Scalar r2 = Scalar::sqrt(2);
  const InternalSpace h = InternalSpace::real(2);
  std::vector<Generator> gens;
  for (int axis = 0; axis < 2; ++axis) {
    for (int k = 0; k < 2; ++k) {
      const Scalar g = k == 0 ? Scalar(1) : r2;
      const Scalar s = k == 0 ? Scalar(1) : -r2;
      ScalarVec gv(2, Scalar(0)), hv(2, Scalar(0));
      gv[axis] = g;
      hv[axis] = s;
      gens.push_back(Generator{gv, HPoint{{FactorCoord{RealCoord{hv}}}}});
    }
  }
  return CutProjectScheme(2, h, gens);
}

}  // namespace

TEST_CASE("star map of the Fibonacci scheme") {
  const auto s = CutProjectScheme::fibonacci();
  const auto& r = s.space();
  CHECK(r.equal(s.star({0, 1}), real_point(kTauConj)));
  CHECK(r.is_zero(s.star({0, 0})));
  CHECK(r.equal(s.star({1, 1}), real_point(kTauConj * kTauConj)));
  CHECK(s.direct({1, 1})[0] == kTau * kTau);
}

TEST_CASE("enumeration matches a brute-force scan") {
  const auto s = CutProjectScheme::fibonacci();
  const Box b = Box::cube(1, Scalar(0), Scalar(20));
  const Interval w = Interval::half_open(Scalar(-1), kTau - Scalar(1));
  const Patch p = s.project_points(b, Window::interval(w));
  CHECK(same_points(p.points, brute_fibonacci(b, w, 40)));
  CHECK(p.size() > 0);

  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> num(-30, 30);
  for (int t = 0; t < 40; ++t) {
    Scalar lo = Scalar::rational(num(rng), 7) + Scalar::rational(num(rng), 11) * kTau;
    Scalar hi = lo + Scalar::rational(std::abs(num(rng)) + 1, 9);
    const Interval iv{lo, hi, t % 2 == 0, t % 3 == 0};
    Scalar bl = Scalar::rational(num(rng), 3);
    const Box box{{bl}, {bl + Scalar(12)}};
    CHECK(same_points(s.project_points(box, Window::interval(iv)).points, brute_fibonacci(box, iv, 60)));
  }
}

TEST_CASE("planar enumeration matches a brute-force scan") {
  const auto s = planar_scheme();
  const Scalar r2 = Scalar::sqrt(2);
  const Box b{{Scalar(-3), Scalar(0)}, {Scalar(3), Scalar::rational(7, 2)}};
  const Window w = Window::box(s.space(), {AxisSet{{Interval::half_open(Scalar(-1), Scalar(1))}, {}},
                                           AxisSet{{Interval::closed(Scalar(0), r2)}, {}}});
  std::vector<ScalarVec> brute;
  for (const auto& n : s.coordinate_box(9)) {
    const LatticePoint lp = s.point(n);
    if (b.contains(lp.x) && w.contains(lp.star)) brute.push_back(lp.x);
  }
  sort_points(brute);
  const Patch p = s.project_points(b, w);
  CHECK(same_points(p.points, brute));
  CHECK(p.size() > 5);
}

TEST_CASE("trivial windows and monotonicity") {
  const auto s = CutProjectScheme::fibonacci();
  const Box b = Box::cube(1, Scalar(-10), Scalar(10));
  CHECK(s.project_points(b, Window::empty(s.space())).size() == 0);
  const Window small = Window::interval(Interval::open(Scalar::rational(-1, 3), Scalar::rational(1, 3)));
  CHECK(s.project_points(b, small).contains({Scalar(0)}));
  const Patch big = s.project_points(b, fib_window());
  for (const auto& x : s.project_points(b, small).points) CHECK(big.contains(x));
}

TEST_CASE("translation covariance inside the scheme") {
  const auto s = CutProjectScheme::fibonacci();
  const Box b = Box::cube(1, Scalar(-15), Scalar(15));
  for (const IntVec& n0 : {IntVec{1, 0}, IntVec{0, 1}, IntVec{-2, 3}, IntVec{4, -1}}) {
    const LatticePoint l = s.point(n0);
    const Patch lhs = s.project_points(b.translated(l.x), fib_window().translate(l.star));
    const Patch rhs = s.project_points(b, fib_window()).translated(l.x);
    CHECK(same_points(lhs.points, rhs.points));
  }
}

TEST_CASE("threads do not change the result") {
  const auto s = CutProjectScheme::fibonacci();
  const Box b = Box::cube(1, Scalar(-300), Scalar(300));
  EnumerationLimits one{2e8, 1}, many{2e8, 6};
  const auto a = s.enumerate(b, fib_window(), one);
  const auto c = s.enumerate(b, fib_window(), many);
  REQUIRE(a.size() == c.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].n == c[i].n);
}

TEST_CASE("enumeration budget") {
  const auto s = CutProjectScheme::fibonacci();
  EnumerationLimits tight{10, 1};
  CHECK_THROWS_AS(s.enumerate(Box::cube(1, Scalar(-1000), Scalar(1000)), fib_window(), tight), EnumerationOverflow);
}

TEST_CASE("covolume and density") {
  const auto s = CutProjectScheme::fibonacci();
  CHECK(s.covolume() == Scalar::sqrt(5));
  CHECK(s.density() == Scalar(1) / Scalar::sqrt(5));
  CHECK(CutProjectScheme::square_lattice(1).density() == Scalar(1));
  const InternalSpace r = InternalSpace::real(1);
  const CutProjectScheme scaled(1, r, {Generator{{Scalar(2)}, real_point(Scalar(0))}, Generator{{Scalar(0)}, real_point(Scalar(1))}},
                                false);
  CHECK(scaled.density() == Scalar::rational(1, 2));
}

TEST_CASE("degenerate lattices need an explicit opt-out") {
  const InternalSpace r = InternalSpace::real(1);
  CHECK_THROWS_AS(CutProjectScheme(1, r, {Generator{{Scalar(1)}, real_point(Scalar(0))},
                                          Generator{{Scalar(2)}, real_point(Scalar(1))}}),
                  InvalidInput);
  CHECK_THROWS_AS(CutProjectScheme(1, r, {Generator{{Scalar(1)}, real_point(Scalar(1))}}), InvalidInput);
}

TEST_CASE("commensurability") {
  const auto s = CutProjectScheme::fibonacci();
  const auto third = s.is_commensurate({kTau / Scalar(3)}, 1000);
  REQUIRE(third);
  CHECK(third->m == 3);
  CHECK(third->n == IntVec{0, 1});
  CHECK_FALSE(third->heuristic);
  const auto five = s.is_commensurate({Scalar(5)}, 1000);
  REQUIRE(five);
  CHECK(five->m == 1);
  CHECK(five->n == IntVec{5, 0});
  CHECK_FALSE(s.is_commensurate({Scalar::sqrt(2)}, 1'000'000));
  CHECK_FALSE(s.is_commensurate({Scalar::rational(1, 7)}, 6));
  CHECK_THROWS_AS(s.is_commensurate({Scalar(0)}, 10), InvalidInput);

  const auto approx = s.is_commensurate({Scalar::approx(kTau.to_double() / 3.0)}, 50);
  REQUIRE(approx);
  CHECK(approx->heuristic);
  CHECK(approx->m == 3);
  CHECK(approx->n == IntVec{0, 1});
}

TEST_CASE("density heuristic") {
  CHECK(CutProjectScheme::fibonacci().dense_heuristic());
  CHECK_FALSE(CutProjectScheme::square_lattice(1).dense_heuristic());
}

TEST_CASE("JSON round trips") {
  const auto s = CutProjectScheme::fibonacci();
  const Json j = to_json(s);
  const auto back = scheme_from_json(j);
  CHECK(to_json(back).dump() == j.dump());
  CHECK(back.id() == s.id());
  CHECK(s.id().size() == 16);

  const Patch p = s.project_points(Box::cube(1, Scalar(0), Scalar(10)), fib_window(), true);
  const Patch q = patch_from_json(to_json(p));
  CHECK(same_points(p.points, q.points));
  CHECK(p.coords == q.coords);
  CHECK(to_json(q).dump() == to_json(p).dump());

  const Window w = fib_window();
  CHECK(window_from_json(to_json(w)).same_set(w));
  CHECK(window_from_json(Json("[-1, tau-1)")).same_set(w));

  for (const Scalar& x : {Scalar::rational(-3, 4), kTau, Scalar::sqrt(2) + Scalar::sqrt(5), Scalar::approx(0.25)}) {
    CHECK(scalar_from_json(to_json(x)) == x);
  }
  CHECK(to_json(kTau)["type"] == "quad");
  CHECK(to_json(Scalar(2))["type"] == "rat");

  const InternalSpace tw = InternalSpace::twisted(InternalSpace::real(1).product(InternalSpace::cyclic(3)), 2,
                                                  HPoint{{FactorCoord{RealCoord{{kTau}}}, FactorCoord{CyclicCoord{1}}}});
  CHECK(space_from_json(to_json(tw)) == tw);
  CHECK_THROWS_AS(scheme_from_json(Json::parse(R"({"d":1})")), InvalidInput);
}
