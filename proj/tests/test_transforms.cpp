#include <doctest.h>

#include <random>

#include "cutproject/error.hpp"
#include "cutproject/transforms.hpp"
#include "oracles.hpp"

using namespace cutproject;
using oracles::same_points;

namespace {

const Scalar kTau = oracles::tau();

Interval fib_interval() { return Interval::half_open(Scalar(-1), kTau - Scalar(1)); }
Window fib_window() { return Window::interval(fib_interval()); }

HPoint real_point(const Scalar& x) { return HPoint{{FactorCoord{RealCoord{{x}}}}}; }

TranslationOptions options(const Box& b) {
  TranslationOptions o;
  o.windows = {fib_window()};
  o.box = b;
  return o;
}

// Random finite union of intervals with endpoints in Q(sqrt5).
Window random_window(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-12, 12), len(0, 8), flag(0, 1), pieces(1, 3);
  std::vector<FlatBox> boxes;
  const int k = pieces(rng);
  for (int i = 0; i < k; ++i) {
    const Scalar lo = Scalar::rational(num(rng), 4) + Scalar::rational(num(rng), 8) * kTau;
    const Scalar hi = lo + Scalar::rational(len(rng), 3);
    boxes.push_back({AxisSet{{Interval{lo, hi, flag(rng) == 1, flag(rng) == 1 || len(rng) == 0}}, {}}});
  }
  return Window(InternalSpace::real(1), boxes);
}

}  // namespace

TEST_CASE("incommensurate translation by sqrt 2") {
  const auto s = CutProjectScheme::fibonacci();
  const Scalar r2 = Scalar::sqrt(2);
  const Box b = Box::cube(1, Scalar(-20), Scalar(20));
  auto opts = options(b);
  opts.multiples = {-3, -2, -1, 0, 1, 2, 3};
  const Translation t = translate_cps(s, {r2}, opts);
  CHECK_FALSE(t.commensurate());
  CHECK(t.scheme.space() == InternalSpace::real(1).product(InternalSpace::integers(1)));
  CHECK(t.certificate.kind == TransformCertificate::Kind::Translation);
  CHECK(t.certificate.passed());
  CHECK(t.certificate.checks.size() == 8);
  for (long long n = -3; n <= 3; ++n) {
    const auto oracle = oracles::fibonacci_points(b, [](const Scalar& c) { return fib_interval().contains(c); }, 40,
                                                  Scalar(n) * r2);
    const Patch p = t.scheme.project_points(b, lift_window(t, fib_window(), n));
    CHECK(same_points(p.points, oracle));
    CHECK(p.size() > 10);
  }
  FlatBox level(2);
  level[0].intervals = {fib_interval()};
  level[1].values = {2};
  CHECK(lift_window(t, fib_window(), 2).same_set(Window::box(t.scheme.space(), level)));
  CHECK(reverify(t));
}

TEST_CASE("translation by a lattice vector gives a trivial twist") {
  const auto s = CutProjectScheme::fibonacci();
  const Box b = Box::cube(1, Scalar(0), Scalar(30));
  const Translation t = translate_cps(s, {Scalar(5)}, options(b));
  REQUIRE(t.commensurate());
  CHECK(t.m == 1);
  CHECK(t.b_coords == IntVec{5, 0});
  CHECK(s.space().equal(*t.twist, real_point(Scalar(5))));
  CHECK(t.certificate.passed());
  // 5 + Lambda_W = Lambda_{5 + W}.
  const auto oracle = oracles::fibonacci_points(
      b, [](const Scalar& c) { return fib_interval().contains(c - Scalar(5)); }, 60);
  CHECK(same_points(t.scheme.project_points(b, lift_window(t, fib_window(), 1)).points, oracle));
}

TEST_CASE("commensurate translation by tau / 3") {
  const auto s = CutProjectScheme::fibonacci();
  const Box b = Box::cube(1, Scalar(-20), Scalar(20));
  auto opts = options(b);
  opts.multiples = {-4, -1, 1, 2, 4};
  const Translation t = translate_cps(s, {kTau / Scalar(3)}, opts);
  REQUIRE(t.commensurate());
  CHECK(t.m == 3);
  CHECK(t.b_coords == IntVec{0, 1});
  CHECK(t.certificate.kind == TransformCertificate::Kind::QuotientTranslation);
  CHECK(t.certificate.passed());
  CHECK(t.scheme.rank() == 2);
  for (long long n : opts.multiples) {
    const auto oracle = oracles::fibonacci_points(b, [](const Scalar& c) { return fib_interval().contains(c); }, 40,
                                                  Scalar(n) * kTau / Scalar(3));
    CHECK(same_points(t.scheme.project_points(b, lift_window(t, fib_window(), n)).points, oracle));
  }
  // n = 4 = 1 + 1 * 3: base [0,1) + tau' at residue 1.
  const Window unit = Window::interval(Interval::half_open(Scalar(0), Scalar(1)));
  const Scalar tc = oracles::tau_conj();
  const Window expected =
      Window::at_residue(t.scheme.space(), 1, Window::interval(Interval::half_open(tc, Scalar(1) + tc)));
  CHECK(lift_window(t, unit, 4).same_set(expected));
  // n = 0 reproduces the original patch.
  CHECK(same_points(t.scheme.project_points(b, lift_window(t, fib_window(), 0)).points,
                    s.project_points(b, fib_window()).points));
  CHECK(reverify(t));
}

TEST_CASE("lattice restriction and inherited window properties") {
  const auto s = CutProjectScheme::fibonacci();
  for (const Scalar& a : {Scalar::sqrt(2), kTau / Scalar(3), Scalar::rational(2, 5)}) {
    const Translation t = translate_cps(s, {a}, options(Box::cube(1, Scalar(-5), Scalar(5))));
    CHECK_FALSE(verify_lattice_restriction(t, 300, 7).has_value());
    std::mt19937_64 rng(3);
    for (int i = 0; i < 20; ++i) {
      const Window w = random_window(rng);
      for (long long n : {-2LL, 1LL, 5LL}) CHECK(lift_window(t, w, n).properties() == w.properties());
    }
  }
}

TEST_CASE("translation errors") {
  const auto s = CutProjectScheme::fibonacci();
  CHECK_THROWS_AS(translate_cps(s, {Scalar(0)}), InvalidInput);
  CHECK_THROWS_AS(translate_cps(s, {Scalar::approx(1.4142135623730951)}), CommensurabilityUnknown);
}

TEST_CASE("generic lattice certification") {
  const auto s = CutProjectScheme::fibonacci();
  const auto avoid = generic_avoidance_set(s);
  CHECK(avoid.size() == 4);
  const auto good = certify_generic(avoid, {Expression::parse("2^(1/3)")}, 1'000'000);
  CHECK(good.passed);
  CHECK(good.heuristic);
  const auto root2 = certify_generic(avoid, {Expression::parse("sqrt(2)")}, 1'000'000);
  CHECK_FALSE(root2.passed);
  REQUIRE(root2.rejected.size() == 1);
  CHECK_FALSE(certify_generic(avoid, {Expression::parse("3/7")}, 1000).passed);

  const GenericLattice g = choose_generic_lattice(avoid, 1, GenericStrategy::NamedConstants, 1'000'000);
  CHECK(g.diagonal[0].text() == "2^(1/3)");
  const GenericLattice r = choose_generic_lattice(avoid, 1, GenericStrategy::RandomReals, 100'000);
  CHECK(r.certificate.passed);
  CHECK_THROWS_AS(choose_generic_lattice({{Scalar(1)}}, 1, GenericStrategy::NamedConstants, 10, 0), CertificationFailure);
}

TEST_CASE("injective extension of the Fibonacci scheme") {
  const auto s = CutProjectScheme::fibonacci();
  ExtensionOptions opts;
  opts.injectivity_bound = 60;
  opts.box = Box::cube(1, Scalar(0), Scalar(20));
  opts.windows = {fib_window()};
  const InjectiveExtension e = extend_injective(s, {Expression::parse("2^(1/3)")}, opts);
  CHECK(e.certificate.passed());
  CHECK(e.scheme.space().has_torus());
  CHECK_FALSE(star_collision(e.scheme, 60).has_value());
  CHECK_FALSE(star_kernel_vector(e.scheme, 60).has_value());
  const InternalSpace torus(std::vector<Factor>{e.scheme.space().factors().back()});
  const Box b = *opts.box;
  const auto oracle = oracles::fibonacci_points(b, [](const Scalar& c) { return fib_interval().contains(c); }, 40);
  CHECK(same_points(e.scheme.project_points(b, Window::product(fib_window(), Window::full(torus))).points, oracle));
  std::mt19937_64 rng(11);
  for (int i = 0; i < 10; ++i) {
    const Window w = random_window(rng);
    CHECK(same_points(e.scheme.project_points(b, Window::product(w, Window::full(torus))).points,
                      s.project_points(b, w).points));
  }
  CHECK(reverify(e));
  CHECK_THROWS_AS(extend_injective(s, {Expression::parse("1")}, opts), CertificationFailure);
}

TEST_CASE("star kernels of degenerate schemes are found") {
  const auto z2 = CutProjectScheme::square_lattice(1);
  // Z^2 in R x R: star(n) = n_2 vanishes on (1, 0).
  const auto k = star_kernel_vector(z2, 3);
  REQUIRE(k.has_value());
  CHECK((*k)[1] == 0);
  CHECK(star_collision(z2, 2).has_value());
  CHECK(star_injectivity_counterexample(z2, Box::cube(1, Scalar(0), Scalar(3))).has_value());
  CHECK_FALSE(star_injectivity_counterexample(CutProjectScheme::fibonacci(), Box::cube(1, Scalar(0), Scalar(3))));
}

TEST_CASE("almost model sets become model sets") {
  const auto s = CutProjectScheme::fibonacci();
  const Box t = Box::cube(1, Scalar(-50), Scalar(50));
  const Scalar top = kTau - Scalar(1);
  const Window u = Window::interval(Interval::open(Scalar(-1), top));
  const Window w = Window::interval(Interval::closed(Scalar(-1), top));
  auto star_of = [](const LatticePoint& lp) { return std::get<RealCoord>(lp.star.factors[0].v).x[0]; };

  const AlmostModelSetWitness lower{u, w, [&](const LatticePoint& lp) { return u.contains(lp.star); }};
  const AlmostModelSetWitness upper{u, w, [&](const LatticePoint& lp) { return w.contains(lp.star); }};
  const AlmostModelSetWitness mixed{u, w, [&](const LatticePoint& lp) {
                                      return u.contains(lp.star) || star_of(lp) == top;
                                    }};
  const std::vector<std::pair<const AlmostModelSetWitness*, std::function<bool(const Scalar&)>>> cases{
      {&lower, [&](const Scalar& c) { return compare(c, Scalar(-1)) > 0 && compare(c, top) < 0; }},
      {&upper, [&](const Scalar& c) { return compare(c, Scalar(-1)) >= 0 && compare(c, top) <= 0; }},
      {&mixed, [&](const Scalar& c) { return compare(c, Scalar(-1)) > 0 && compare(c, top) <= 0; }}};
  for (const auto& [witness, keep] : cases) {
    const AlmostModel m = almost_to_model(s, *witness, t);
    CHECK(m.certificate.passed());
    CHECK(same_points(s.project_points(t, m.window).points, oracles::fibonacci_points(t, keep, 80)));
    CHECK(inclusion_chain_holds(u, w, m.window));
    CHECK(reverify(s, m));
  }
  // The mixed witness adds exactly the boundary stars at tau - 1.
  const AlmostModel m = almost_to_model(s, mixed, t);
  CHECK(m.window.augmentation().stars.size() == 1);
  const AlmostModel up = almost_to_model(s, upper, t);
  CHECK(up.window.augmentation().stars.size() == 2);
  // Outside the truncation the augmented window refuses to answer where the
  // answer depends on a boundary star (x = -1 has star -1).
  const AlmostModel right = almost_to_model(s, lower, Box::cube(1, Scalar(0), Scalar(50)));
  CHECK_THROWS_AS(s.project_points(Box::cube(1, Scalar(-5), Scalar(5)), right.window), OutOfCertifiedRange);
  CHECK_NOTHROW(s.project_points(Box::cube(1, Scalar(0), Scalar(5)), right.window));

  const AlmostModelSetWitness bad{u, w, [&](const LatticePoint& lp) { return star_of(lp) == top; }};
  CHECK_THROWS_AS(almost_to_model(s, bad, t), CertificationFailure);
  CHECK(verify_witness(s, bad, t).has_value());
}
