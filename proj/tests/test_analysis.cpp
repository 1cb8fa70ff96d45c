#include <doctest.h>

#include <cmath>

#include "cutproject/analysis.hpp"
#include "cutproject/error.hpp"
#include "cutproject/transforms.hpp"
#include "oracles.hpp"

using namespace cutproject;

namespace {

const Scalar kTau = oracles::tau();

Window fib_window() { return Window::interval(Interval::half_open(Scalar(-1), kTau - Scalar(1))); }

HPoint real_point(const Scalar& x) { return HPoint{{FactorCoord{RealCoord{{x}}}}}; }

// Z in R with trivial internal data: Z^2 in R x R, star(n) = n_2, window {0}.
Window integer_comb_window() { return Window::points(InternalSpace::real(1), {real_point(Scalar(0))}); }

}  // namespace

TEST_CASE("annihilator of the Fibonacci lattice") {
  const auto s = CutProjectScheme::fibonacci();
  const auto chi = annihilator_projection(s);
  REQUIRE(chi.size() == 2);
  // Both generators lie in (1/sqrt5) Z[tau] and form a basis of it.
  const Scalar r5 = Scalar::sqrt(5);
  std::vector<std::pair<mpq_class, mpq_class>> coords;
  for (const auto& c : chi) {
    const Scalar y = c[0] * r5;  // a + b tau
    const mpq_class b = y.exact().coefficient(5) * 2;
    const mpq_class a = y.exact().rational_part() - b / 2;
    CHECK(a.get_den() == 1);
    CHECK(b.get_den() == 1);
    coords.emplace_back(a, b);
  }
  const mpq_class det = coords[0].first * coords[1].second - coords[0].second * coords[1].first;
  CHECK(abs(det) == 1);
  CHECK(annihilator_projection(s, 1).size() == 1);

  // Identity embedding of Z^2: generated by 1 (and 0).
  const auto z = annihilator_projection(CutProjectScheme::square_lattice(1));
  REQUIRE(z.size() == 2);
  CHECK(z[0][0] == Scalar(1));
  CHECK(z[1][0] == Scalar(0));
}

TEST_CASE("annihilator congruences with a cyclic factor") {
  // Lattice generated by (1, 1, 1 mod 2) and (tau, tau', 0) in R x (R x Z_2).
  const InternalSpace h = InternalSpace::real(1).product(InternalSpace::cyclic(2));
  auto pt = [](const Scalar& x, long long r) { return HPoint{{FactorCoord{RealCoord{{x}}}, FactorCoord{CyclicCoord{r}}}}; };
  const CutProjectScheme s(1, h, {Generator{{Scalar(1)}, pt(Scalar(1), 1)}, Generator{{kTau}, pt(oracles::tau_conj(), 0)}});
  const auto chi = annihilator_projection(s);
  REQUIRE(chi.size() == 3);
  // The cyclic generator: chi g_j + eta h_j + c_j / 2 is integral for some
  // eta; solving for eta from the first generator checks the second.
  const Scalar& c = chi[2][0];
  const Scalar eta = Scalar::rational(-1, 2) - c;  // makes generator 1 vanish mod Z
  const Scalar second = c * kTau + eta * oracles::tau_conj();
  const Scalar frac = second - Scalar(second.floor());
  CHECK((frac == Scalar(0) || frac == Scalar(1)));
}

TEST_CASE("empirical density") {
  const auto s = CutProjectScheme::fibonacci();
  const DensityReport r = empirical_density(s, fib_window(), {50, 100, 500, 1000});
  CHECK(r.lower == kTau / Scalar::sqrt(5));
  CHECK(r.upper == r.lower);
  CHECK(std::fabs(r.empirical.back() - (kTau / Scalar::sqrt(5)).to_double()) < 1e-3);
  CHECK(r.all_within());
  for (std::size_t i = 1; i < r.counts.size(); ++i) CHECK(r.counts[i] >= r.counts[i - 1]);
  const DensityReport e = empirical_density(s, Window::empty(s.space()), {10});
  CHECK(e.empirical[0] == 0.0);
  // Isolated points have measure zero and leave the bounds equal.
  const Window fat = Window::interval(Interval::closed(Scalar(0), Scalar(1)))
                         .unite(Window::points(s.space(), {real_point(Scalar(3))}));
  const DensityReport f = empirical_density(s, fat, {100});
  CHECK(f.lower == f.upper);
}

TEST_CASE("Fourier-Bohr coefficients") {
  const auto s = CutProjectScheme::fibonacci();
  const DensityReport r = empirical_density(s, fib_window(), {300});
  CHECK(fourier_bohr(s, fib_window(), {Scalar(0)}, 300).real() == r.empirical[0]);
  const auto z = CutProjectScheme::square_lattice(1);
  const auto a = fourier_bohr(z, integer_comb_window(), {Scalar(1)}, 200);
  CHECK(std::fabs(a.real() - 401.0 / 400.0) < 1e-9);
  CHECK(std::fabs(a.imag()) < 1e-9);
  // A character outside the Fourier module of the Fibonacci set averages out.
  const auto small = fourier_bohr(s, fib_window(), {Scalar::parse("2^(-1/3)")}, 2000);
  CHECK(std::abs(small) < 0.05);
}

TEST_CASE("equidistribution on the torus") {
  const auto s = CutProjectScheme::fibonacci();
  ExtensionOptions opts;
  opts.injectivity_bound = 20;
  const InjectiveExtension e = extend_injective(s, {Expression::parse("2^(1/3)")}, opts);
  const Window u = Window::interval(Interval::open(Scalar(-1), kTau - Scalar(1)));
  const auto rep = equidistribution_check(e.scheme, u, 3.0, 2000);
  CHECK(rep.status == EquidistributionReport::Status::Pass);
  CHECK(rep.cells == 8);
  CHECK(rep.cells_hit == 8);
  CHECK(rep.characters == 6);
  CHECK(rep.max_coefficient < 0.05);
  CHECK(rep.discrepancy < 0.05);
  CHECK(equidistribution_check(e.scheme, Window::empty(s.space()), 3.0, 2000).status ==
        EquidistributionReport::Status::Fail);
  CHECK(equidistribution_check(e.scheme, u, 3.0, 5).status == EquidistributionReport::Status::Inconclusive);
  CHECK_THROWS_AS(equidistribution_check(s, u, 3.0, 10), InvalidInput);
}

TEST_CASE("patch inclusion and equality") {
  const auto s = CutProjectScheme::fibonacci();
  const Box b = Box::cube(1, Scalar(0), Scalar(50));
  const Patch in = s.project_points(b, fib_window().interior());
  const Patch cl = s.project_points(b, fib_window().closure());
  CHECK(verify_equality(cl, cl).holds);
  CHECK(verify_inclusion(in, cl).holds);
  Patch moved = cl;
  moved.points[3][0] += Scalar::rational(1, 1000);
  const auto cmp = verify_equality(cl, moved);
  CHECK_FALSE(cmp.holds);
  REQUIRE(cmp.witness);
  CHECK(equal(*cmp.witness, cl.points[3]));
  Patch other = cl;
  other.box = Box::cube(1, Scalar(0), Scalar(40));
  CHECK_THROWS_AS(verify_inclusion(cl, other), InvalidInput);

  Patch fa = cl, fb = cl;
  for (auto& x : fa.points) x[0] = x[0].to_float();
  for (auto& x : fb.points) x[0] = Scalar::approx(x[0].to_double() + 1e-12);
  CHECK(verify_equality(fa, fb).holds);
  fb.points.pop_back();
  CHECK_FALSE(verify_equality(fa, fb).holds);
}

TEST_CASE("repetitivity") {
  const auto z = CutProjectScheme::square_lattice(1);
  auto comb = [&](const Box& b) { return z.project_points(b, integer_comb_window()); };
  CHECK(repetitivity_check(comb, Box::cube(1, Scalar(0), Scalar(2)), Scalar(2), Box::cube(1, Scalar(-10), Scalar(10))).passed);

  const auto s = CutProjectScheme::fibonacci();
  auto fib = [&](const Box& b) { return s.project_points(b, fib_window()); };
  const Box k = Box::cube(1, Scalar(0), Scalar(5));
  const Box probe = Box::cube(1, Scalar(-100), Scalar(100));
  const auto rep = repetitivity_check(fib, k, Scalar(20), probe);
  CHECK(rep.passed);
  CHECK(rep.returns > 1);

  // Deleting a point inside K leaves t = 0 as the only return.
  const Patch inside = fib(k);
  REQUIRE(inside.size() > 2);
  const Scalar victim = inside.points[1][0];
  auto broken = [&](const Box& b) {
    Patch p = fib(b);
    const auto it = std::find_if(p.points.begin(), p.points.end(), [&](const ScalarVec& x) { return x[0] == victim; });
    if (it != p.points.end()) p.points.erase(it);
    return p;
  };
  const auto bad = repetitivity_check(broken, k, Scalar(20), probe);
  CHECK_FALSE(bad.passed);
  CHECK(bad.returns == 1);
  REQUIRE(bad.witness_center);
  CHECK(probe.contains(*bad.witness_center));

  // A set with a unique local pattern near 0.
  auto lonely = [&](const Box& b) {
    Patch p = comb(b);
    p.points.push_back({Scalar::rational(1, 2)});
    sort_points(p.points);
    return p;
  };
  CHECK_FALSE(repetitivity_check(lonely, Box::cube(1, Scalar(0), Scalar(1)), Scalar(3), Box::cube(1, Scalar(-20), Scalar(20))).passed);
}
