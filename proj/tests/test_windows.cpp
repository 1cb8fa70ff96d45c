#include <doctest.h>

#include <random>

#include "cutproject/error.hpp"
#include "cutproject/window.hpp"

using namespace cutproject;

namespace {

const Scalar kTau = Scalar::parse("tau");
const Scalar kTauConj = Scalar(1) - kTau;

HPoint real_point(const Scalar& x) { return HPoint{{FactorCoord{RealCoord{{x}}}}}; }

Window fib_window() { return Window::interval(Interval::half_open(Scalar(-1), kTau - Scalar(1))); }

}  // namespace

TEST_CASE("interior and closure of a half-open interval") {
  const Window w = fib_window();
  CHECK(w.interior().same_set(Window::interval(Interval::open(Scalar(-1), kTau - Scalar(1)))));
  CHECK(w.closure().same_set(Window::interval(Interval::closed(Scalar(-1), kTau - Scalar(1)))));
  CHECK(w.measure() == kTau);
  CHECK(w.boundary_measure() == Scalar(0));
  const WindowProperties p = w.properties();
  CHECK(p.precompact);
  CHECK(p.has_interior);
  CHECK(p.topologically_regular);
  CHECK(p.measure_regular);
  CHECK(p.measurable);
  CHECK_FALSE(w.is_open());
  CHECK(w.interior().is_open());
}

TEST_CASE("discrete factors are open and closed") {
  const InternalSpace z = InternalSpace::integers(1);
  const Window w = Window::box(z, {AxisSet{{}, {3}}});
  CHECK(w.interior().same_set(w));
  CHECK(w.closure().same_set(w));
  CHECK(w.measure() == Scalar(1));
  const InternalSpace rz = InternalSpace::real(1).product(z);
  const Window b = Window::box(rz, {AxisSet{{Interval::closed(Scalar(0), Scalar(2))}, {}}, AxisSet{{}, {5}}});
  CHECK(b.measure() == Scalar(2));
}

TEST_CASE("finite sets have no interior and null boundary") {
  const InternalSpace r = InternalSpace::real(1);
  const Window w = Window::points(r, {real_point(Scalar(0)), real_point(kTau)});
  const WindowProperties p = w.properties();
  CHECK_FALSE(p.has_interior);
  CHECK(p.measure_regular);
  CHECK(w.measure() == Scalar(0));
  CHECK(w.boundary().same_set(w));
  CHECK(w.finite_points().size() == 2);
  CHECK_THROWS_AS(fib_window().finite_points(), InvalidInput);
}

TEST_CASE("augmented windows") {
  const Window u = Window::interval(Interval::open(Scalar(0), Scalar(1)));
  const InternalSpace r = u.space();
  const Window a = Window::augmented(u, {real_point(Scalar(1))}, u.closure(), std::nullopt);
  CHECK(a.closure().same_set(Window::interval(Interval::closed(Scalar(0), Scalar(1)))));
  CHECK(a.properties().topologically_regular);
  const Window b = Window::augmented(u, {real_point(Scalar(2)), real_point(Scalar::rational(1, 2))},
                                     Window::interval(Interval::closed(Scalar(0), Scalar(2))), std::nullopt);
  CHECK_FALSE(b.properties().topologically_regular);
  // Stars already inside the open part are pruned.
  CHECK(b.augmentation().stars.size() == 1);
  // Interior chain for the augmentation.
  CHECK(u.interior().subset_of(b.interior()));
  CHECK(b.interior().subset_of(b));
  CHECK(b.subset_of(b.closure()));
}

TEST_CASE("augmented membership outside the truncation is uncertified") {
  const Window u = Window::interval(Interval::open(Scalar(0), Scalar(1)));
  const Window env = u.closure();
  const Window a = Window::augmented(u, {real_point(Scalar(0))}, env, Box::cube(1, Scalar(-5), Scalar(5)));
  CHECK(a.contains_at(real_point(Scalar(0)), {Scalar(3)}));
  CHECK(a.contains_at(real_point(Scalar::rational(1, 2)), {Scalar(100)}));
  CHECK_FALSE(a.contains_at(real_point(Scalar(7)), {Scalar(100)}));
  CHECK_THROWS_AS(a.contains_at(real_point(Scalar(1)), {Scalar(100)}), OutOfCertifiedRange);
  CHECK_FALSE(a.contains_at(real_point(Scalar(1)), {Scalar(4)}));
}

TEST_CASE("translation of windows") {
  const InternalSpace r = InternalSpace::real(1);
  const Window w = Window::interval(Interval::half_open(Scalar(0), Scalar(1)));
  const Window t = w.translate(real_point(Scalar::rational(1, 2)));
  CHECK(t.same_set(Window::interval(Interval::half_open(Scalar::rational(1, 2), Scalar::rational(3, 2)))));
  CHECK(t.translate(real_point(Scalar::rational(-1, 2))).same_set(w));
  const Window f = fib_window().translate(real_point(kTauConj));
  CHECK(f.same_set(
      Window::interval(Interval::half_open(kTauConj - Scalar(1), kTauConj + kTau - Scalar(1)))));
  CHECK(f.properties() == fib_window().properties());
  CHECK(f.boundary_measure() == Scalar(0));
}

TEST_CASE("torus windows wrap around") {
  const Scalar c = Scalar(3);
  const InternalSpace t = InternalSpace::torus({{c}});
  const Window half = Window::box(t, {AxisSet{{Interval::half_open(Scalar(0), Scalar::rational(1, 2))}, {}}});
  CHECK(half.measure() == Scalar::rational(3, 2));
  CHECK(Window::full(t).measure() == c);
  const HPoint shift{{FactorCoord{InternalSpace::torus_point(std::get<TorusFactor>(t.factors()[0].v),
                                                             {Scalar(2)})}}};
  const Window moved = half.translate(shift);
  CHECK(moved.measure() == Scalar::rational(3, 2));
  CHECK(moved.translate(t.negate(shift)).same_set(half));
  // The full torus is open and closed.
  CHECK(Window::full(t).is_open());
  CHECK(Window::full(t).closure().same_set(Window::full(t)));
  // An arc through the base point keeps its interior across 0.
  const Window arc = Window::box(t, {AxisSet{{Interval::open(Scalar::rational(-1, 4), Scalar::rational(1, 4))}, {}}});
  CHECK(arc.is_open());
  CHECK(arc.measure() == Scalar::rational(3, 2));
}

TEST_CASE("twisted windows translate with carry") {
  const InternalSpace h = InternalSpace::twisted(InternalSpace::real(1), 3, real_point(kTauConj));
  const Window base = Window::interval(Interval::half_open(Scalar(0), Scalar(1)));
  const Window w = Window::at_residue(h, 2, base);
  const HPoint t{{FactorCoord{TwistedCoord{real_point(Scalar(0)), 1}}}};
  const Window moved = w.translate(t);
  const Window expect = Window::at_residue(h, 0, base.translate(real_point(kTauConj)));
  CHECK(moved.same_set(expect));
  CHECK(w.measure() == Scalar(1));
  std::mt19937_64 rng(2);
  for (int i = 0; i < 200; ++i) {
    const HPoint x{{FactorCoord{TwistedCoord{real_point(Scalar::rational(
                                                 std::uniform_int_distribution<int>(-40, 40)(rng), 16)),
                                             std::uniform_int_distribution<int>(0, 2)(rng)}}}};
    CHECK(moved.contains(h.add(x, t)) == w.contains(x));
  }
}

TEST_CASE("measure bounds and set algebra") {
  const Window a = Window::interval(Interval::closed(Scalar(0), Scalar(2)));
  const Window b = Window::interval(Interval::open(Scalar(1), Scalar(3)));
  const Window d = a.minus(b);
  CHECK(d.same_set(Window::interval(Interval::closed(Scalar(0), Scalar(1)))));
  CHECK(a.unite(b).measure() == Scalar(3));
  CHECK(a.unite(b).same_set(Window::interval(Interval::half_open(Scalar(0), Scalar(3)))));
  const Window u = a.unite(b);
  CHECK(compare(u.interior().measure(), u.measure()) <= 0);
  CHECK(compare(u.measure(), u.closure().measure()) <= 0);
  const auto bounds = a.linear_bounds();
  REQUIRE(bounds);
  CHECK((*bounds)[0].first <= 0.0);
  CHECK((*bounds)[0].second >= 2.0);
  CHECK_FALSE(Window::empty(a.space()).linear_bounds());
}

TEST_CASE("interval parsing") {
  const Interval iv = Interval::parse("[-1, tau-1)");
  CHECK(iv.lo == Scalar(-1));
  CHECK(iv.hi == kTau - Scalar(1));
  CHECK(iv.lo_closed);
  CHECK_FALSE(iv.hi_closed);
  CHECK(Interval::parse("{sqrt(2)}").contains(Scalar::sqrt(2)));
  CHECK_THROWS_AS(Interval::parse("[2,1]"), InvalidInput);
}
