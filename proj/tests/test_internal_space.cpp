#include <doctest.h>

#include <random>

#include "cutproject/error.hpp"
#include "cutproject/internal_space.hpp"

using namespace cutproject;

namespace {

const Scalar kTau = Scalar::parse("tau");
const Scalar kTauConj = Scalar(1) - kTau;

HPoint real_point(const Scalar& x) { return HPoint{{FactorCoord{RealCoord{{x}}}}}; }

HPoint twisted(const HPoint& base, long long r) { return HPoint{{FactorCoord{TwistedCoord{base, r}}}}; }

Scalar random_quadratic(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> c(-20, 20), d(1, 6);
  return Scalar::rational(c(rng), d(rng)) + Scalar::rational(c(rng), d(rng)) * Scalar::sqrt(5);
}

// Twist of R x Z/4 so that both continuous and residue bases are exercised.
InternalSpace mixed_twist(long long m) {
  const InternalSpace base = InternalSpace::real(1).product(InternalSpace::cyclic(4));
  HPoint b = base.zero();
  std::get<RealCoord>(b.factors[0].v).x = {kTauConj};
  std::get<CyclicCoord>(b.factors[1].v).r = 3;
  return InternalSpace::twisted(base, m, b);
}

HPoint random_mixed(const InternalSpace& space, long long m, std::mt19937_64& rng) {
  const auto& tw = std::get<TwistedFactor>(space.factors()[0].v);
  HPoint h = tw.base->zero();
  std::get<RealCoord>(h.factors[0].v).x = {random_quadratic(rng)};
  std::get<CyclicCoord>(h.factors[1].v).r = std::uniform_int_distribution<long long>(0, 3)(rng);
  return twisted(h, std::uniform_int_distribution<long long>(0, m - 1)(rng));
}

}  // namespace

TEST_CASE("twisted addition carries past the modulus") {
  const InternalSpace h = InternalSpace::twisted(InternalSpace::real(1), 3, real_point(kTauConj));
  const HPoint x = twisted(real_point(Scalar::rational(1, 2)), 2);
  const HPoint y = twisted(real_point(kTau), 2);
  const HPoint expect = twisted(real_point(Scalar::rational(1, 2) + kTau + kTauConj), 1);
  CHECK(h.equal(h.add(x, y), expect));
  CHECK(h.equal(h.add(x, h.zero()), x));
  // Inverse from the case analysis: (h,2) -> (-h - b, 1).
  CHECK(h.equal(h.negate(x), twisted(real_point(Scalar::rational(-1, 2) - kTauConj), 1)));
  CHECK(h.is_zero(h.add(x, h.negate(x))));
}

TEST_CASE("a twist of modulus one carries on every addition") {
  const InternalSpace h = InternalSpace::twisted(InternalSpace::real(1), 1, real_point(kTauConj));
  const HPoint x = twisted(real_point(Scalar(2)), 0);
  const HPoint y = twisted(real_point(Scalar(3)), 0);
  // With canonical zero (0,0) the identity law forces x + 0 = x, so the carry
  // rule cannot apply literally for m = 1; the group is the base itself.
  CHECK(h.equal(h.add(x, h.zero()), x));
  CHECK(h.equal(h.add(x, y), twisted(real_point(Scalar(5)), 0)));
}

TEST_CASE("cyclic and real factors") {
  const InternalSpace z5 = InternalSpace::cyclic(5);
  HPoint two = z5.zero();
  std::get<CyclicCoord>(two.factors[0].v).r = 2;
  CHECK(std::get<CyclicCoord>(z5.negate(two).factors[0].v).r == 3);
  const InternalSpace r = InternalSpace::real(1);
  CHECK(r.equal(r.negate(real_point(Scalar::rational(3, 2))), real_point(Scalar::rational(-3, 2))));
  CHECK_THROWS_AS(r.add(real_point(Scalar(1)), two), InvalidInput);
}

TEST_CASE("group axioms of twisted extensions on random points") {
  std::mt19937_64 rng(11);
  for (long long m : {1LL, 2LL, 3LL, 5LL}) {
    const InternalSpace h = mixed_twist(m);
    for (int i = 0; i < 2500; ++i) {
      const HPoint a = random_mixed(h, m, rng);
      const HPoint b = random_mixed(h, m, rng);
      const HPoint c = random_mixed(h, m, rng);
      REQUIRE(h.equal(h.add(h.add(a, b), c), h.add(a, h.add(b, c))));
      REQUIRE(h.equal(h.add(a, b), h.add(b, a)));
      REQUIRE(h.equal(h.add(a, h.zero()), a));
      REQUIRE(h.is_zero(h.add(a, h.negate(a))));
      REQUIRE(h.equal(h.reduce(a), a));
    }
  }
}

TEST_CASE("scaling agrees with repeated addition") {
  std::mt19937_64 rng(3);
  const InternalSpace h = mixed_twist(3);
  for (int i = 0; i < 200; ++i) {
    const HPoint a = random_mixed(h, 3, rng);
    HPoint sum = h.zero();
    for (int k = 0; k <= 7; ++k) {
      CHECK(h.equal(h.scale(a, k), sum));
      CHECK(h.equal(h.scale(a, -k), h.negate(sum)));
      sum = h.add(sum, a);
    }
  }
}

TEST_CASE("base embeds homomorphically at residue zero") {
  const InternalSpace h = InternalSpace::twisted(InternalSpace::real(1), 3, real_point(kTauConj));
  std::mt19937_64 rng(5);
  for (int i = 0; i < 100; ++i) {
    const Scalar x = random_quadratic(rng), y = random_quadratic(rng);
    CHECK(h.equal(h.add(twisted(real_point(x), 0), twisted(real_point(y), 0)), twisted(real_point(x + y), 0)));
  }
  // m copies of the generator (0,1) produce the twist.
  CHECK(h.equal(h.scale(twisted(real_point(Scalar(0)), 1), 3), twisted(real_point(kTauConj), 0)));
}

TEST_CASE("linearization is a homomorphism") {
  std::mt19937_64 rng(9);
  const InternalSpace h = mixed_twist(5);
  for (int i = 0; i < 200; ++i) {
    const HPoint a = random_mixed(h, 5, rng), b = random_mixed(h, 5, rng);
    CHECK(equal(h.linearize(h.add(a, b)), h.linearize(a) + h.linearize(b)));
  }
  CHECK(h.kernel_mass() == Scalar(20));
}

TEST_CASE("torus points are reduced into the fundamental parallelepiped") {
  const Scalar c = Scalar::sqrt(2);
  const InternalSpace t = InternalSpace::torus({{c}});
  const auto& f = std::get<TorusFactor>(t.factors()[0].v);
  const TorusCoord p = InternalSpace::torus_point(f, {Scalar(3)});
  // 3 = 2 c + (3 - 2 c), so u = 3/c - 2.
  CHECK(p.u[0] == Scalar(3) / c - Scalar(2));
  CHECK(t.kernel_mass() == c);
  HPoint x{{FactorCoord{p}}};
  CHECK(t.is_zero(t.add(x, t.negate(x))));
  CHECK(t.measure_scale() == c);
  CHECK_THROWS_AS(InternalSpace::torus({{Scalar(0)}}), InvalidInput);
}

TEST_CASE("twists of twists are rejected") {
  const InternalSpace h = InternalSpace::twisted(InternalSpace::real(1), 2, real_point(Scalar(1)));
  CHECK_THROWS_AS(InternalSpace::twisted(h, 2, h.zero()), InvalidInput);
}

TEST_CASE("flatten and unflatten round trip") {
  std::mt19937_64 rng(1);
  const InternalSpace h = mixed_twist(3);
  for (int i = 0; i < 50; ++i) {
    const HPoint a = random_mixed(h, 3, rng);
    CHECK(h.equal(h.unflatten(h.flatten(a)), a));
  }
  CHECK(h.axes().size() == 3);
  CHECK(h.axes()[0].kind == Axis::Kind::Residue);
}
