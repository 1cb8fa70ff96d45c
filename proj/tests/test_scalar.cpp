#include <doctest.h>

#include <random>

#include "cutproject/error.hpp"
#include "cutproject/expression.hpp"
#include "cutproject/linalg.hpp"
#include "cutproject/relation.hpp"
#include "cutproject/scalar.hpp"

using namespace cutproject;

namespace {

Scalar random_surd(std::mt19937_64& rng) {
  const long long rads[] = {1, 2, 3, 5, 6, 10, 15, 30};
  std::uniform_int_distribution<int> coef(-9, 9), den(1, 5), pick(0, 7), count(1, 4);
  Scalar x(0);
  const int n = count(rng);
  for (int i = 0; i < n; ++i) x += Scalar::rational(coef(rng), den(rng)) * Scalar::sqrt(rads[pick(rng)]);
  return x;
}

int mp_sign(const Scalar& x) {
  const BigFloat v = to_bigfloat(x.exact(), 400);
  if (boost::multiprecision::abs(v) < boost::multiprecision::ldexp(BigFloat(1), -300)) return 0;
  return v > 0 ? 1 : -1;
}

}  // namespace

TEST_CASE("golden mean identities") {
  const Scalar tau = Scalar::parse("tau");
  const Scalar tau_conj = Scalar(1) - tau;
  CHECK(tau * tau == tau + Scalar(1));
  CHECK(tau * tau_conj == Scalar(-1));
  CHECK(tau - tau_conj == Scalar::sqrt(5));
  CHECK(tau.inverse() == tau - Scalar(1));
  CHECK(tau.floor() == 1);
  CHECK((-tau).floor() == -2);
}

TEST_CASE("square roots are reduced to squarefree radicands") {
  CHECK(Scalar::sqrt(12) == Scalar(2) * Scalar::sqrt(3));
  CHECK(Scalar::sqrt(2) * Scalar::sqrt(6) == Scalar(2) * Scalar::sqrt(3));
  CHECK(Scalar::parse("sqrt(1/8)") == Scalar::sqrt(2) / Scalar(4));
  CHECK(Scalar::sqrt(49) == Scalar(7));
}

TEST_CASE("exact sign agrees with a 400-bit evaluation") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 400; ++i) {
    const Scalar x = random_surd(rng);
    CHECK(x.sign() == mp_sign(x));
  }
  // Near-cancellation the double fast path cannot resolve.
  const Scalar a = Scalar::sqrt(2) + Scalar::sqrt(3);
  const Scalar b = Scalar::sqrt(5 + 2 * 0) * Scalar(0) + Scalar::parse("sqrt(5+2*sqrt(6))");
  CHECK(b.is_exact() == false);
  const Scalar c = a * a - (Scalar(5) + Scalar(2) * Scalar::sqrt(6));
  CHECK(c.is_zero());
  const Scalar tiny = Scalar::parse("99/70") - Scalar::sqrt(2);
  CHECK(tiny.sign() == 1);
  const Scalar tinier = Scalar::parse("665857/470832") - Scalar::sqrt(2);
  CHECK(tinier.sign() == mp_sign(tinier));
}

TEST_CASE("field inverse") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    const Scalar x = random_surd(rng);
    if (x.is_zero()) continue;
    CHECK(x * x.inverse() == Scalar(1));
  }
  CHECK_THROWS_AS(Scalar(0).inverse(), InvalidInput);
}

TEST_CASE("exact floor matches high-precision floor") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    const Scalar x = random_surd(rng) * Scalar(17);
    const BigFloat v = to_bigfloat(x.exact(), 300);
    CHECK(x.floor() == boost::multiprecision::floor(v).convert_to<long long>());
  }
  CHECK(Scalar(3).floor() == 3);
  CHECK(Scalar(-3).floor() == -3);
}

TEST_CASE("float scalars compare within tolerance") {
  const Scalar a = Scalar::approx(1.0);
  const Scalar b = Scalar::approx(1.0 + 5e-10);
  CHECK(a == b);
  CHECK_FALSE(a == Scalar::approx(1.0 + 1e-6));
  CHECK(!(a + Scalar(1)).is_exact());
  CHECK(Scalar::approx(2.9999999999).floor() == 3);
  CHECK(Scalar::parse("1/pi").to_double() == doctest::Approx(0.3183098861837907));
}

TEST_CASE("expression parser") {
  CHECK(Scalar::parse("0.1") == Scalar::rational(1, 10));
  CHECK(Scalar::parse("2^-2") == Scalar::rational(1, 4));
  CHECK(Scalar::parse("2^(1/2)") == Scalar::sqrt(2));
  CHECK(Scalar::parse("-(1+sqrt(5))/2 + tau") == Scalar(0));
  CHECK(Scalar::parse("tau/3") * Scalar(3) == Scalar::parse("phi"));
  CHECK(Scalar::parse("cbrt(27/8)") == Scalar::rational(3, 2));
  CHECK_FALSE(Scalar::parse("2^(1/3)").is_exact());
  CHECK_THROWS_AS(Scalar::parse("1+"), InvalidInput);
  CHECK_THROWS_AS(Scalar::parse("foo"), InvalidInput);
  const Scalar x = Scalar::parse("3/7-2*sqrt(15)+1/2*sqrt(2)");
  CHECK(Scalar::parse(x.to_string()) == x);
  const BigFloat c = Expression::parse("2^(1/3)").evaluate_mp(200);
  CHECK(boost::multiprecision::abs(c * c * c - 2) < boost::multiprecision::ldexp(BigFloat(1), -180));
}

TEST_CASE("linear algebra over the scalar field") {
  const Scalar tau = Scalar::parse("tau");
  const Matrix m = {{Scalar(1), tau}, {Scalar(1), Scalar(1) - tau}};
  CHECK(determinant(m) == -Scalar::sqrt(5));
  const auto inv = inverse(m);
  REQUIRE(inv);
  CHECK(multiply(m, *inv) == identity_matrix(2));
  CHECK(rational_column_rank(m) == 2);
  const Matrix dependent = {{Scalar(1), Scalar(2)}, {Scalar::sqrt(2), Scalar(2) * Scalar::sqrt(2)}};
  CHECK(rational_column_rank(dependent) == 1);
  CHECK_FALSE(inverse(dependent));
}

TEST_CASE("unimodular completion") {
  const IntVec v = {4, 6, -3, 9};
  const IntMatrix u = unimodular_to_e1(v);
  const IntVec e = multiply(u, v);
  CHECK(e == IntVec{1, 0, 0, 0});
  const IntMatrix w = integer_inverse(u);
  CHECK(multiply(w, e) == v);
  CHECK_THROWS_AS(unimodular_to_e1(IntVec{2, 4}), InvalidInput);
}

TEST_CASE("integer relation search") {
  // 1 + tau - tau^2 = 0
  const auto found = find_integer_relation(
      {Expression::parse("1"), Expression::parse("tau"), Expression::parse("tau^2")}, 100);
  REQUIRE(found.status == RelationResult::Status::Found);
  const auto& c = found.relation;
  CHECK(((c[0] == 1 && c[1] == 1 && c[2] == -1) || (c[0] == -1 && c[1] == -1 && c[2] == 1)));

  const auto none = find_integer_relation(
      {Expression::parse("sqrt(2)"), Expression::parse("1"), Expression::parse("tau")}, 1000000);
  CHECK(none.status == RelationResult::Status::Excluded);

  const auto cube = find_integer_relation({Expression::parse("1"), Expression::parse("sqrt(5)"),
                                           Expression::parse("2^(1/3)"), Expression::parse("2^(-1/3)")},
                                          1000000);
  CHECK(cube.status == RelationResult::Status::Excluded);

  const auto root2 = find_integer_relation({Expression::parse("1"), Expression::parse("sqrt(5)"),
                                            Expression::parse("sqrt(2)"), Expression::parse("1/sqrt(2)")},
                                           1000000);
  REQUIRE(root2.status == RelationResult::Status::Found);
  CHECK(std::abs(root2.relation[2]) == 1);
  CHECK(std::abs(root2.relation[3]) == 2);
}
