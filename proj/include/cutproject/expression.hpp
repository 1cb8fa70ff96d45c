#pragma once

#include <memory>
#include <string>
#include <string_view>

#include <boost/multiprecision/mpfr.hpp>

#include "cutproject/scalar.hpp"

namespace cutproject {

using BigFloat = boost::multiprecision::mpfr_float;

/// Real-valued expression with exact and arbitrary-precision evaluation.
///
/// Grammar: numbers (decimal literals are exact rationals), the constants
/// tau and phi (golden mean), pi and e, the functions sqrt, cbrt, exp and
/// log, unary minus, + - * / and right-associative ^.
///
/// evaluate() stays exact whenever the value lies in a multiquadratic field
/// reachable from the literals (rationals, square roots of rationals,
/// integer powers); anything else falls back to a float scalar.
class Expression {
 public:
  static Expression parse(std::string_view text);
  /// Wraps an existing scalar (exact scalars evaluate exactly at any precision).
  static Expression constant(const Scalar& value);

  Scalar evaluate(double tol = kDefaultTolerance) const;
  /// Value with at least `bits` bits of working precision.
  BigFloat evaluate_mp(unsigned bits) const;
  /// True when evaluate() returns an exact scalar.
  bool is_exact() const { return evaluate().is_exact(); }
  const std::string& text() const noexcept { return text_; }

  struct Node;

 private:
  std::shared_ptr<const Node> root_;
  std::string text_;
};

/// Exact value of a Surd at the given working precision.
BigFloat to_bigfloat(const Surd& s, unsigned bits);

}  // namespace cutproject
