#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <gmpxx.h>

namespace cutproject {

/// Default equality tolerance carried by float scalars.
inline constexpr double kDefaultTolerance = 1e-9;

/// One term `coef * sqrt(radicand)` of a Surd; radicand is squarefree.
struct SurdTerm {
  std::uint64_t radicand;
  mpq_class coef;
};

/// Exact element of a multiquadratic number field: a finite rational
/// combination of square roots of squarefree positive integers.
///
/// Square roots of distinct squarefree integers are linearly independent
/// over Q, so the sorted term list is a canonical form and equality is
/// decided termwise. Sign determination splits off the largest prime p,
/// writes x = y + z*sqrt(p) and recurses on y, z and y^2 - p z^2.
class Surd {
 public:
  Surd() = default;
  Surd(long long n);  // NOLINT(google-explicit-constructor)
  Surd(const mpq_class& q);  // NOLINT(google-explicit-constructor)

  /// sqrt(q) for a non-negative rational q, square factors extracted.
  static Surd sqrt(const mpq_class& q);

  const std::vector<SurdTerm>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_rational() const noexcept;
  /// Rational part (coefficient of sqrt(1)).
  mpq_class rational_part() const;
  /// Coefficient of sqrt(radicand); zero if absent.
  mpq_class coefficient(std::uint64_t radicand) const;

  double approx() const noexcept { return approx_; }
  int sign() const;
  Surd inverse() const;

  Surd operator-() const;
  Surd& operator+=(const Surd& o);
  Surd& operator-=(const Surd& o);
  Surd& operator*=(const Surd& o);
  Surd& operator/=(const Surd& o);
  friend Surd operator+(Surd a, const Surd& b) { return a += b; }
  friend Surd operator-(Surd a, const Surd& b) { return a -= b; }
  friend Surd operator*(const Surd& a, const Surd& b);
  friend Surd operator/(Surd a, const Surd& b) { return a /= b; }
  friend bool operator==(const Surd& a, const Surd& b);

  /// Exact floor, returned as a GMP integer.
  mpz_class floor() const;

  std::string to_string() const;

 private:
  explicit Surd(std::vector<SurdTerm> terms);
  void finish();

  std::vector<SurdTerm> terms_;
  double approx_ = 0.0;
  double magnitude_ = 0.0;  // sum |coef * sqrt(radicand)|, bounds rounding error
};

/// Floating value with an equality tolerance; the float-mode scalar.
struct Approx {
  double value = 0.0;
  double tol = kDefaultTolerance;
};

/// Scalar used for every coordinate in the library: exact (Surd) or float.
///
/// Arithmetic between two exact scalars stays exact; any float operand makes
/// the result float with the larger tolerance. Comparisons of float scalars
/// treat values within tolerance as equal.
class Scalar {
 public:
  Scalar() : rep_(Surd{}) {}
  Scalar(int n) : rep_(Surd(static_cast<long long>(n))) {}  // NOLINT
  Scalar(long n) : rep_(Surd(static_cast<long long>(n))) {}  // NOLINT
  Scalar(long long n) : rep_(Surd(n)) {}  // NOLINT
  Scalar(const mpq_class& q) : rep_(Surd(q)) {}  // NOLINT
  Scalar(Surd s) : rep_(std::move(s)) {}  // NOLINT

  static Scalar rational(long long num, long long den);
  static Scalar sqrt(long long n) { return Scalar(Surd::sqrt(mpq_class(static_cast<long>(n)))); }
  static Scalar approx(double v, double tol = kDefaultTolerance);
  /// Parses an expression such as "1/2", "(1+sqrt(5))/2", "tau/3", "0.1",
  /// "2^(1/3)" or "1/pi"; see expression.hpp for the grammar.
  static Scalar parse(std::string_view text);

  bool is_exact() const noexcept { return std::holds_alternative<Surd>(rep_); }
  const Surd& exact() const;
  double to_double() const noexcept;
  /// Zero for exact scalars.
  double tolerance() const noexcept;

  int sign() const;
  bool is_zero() const { return sign() == 0; }
  Scalar abs() const { return sign() < 0 ? -*this : *this; }
  Scalar inverse() const;
  /// Largest integer <= value. Float values within tolerance of an integer
  /// snap to it.
  long long floor() const;
  /// Converts to float mode (no-op for float scalars).
  Scalar to_float(double tol = kDefaultTolerance) const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  friend int compare(const Scalar& a, const Scalar& b);
  friend bool operator==(const Scalar& a, const Scalar& b) { return compare(a, b) == 0; }
  friend std::weak_ordering operator<=>(const Scalar& a, const Scalar& b) {
    const int c = compare(a, b);
    return c < 0 ? std::weak_ordering::less
                 : (c > 0 ? std::weak_ordering::greater : std::weak_ordering::equivalent);
  }

  std::string to_string() const;
  friend std::ostream& operator<<(std::ostream& os, const Scalar& s);

 private:
  std::variant<Surd, Approx> rep_;
};

Scalar min(const Scalar& a, const Scalar& b);
Scalar max(const Scalar& a, const Scalar& b);

using ScalarVec = std::vector<Scalar>;
using IntVec = std::vector<long long>;

/// Lexicographic comparison of equal-length vectors.
int compare(const Scalar& a, const Scalar& b);
int compare(const ScalarVec& a, const ScalarVec& b);
bool equal(const ScalarVec& a, const ScalarVec& b);
ScalarVec operator+(const ScalarVec& a, const ScalarVec& b);
ScalarVec operator-(const ScalarVec& a, const ScalarVec& b);
ScalarVec operator*(const Scalar& k, const ScalarVec& a);
std::vector<double> to_doubles(const ScalarVec& v);
std::string to_string(const ScalarVec& v);
std::string to_string(const IntVec& v);

/// Euclidean floor division and non-negative remainder.
long long floor_div(long long a, long long b);
long long floor_mod(long long a, long long b);

}  // namespace cutproject
