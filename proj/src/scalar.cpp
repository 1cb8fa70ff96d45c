#include "cutproject/scalar.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>

#include "cutproject/error.hpp"
#include "cutproject/expression.hpp"

namespace cutproject {

namespace {

std::uint64_t largest_prime_factor(std::uint64_t n) {
  std::uint64_t best = 1;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    while (n % p == 0) {
      best = p;
      n /= p;
    }
  }
  return n > 1 ? n : best;
}

// Splits n into s * k^2 with s squarefree. Trial division up to 10^6, then
// the cofactor is assumed squarefree unless it is a perfect square.
void squarefree_split(mpz_class n, mpz_class& square_root_part, mpz_class& squarefree) {
  square_root_part = 1;
  squarefree = 1;
  for (unsigned long p = 2; p <= 1000000 && p * p <= n; ++p) {
    if (mpz_divisible_ui_p(n.get_mpz_t(), p) == 0) continue;
    int e = 0;
    while (mpz_divisible_ui_p(n.get_mpz_t(), p) != 0) {
      mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
      ++e;
    }
    for (int i = 0; i < e / 2; ++i) square_root_part *= p;
    if (e % 2 == 1) squarefree *= p;
  }
  if (n > 1) {
    if (mpz_perfect_square_p(n.get_mpz_t()) != 0) {
      mpz_class r;
      mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
      square_root_part *= r;
    } else {
      squarefree *= n;
    }
  }
}

int sign_of(const mpq_class& q) { return sgn(q); }

}  // namespace

Surd::Surd(long long n) {
  if (n != 0) terms_.push_back({1, mpq_class(static_cast<long>(n))});
  finish();
}

Surd::Surd(const mpq_class& q) {
  if (q != 0) terms_.push_back({1, q});
  finish();
}

Surd::Surd(std::vector<SurdTerm> terms) : terms_(std::move(terms)) { finish(); }

void Surd::finish() {
  approx_ = 0.0;
  magnitude_ = 0.0;
  for (const auto& t : terms_) {
    const double v = t.coef.get_d() * std::sqrt(static_cast<double>(t.radicand));
    approx_ += v;
    magnitude_ += std::fabs(v);
  }
}

Surd Surd::sqrt(const mpq_class& q) {
  if (q < 0) throw InvalidInput("square root of a negative number");
  if (q == 0) return Surd();
  mpz_class num = q.get_num() * q.get_den();
  mpz_class k, s;
  squarefree_split(num, k, s);
  if (!s.fits_ulong_p()) throw InvalidInput("radicand too large for exact arithmetic");
  mpq_class coef(k, q.get_den());
  coef.canonicalize();
  return Surd(std::vector<SurdTerm>{{s.get_ui(), coef}});
}

bool Surd::is_rational() const noexcept {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].radicand == 1);
}

mpq_class Surd::rational_part() const { return coefficient(1); }

mpq_class Surd::coefficient(std::uint64_t radicand) const {
  for (const auto& t : terms_)
    if (t.radicand == radicand) return t.coef;
  return 0;
}

Surd Surd::operator-() const {
  Surd r = *this;
  for (auto& t : r.terms_) t.coef = -t.coef;
  r.approx_ = -approx_;
  return r;
}

Surd& Surd::operator+=(const Surd& o) {
  std::vector<SurdTerm> out;
  out.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() || j < o.terms_.size()) {
    if (j == o.terms_.size() || (i < terms_.size() && terms_[i].radicand < o.terms_[j].radicand)) {
      out.push_back(terms_[i++]);
    } else if (i == terms_.size() || o.terms_[j].radicand < terms_[i].radicand) {
      out.push_back(o.terms_[j++]);
    } else {
      mpq_class c = terms_[i].coef + o.terms_[j].coef;
      if (c != 0) out.push_back({terms_[i].radicand, c});
      ++i;
      ++j;
    }
  }
  terms_ = std::move(out);
  finish();
  return *this;
}

Surd& Surd::operator-=(const Surd& o) { return *this += -o; }

Surd operator*(const Surd& a, const Surd& b) {
  if (a.is_zero() || b.is_zero()) return Surd();
  std::map<std::uint64_t, mpq_class> acc;
  for (const auto& s : a.terms_) {
    for (const auto& t : b.terms_) {
      const std::uint64_t g = std::gcd(s.radicand, t.radicand);
      const std::uint64_t rad = (s.radicand / g) * (t.radicand / g);
      acc[rad] += s.coef * t.coef * mpq_class(static_cast<unsigned long>(g));
    }
  }
  std::vector<SurdTerm> terms;
  for (auto& [rad, c] : acc)
    if (c != 0) terms.push_back({rad, c});
  return Surd(std::move(terms));
}

Surd& Surd::operator*=(const Surd& o) { return *this = *this * o; }

Surd& Surd::operator/=(const Surd& o) { return *this = *this * o.inverse(); }

bool operator==(const Surd& a, const Surd& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (a.terms_[i].radicand != b.terms_[i].radicand || a.terms_[i].coef != b.terms_[i].coef)
      return false;
  return true;
}

namespace {

std::uint64_t split_prime(const std::vector<SurdTerm>& terms) {
  std::uint64_t p = 1;
  for (const auto& t : terms) p = std::max(p, largest_prime_factor(t.radicand));
  return p;
}

// x = y + z*sqrt(p) where no radicand of y or z is divisible by p.
void split(const Surd& x, std::uint64_t p, Surd& y, Surd& z) {
  y = Surd();
  z = Surd();
  for (const auto& t : x.terms()) {
    if (t.radicand % p == 0) {
      z += Surd(t.coef) * Surd::sqrt(mpq_class(static_cast<unsigned long>(t.radicand / p)));
    } else {
      y += Surd(t.coef) * Surd::sqrt(mpq_class(static_cast<unsigned long>(t.radicand)));
    }
  }
}

}  // namespace

int Surd::sign() const {
  if (terms_.empty()) return 0;
  if (terms_.size() == 1) return sign_of(terms_[0].coef);
  const double bound = magnitude_ * 1e-13;
  if (std::isfinite(approx_) && std::isfinite(magnitude_) && std::fabs(approx_) > bound)
    return approx_ > 0 ? 1 : -1;
  const std::uint64_t p = split_prime(terms_);
  Surd y, z;
  split(*this, p, y, z);
  const int sy = y.sign();
  const int sz = z.sign();
  if (sz == 0) return sy;
  if (sy == 0 || sy == sz) return sy == 0 ? sz : sy;
  const Surd norm = y * y - Surd(mpq_class(static_cast<unsigned long>(p))) * z * z;
  return sy * norm.sign();
}

Surd Surd::inverse() const {
  if (terms_.empty()) throw InvalidInput("division by zero");
  if (is_rational()) return Surd(mpq_class(1) / terms_[0].coef);
  if (terms_.size() == 1) {
    // (c sqrt(s))^{-1} = sqrt(s) / (c s)
    const auto& t = terms_[0];
    return Surd(std::vector<SurdTerm>{
        {t.radicand, mpq_class(1) / (t.coef * mpq_class(static_cast<unsigned long>(t.radicand)))}});
  }
  const std::uint64_t p = split_prime(terms_);
  Surd y, z;
  split(*this, p, y, z);
  const Surd sp = Surd::sqrt(mpq_class(static_cast<unsigned long>(p)));
  const Surd norm = y * y - Surd(mpq_class(static_cast<unsigned long>(p))) * z * z;
  return (y - z * sp) * norm.inverse();
}

mpz_class Surd::floor() const {
  double a = std::floor(approx_);
  mpz_class f;
  if (std::isfinite(a) && std::fabs(a) < 1e15) {
    f = static_cast<long>(a);
  } else {
    // Fallback for huge values: floor of the sum of floors, corrected below.
    f = 0;
    for (const auto& t : terms_) {
      mpz_class n = t.coef.get_num() * t.coef.get_num() * static_cast<unsigned long>(t.radicand);
      mpz_class r;
      mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
      mpz_class q = r / t.coef.get_den();
      f += t.coef < 0 ? -q : q;
    }
  }
  while ((*this - Surd(mpq_class(f))).sign() < 0) f -= 1;
  while ((*this - Surd(mpq_class(f + 1))).sign() >= 0) f += 1;
  return f;
}

std::string Surd::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const auto& t = terms_[i];
    std::string c = t.coef.get_str();
    if (i > 0) {
      if (c[0] == '-') {
        out += "-";
        c = c.substr(1);
      } else {
        out += "+";
      }
    }
    if (t.radicand == 1) {
      out += c;
    } else {
      if (c == "1") {
      } else if (c == "-1") {
        out += "-";
      } else {
        out += c + "*";
      }
      out += "sqrt(" + std::to_string(t.radicand) + ")";
    }
  }
  return out;
}

Scalar Scalar::rational(long long num, long long den) {
  if (den == 0) throw InvalidInput("zero denominator");
  mpq_class q(static_cast<long>(num), 1);
  q /= mpq_class(static_cast<long>(den));
  return Scalar(q);
}

Scalar Scalar::approx(double v, double tol) {
  Scalar s;
  s.rep_ = Approx{v, tol};
  return s;
}

Scalar Scalar::parse(std::string_view text) { return Expression::parse(text).evaluate(); }

const Surd& Scalar::exact() const {
  if (!is_exact()) throw InvalidInput("exact value requested from a float scalar");
  return std::get<Surd>(rep_);
}

double Scalar::to_double() const noexcept {
  if (const auto* s = std::get_if<Surd>(&rep_)) return s->approx();
  return std::get<Approx>(rep_).value;
}

double Scalar::tolerance() const noexcept {
  if (const auto* a = std::get_if<Approx>(&rep_)) return a->tol;
  return 0.0;
}

int Scalar::sign() const {
  if (const auto* s = std::get_if<Surd>(&rep_)) return s->sign();
  const auto& a = std::get<Approx>(rep_);
  if (std::fabs(a.value) <= a.tol) return 0;
  return a.value > 0 ? 1 : -1;
}

Scalar Scalar::inverse() const {
  if (const auto* s = std::get_if<Surd>(&rep_)) return Scalar(s->inverse());
  const auto& a = std::get<Approx>(rep_);
  if (a.value == 0.0) throw InvalidInput("division by zero");
  return approx(1.0 / a.value, a.tol);
}

long long Scalar::floor() const {
  if (const auto* s = std::get_if<Surd>(&rep_)) {
    const mpz_class f = s->floor();
    if (!f.fits_slong_p()) throw InvalidInput("floor out of range");
    return f.get_si();
  }
  const auto& a = std::get<Approx>(rep_);
  double f = std::floor(a.value);
  if (a.value - f > 1.0 - a.tol) f += 1.0;
  return static_cast<long long>(f);
}

Scalar Scalar::to_float(double tol) const {
  if (is_exact()) return approx(to_double(), tol);
  return *this;
}

Scalar Scalar::operator-() const {
  if (const auto* s = std::get_if<Surd>(&rep_)) return Scalar(-*s);
  const auto& a = std::get<Approx>(rep_);
  return approx(-a.value, a.tol);
}

namespace {

double joint_tol(const Scalar& a, const Scalar& b) { return std::max(a.tolerance(), b.tolerance()); }

}  // namespace

Scalar& Scalar::operator+=(const Scalar& o) {
  if (is_exact() && o.is_exact()) {
    std::get<Surd>(rep_) += std::get<Surd>(o.rep_);
  } else {
    *this = approx(to_double() + o.to_double(), joint_tol(*this, o));
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  if (is_exact() && o.is_exact()) {
    std::get<Surd>(rep_) -= std::get<Surd>(o.rep_);
  } else {
    *this = approx(to_double() - o.to_double(), joint_tol(*this, o));
  }
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  if (is_exact() && o.is_exact()) {
    std::get<Surd>(rep_) *= std::get<Surd>(o.rep_);
  } else {
    *this = approx(to_double() * o.to_double(), joint_tol(*this, o));
  }
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  if (is_exact() && o.is_exact()) {
    std::get<Surd>(rep_) /= std::get<Surd>(o.rep_);
  } else {
    if (o.to_double() == 0.0) throw InvalidInput("division by zero");
    *this = approx(to_double() / o.to_double(), joint_tol(*this, o));
  }
  return *this;
}

int compare(const Scalar& a, const Scalar& b) {
  if (a.is_exact() && b.is_exact()) return (a.exact() - b.exact()).sign();
  const double diff = a.to_double() - b.to_double();
  if (std::fabs(diff) <= joint_tol(a, b)) return 0;
  return diff < 0 ? -1 : 1;
}

std::string Scalar::to_string() const {
  if (const auto* s = std::get_if<Surd>(&rep_)) return s->to_string();
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", std::get<Approx>(rep_).value);
  return buf;
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

Scalar min(const Scalar& a, const Scalar& b) { return compare(b, a) < 0 ? b : a; }
Scalar max(const Scalar& a, const Scalar& b) { return compare(b, a) > 0 ? b : a; }

int compare(const ScalarVec& a, const ScalarVec& b) {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    const int c = compare(a[i], b[i]);
    if (c != 0) return c;
  }
  return a.size() < b.size() ? -1 : (a.size() > b.size() ? 1 : 0);
}

bool equal(const ScalarVec& a, const ScalarVec& b) { return compare(a, b) == 0; }

ScalarVec operator+(const ScalarVec& a, const ScalarVec& b) {
  if (a.size() != b.size()) throw InvalidInput("vector dimension mismatch");
  ScalarVec r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

ScalarVec operator-(const ScalarVec& a, const ScalarVec& b) {
  if (a.size() != b.size()) throw InvalidInput("vector dimension mismatch");
  ScalarVec r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

ScalarVec operator*(const Scalar& k, const ScalarVec& a) {
  ScalarVec r = a;
  for (auto& x : r) x = k * x;
  return r;
}

std::vector<double> to_doubles(const ScalarVec& v) {
  std::vector<double> r;
  r.reserve(v.size());
  for (const auto& x : v) r.push_back(x.to_double());
  return r;
}

std::string to_string(const ScalarVec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].to_string();
  return s + ")";
}

std::string to_string(const IntVec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v[i]);
  return s + ")";
}

long long floor_div(long long a, long long b) {
  long long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

long long floor_mod(long long a, long long b) { return a - floor_div(a, b) * b; }

}  // namespace cutproject
