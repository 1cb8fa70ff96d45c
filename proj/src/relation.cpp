#include "cutproject/relation.hpp"

#include <algorithm>
#include <cmath>

#include "cutproject/error.hpp"

namespace cutproject {

namespace {

using ZVec = std::vector<mpz_class>;

struct GramSchmidt {
  std::vector<std::vector<mpq_class>> mu;
  std::vector<mpq_class> norm2;  // |b*_i|^2
};

mpq_class dot(const ZVec& a, const std::vector<mpq_class>& b) {
  mpq_class s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

GramSchmidt gram_schmidt(const std::vector<ZVec>& b) {
  const std::size_t k = b.size();
  GramSchmidt gs;
  gs.mu.assign(k, std::vector<mpq_class>(k, mpq_class(0)));
  gs.norm2.assign(k, mpq_class(0));
  std::vector<std::vector<mpq_class>> star(k);
  for (std::size_t i = 0; i < k; ++i) {
    star[i].assign(b[i].begin(), b[i].end());
    for (std::size_t j = 0; j < i; ++j) {
      if (gs.norm2[j] == 0) continue;
      gs.mu[i][j] = dot(b[i], star[j]) / gs.norm2[j];
      for (std::size_t t = 0; t < star[i].size(); ++t) star[i][t] -= gs.mu[i][j] * star[j][t];
    }
    mpq_class n = 0;
    for (const auto& x : star[i]) n += x * x;
    gs.norm2[i] = n;
  }
  return gs;
}

mpz_class round_q(const mpq_class& q) {
  mpq_class h = q + mpq_class(1, 2);
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), h.get_num_mpz_t(), h.get_den_mpz_t());
  return f;
}

mpz_class to_mpz(const BigFloat& x) {
  BigFloat r = boost::multiprecision::round(x);
  mpz_class z;
  mpfr_get_z(z.get_mpz_t(), r.backend().data(), MPFR_RNDN);
  return z;
}

}  // namespace

void lll_reduce(std::vector<ZVec>& b) {
  const mpq_class delta(99, 100);
  const std::size_t n = b.size();
  if (n < 2) return;
  GramSchmidt gs = gram_schmidt(b);
  std::size_t k = 1;
  std::size_t guard = 0;
  while (k < n) {
    if (++guard > 1000000) throw Error("LLL did not terminate");
    for (std::size_t jj = k; jj-- > 0;) {
      const mpz_class q = round_q(gs.mu[k][jj]);
      if (q == 0) continue;
      for (std::size_t t = 0; t < b[k].size(); ++t) b[k][t] -= q * b[jj][t];
      for (std::size_t l = 0; l < jj; ++l) gs.mu[k][l] -= q * gs.mu[jj][l];
      gs.mu[k][jj] -= q;
    }
    const mpq_class lhs = gs.norm2[k];
    const mpq_class rhs = (delta - gs.mu[k][k - 1] * gs.mu[k][k - 1]) * gs.norm2[k - 1];
    if (lhs >= rhs) {
      ++k;
    } else {
      std::swap(b[k], b[k - 1]);
      gs = gram_schmidt(b);
      k = std::max<std::size_t>(k - 1, 1);
    }
  }
}

RelationResult find_integer_relation(const std::vector<std::vector<Expression>>& x, long long bound,
                                     unsigned precision_cap) {
  if (x.empty()) throw InvalidInput("relation search needs at least one vector");
  if (bound < 1) throw InvalidInput("relation bound must be positive");
  const std::size_t k = x.size();
  const std::size_t d = x[0].size();
  for (const auto& v : x)
    if (v.size() != d) throw InvalidInput("relation inputs must have equal length");

  RelationResult result;
  result.bound = bound;
  result.heuristic = precision_cap != 0;

  const double kb = static_cast<double>(k) * static_cast<double>(bound);
  unsigned bits = static_cast<unsigned>(k * (std::ceil(std::log2(kb + 1.0)) + 4) + 24);
  const unsigned max_bits = precision_cap != 0 ? precision_cap : 8192;
  bits = std::min(bits, max_bits);

  // |c|_inf <= B implies |(c, tail)|^2 <= k B^2 + d (k B / 2)^2.
  const long lb = static_cast<long>(bound);
  const mpq_class half_kb(static_cast<long>(k) * lb, 2);
  mpq_class limit = mpq_class(static_cast<long>(k)) * lb * lb;
  limit += mpq_class(static_cast<long>(d)) * half_kb * half_kb;

  for (;;) {
    const unsigned work = bits + 64;
    std::vector<std::vector<BigFloat>> vals(k);
    BigFloat scale = boost::multiprecision::ldexp(BigFloat(1), static_cast<int>(bits));
    std::vector<ZVec> basis(k, ZVec(k + d, mpz_class(0)));
    for (std::size_t i = 0; i < k; ++i) {
      basis[i][i] = 1;
      for (std::size_t j = 0; j < d; ++j) {
        vals[i].push_back(x[i][j].evaluate_mp(work));
        basis[i][k + j] = to_mpz(vals[i][j] * scale);
      }
    }
    lll_reduce(basis);

    for (const auto& row : basis) {
      IntVec c(k);
      bool small = true;
      bool nonzero = false;
      for (std::size_t i = 0; i < k; ++i) {
        if (abs(row[i]) > static_cast<long>(bound)) {
          small = false;
          break;
        }
        c[i] = row[i].get_si();
        nonzero = nonzero || c[i] != 0;
      }
      if (!small || !nonzero) continue;
      // Residual check at working precision (exact inputs) or against the
      // input accuracy (capped inputs).
      bool is_relation = true;
      for (std::size_t j = 0; j < d && is_relation; ++j) {
        BigFloat s(0), mag(0);
        for (std::size_t i = 0; i < k; ++i) {
          s += c[i] * vals[i][j];
          mag += std::abs(static_cast<double>(c[i])) * boost::multiprecision::abs(vals[i][j]);
        }
        const BigFloat eps = precision_cap != 0
                                 ? boost::multiprecision::ldexp(BigFloat(8), -static_cast<int>(precision_cap))
                                 : boost::multiprecision::ldexp(BigFloat(1), -static_cast<int>(bits / 2));
        if (boost::multiprecision::abs(s) > eps * (mag + 1)) is_relation = false;
      }
      if (is_relation) {
        result.status = RelationResult::Status::Found;
        result.relation = c;
        result.precision_bits = bits;
        return result;
      }
    }

    const GramSchmidt gs = gram_schmidt(basis);
    const mpq_class shortest = *std::min_element(gs.norm2.begin(), gs.norm2.end());
    if (shortest > limit) {
      result.status = RelationResult::Status::Excluded;
      result.precision_bits = bits;
      return result;
    }
    if (bits >= max_bits) {
      result.status = RelationResult::Status::Undecided;
      result.precision_bits = bits;
      return result;
    }
    bits = std::min(bits * 2, max_bits);
  }
}

RelationResult find_integer_relation(const std::vector<Expression>& x, long long bound,
                                     unsigned precision_cap) {
  std::vector<std::vector<Expression>> v;
  v.reserve(x.size());
  for (const auto& e : x) v.push_back({e});
  return find_integer_relation(v, bound, precision_cap);
}

}  // namespace cutproject
