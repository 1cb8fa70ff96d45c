#include "cutproject/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <set>

#include "cutproject/error.hpp"

namespace cutproject {

Matrix identity_matrix(std::size_t n) {
  Matrix m(n, ScalarVec(n, Scalar(0)));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = Scalar(1);
  return m;
}

Matrix transpose(const Matrix& a) {
  if (a.empty()) return {};
  Matrix t(a[0].size(), ScalarVec(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
  return t;
}

ScalarVec multiply(const Matrix& a, const ScalarVec& x) {
  ScalarVec y(a.size(), Scalar(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != x.size()) throw InvalidInput("matrix-vector dimension mismatch");
    for (std::size_t j = 0; j < x.size(); ++j)
      if (!a[i][j].is_zero() && !x[j].is_zero()) y[i] += a[i][j] * x[j];
  }
  return y;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  const Matrix bt = transpose(b);
  Matrix c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = multiply(bt, a[i]);
  return c;
}

namespace {

// Row index at or below `col` to pivot on, or -1.
int choose_pivot(const Matrix& a, std::size_t col) {
  int best = -1;
  double best_mag = -1.0;
  for (std::size_t r = col; r < a.size(); ++r) {
    if (a[r][col].is_zero()) continue;
    const double mag = std::fabs(a[r][col].to_double());
    if (a[r][col].is_exact()) return static_cast<int>(r);
    if (mag > best_mag) {
      best_mag = mag;
      best = static_cast<int>(r);
    }
  }
  return best;
}

}  // namespace

Scalar determinant(Matrix a) {
  const std::size_t n = a.size();
  Scalar det(1);
  for (std::size_t c = 0; c < n; ++c) {
    const int p = choose_pivot(a, c);
    if (p < 0) return Scalar(0);
    if (static_cast<std::size_t>(p) != c) {
      std::swap(a[p], a[c]);
      det = -det;
    }
    det *= a[c][c];
    const Scalar inv = a[c][c].inverse();
    for (std::size_t r = c + 1; r < n; ++r) {
      if (a[r][c].is_zero()) continue;
      const Scalar f = a[r][c] * inv;
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return det;
}

std::optional<Matrix> inverse(const Matrix& m) {
  const std::size_t n = m.size();
  Matrix a = m;
  Matrix inv = identity_matrix(n);
  for (std::size_t c = 0; c < n; ++c) {
    const int p = choose_pivot(a, c);
    if (p < 0) return std::nullopt;
    std::swap(a[p], a[c]);
    std::swap(inv[p], inv[c]);
    const Scalar pivot_inv = a[c][c].inverse();
    for (std::size_t k = 0; k < n; ++k) {
      a[c][k] *= pivot_inv;
      inv[c][k] *= pivot_inv;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c].is_zero()) continue;
      const Scalar f = a[r][c];
      for (std::size_t k = 0; k < n; ++k) {
        a[r][k] -= f * a[c][k];
        inv[r][k] -= f * inv[c][k];
      }
    }
  }
  return inv;
}

std::vector<std::vector<double>> to_doubles(const Matrix& a) {
  std::vector<std::vector<double>> r;
  r.reserve(a.size());
  for (const auto& row : a) r.push_back(to_doubles(row));
  return r;
}

std::vector<std::uint64_t> radicand_basis(const std::vector<Scalar>& values) {
  std::set<std::uint64_t> s{1};
  for (const auto& v : values) {
    if (!v.is_exact()) continue;
    for (const auto& t : v.exact().terms()) s.insert(t.radicand);
  }
  return {s.begin(), s.end()};
}

QVec expand(const Scalar& x, const std::vector<std::uint64_t>& basis) {
  QVec out(basis.size(), mpq_class(0));
  for (const auto& t : x.exact().terms()) {
    const auto it = std::lower_bound(basis.begin(), basis.end(), t.radicand);
    if (it == basis.end() || *it != t.radicand) throw InvalidInput("radicand outside basis");
    out[static_cast<std::size_t>(it - basis.begin())] = t.coef;
  }
  return out;
}

namespace {

// Reduces a to row echelon form in place; returns pivot columns.
std::vector<std::size_t> echelon(QMatrix& a, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols && row < a.size(); ++c) {
    std::size_t p = row;
    while (p < a.size() && a[p][c] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[row]);
    const mpq_class inv = 1 / a[row][c];
    for (auto& x : a[row]) x *= inv;
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == row || a[r][c] == 0) continue;
      const mpq_class f = a[r][c];
      for (std::size_t k = 0; k < a[r].size(); ++k) a[r][k] -= f * a[row][k];
    }
    pivots.push_back(c);
    ++row;
  }
  return pivots;
}

}  // namespace

std::size_t rank(QMatrix a) {
  if (a.empty()) return 0;
  return echelon(a, a[0].size()).size();
}

std::optional<QVec> solve(QMatrix a, QVec b) {
  if (a.size() != b.size()) throw InvalidInput("system dimension mismatch");
  if (a.empty()) return QVec{};
  const std::size_t n = a[0].size();
  for (std::size_t i = 0; i < a.size(); ++i) a[i].push_back(b[i]);
  const auto pivots = echelon(a, n);
  for (std::size_t r = pivots.size(); r < a.size(); ++r)
    if (a[r][n] != 0) return std::nullopt;
  QVec y(n, mpq_class(0));
  for (std::size_t r = 0; r < pivots.size(); ++r) y[pivots[r]] = a[r][n];
  return y;
}

std::size_t rational_column_rank(const Matrix& a) {
  if (a.empty()) return 0;
  std::vector<Scalar> all;
  for (const auto& row : a) all.insert(all.end(), row.begin(), row.end());
  const auto basis = radicand_basis(all);
  QMatrix q;
  for (const auto& row : a) {
    std::vector<QVec> expanded;
    for (const auto& x : row) expanded.push_back(expand(x, basis));
    for (std::size_t k = 0; k < basis.size(); ++k) {
      QVec line;
      for (const auto& e : expanded) line.push_back(e[k]);
      q.push_back(std::move(line));
    }
  }
  return rank(std::move(q));
}

IntMatrix unimodular_to_e1(const IntVec& v) {
  const std::size_t n = v.size();
  IntMatrix u(n, IntVec(n, 0));
  for (std::size_t i = 0; i < n; ++i) u[i][i] = 1;
  IntVec w = v;
  // Row operations applied to both w and u keep u * v == w.
  auto add_row = [&](std::size_t dst, std::size_t src, long long k) {
    w[dst] += k * w[src];
    for (std::size_t j = 0; j < n; ++j) u[dst][j] += k * u[src][j];
  };
  auto swap_rows = [&](std::size_t a, std::size_t b) {
    std::swap(w[a], w[b]);
    std::swap(u[a], u[b]);
  };
  for (;;) {
    std::size_t best = n;
    for (std::size_t i = 0; i < n; ++i)
      if (w[i] != 0 && (best == n || std::llabs(w[i]) < std::llabs(w[best]))) best = i;
    if (best == n) throw InvalidInput("zero vector has no unimodular completion");
    bool reduced = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == best || w[i] == 0) continue;
      add_row(i, best, -(w[i] / w[best]));
      reduced = true;
    }
    if (!reduced) {
      swap_rows(0, best);
      if (std::llabs(w[0]) != 1) throw InvalidInput("vector is not primitive");
      if (w[0] == -1) {
        w[0] = 1;
        for (auto& x : u[0]) x = -x;
      }
      return u;
    }
  }
}

IntMatrix integer_inverse(const IntMatrix& u) {
  Matrix m(u.size());
  for (std::size_t i = 0; i < u.size(); ++i)
    for (long long x : u[i]) m[i].push_back(Scalar(x));
  const auto inv = inverse(m);
  if (!inv) throw InvalidInput("matrix is singular");
  IntMatrix out(u.size(), IntVec(u.size()));
  for (std::size_t i = 0; i < u.size(); ++i) {
    for (std::size_t j = 0; j < u.size(); ++j) {
      const Scalar& x = (*inv)[i][j];
      if (!x.exact().is_rational() || x.exact().rational_part().get_den() != 1)
        throw InvalidInput("matrix is not unimodular");
      out[i][j] = x.floor();
    }
  }
  return out;
}

IntVec multiply(const IntMatrix& a, const IntVec& x) {
  IntVec y(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) y[i] += a[i][j] * x[j];
  return y;
}

}  // namespace cutproject
