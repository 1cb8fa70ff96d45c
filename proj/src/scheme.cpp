#include "cutproject/scheme.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <set>
#include <thread>

#include "cutproject/error.hpp"
#include "cutproject/relation.hpp"

namespace cutproject {

namespace {

unsigned thread_count(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("CUTPROJECT_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return static_cast<unsigned>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

bool all_exact(const ScalarVec& v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& x) { return x.is_exact(); });
}

bool point_less(const ScalarVec& a, const ScalarVec& b) { return compare(a, b) < 0; }

double widen(double v) { return 1e-7 * (1.0 + std::fabs(v)); }

}  // namespace

// -------------------------------------------------------------------- patch

bool Patch::contains(const ScalarVec& x) const {
  return std::binary_search(points.begin(), points.end(), x, point_less);
}

Patch Patch::translated(const ScalarVec& t) const {
  Patch p;
  p.box = box.translated(t);
  p.scheme_id = scheme_id;
  p.points.reserve(points.size());
  for (const auto& x : points) p.points.push_back(x + t);
  return p;
}

Patch Patch::restricted(const Box& b) const {
  Patch p;
  p.box = b;
  p.scheme_id = scheme_id;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!b.contains(points[i])) continue;
    p.points.push_back(points[i]);
    if (has_coords()) p.coords.push_back(coords[i]);
  }
  return p;
}

void sort_points(std::vector<ScalarVec>& points) {
  std::sort(points.begin(), points.end(), point_less);
  points.erase(std::unique(points.begin(), points.end(), [](const ScalarVec& a, const ScalarVec& b) { return equal(a, b); }),
               points.end());
}

Box averaging_box(std::size_t d, long long n) { return Box::cube(d, Scalar(-n), Scalar(n)); }

// ------------------------------------------------------------------- scheme

CutProjectScheme::CutProjectScheme(std::size_t d, InternalSpace space, std::vector<Generator> generators,
                                   bool require_injective)
    : d_(d), space_(std::move(space)), gens_(std::move(generators)) {
  if (d_ == 0) throw InvalidInput("direct space dimension must be positive");
  const std::size_t r = gens_.size();
  const std::size_t rows = d_ + space_.linear_dim();
  if (rows != r)
    throw InvalidInput("lattice rank " + std::to_string(r) + " does not match d + linear internal dimension " +
                       std::to_string(rows));
  m_.assign(rows, ScalarVec(r));
  for (std::size_t j = 0; j < r; ++j) {
    auto& gen = gens_[j];
    if (gen.g.size() != d_) throw InvalidInput("generator direct part has wrong dimension");
    space_.check(gen.h);
    gen.h = space_.reduce(gen.h);
    const ScalarVec lin = space_.linearize(gen.h);
    for (std::size_t i = 0; i < d_; ++i) m_[i][j] = gen.g[i];
    for (std::size_t i = 0; i < lin.size(); ++i) m_[d_ + i][j] = lin[i];
    if (!all_exact(gen.g)) direct_exact_ = exact_ = false;
    for (const auto& a : space_.flatten(gen.h))
      if (!a.x.is_exact()) exact_ = false;
  }
  const Scalar det = determinant(m_);
  if (det.is_zero()) throw InvalidInput("lattice matrix is singular");
  covolume_ = det.abs() * space_.kernel_mass();
  const auto inv = inverse(m_);
  if (!inv) throw InvalidInput("lattice matrix is singular");
  m_double_ = to_doubles(m_);
  m_inv_double_ = to_doubles(*inv);

  // The direct projection must be injective on Z^r: the g_j are Q-independent.
  Matrix g(d_, ScalarVec(r));
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t i = 0; i < d_; ++i) g[i][j] = gens_[j].g[i];
  if (!require_injective) {
    injective_ = false;
  } else if (direct_exact_) {
    if (rational_column_rank(g) != r) throw InvalidInput("direct projection is not injective on the lattice");
  } else {
    std::vector<std::vector<Expression>> x(r);
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t i = 0; i < d_; ++i) x[j].push_back(Expression::constant(gens_[j].g[i]));
    const RelationResult rel = find_integer_relation(x, 10'000, 48);
    if (rel.status == RelationResult::Status::Found)
      throw InvalidInput("direct projection is not injective on the lattice: relation " + to_string(rel.relation));
  }
}

CutProjectScheme CutProjectScheme::fibonacci() {
  const Scalar tau = Scalar::parse("tau");
  const Scalar conj = Scalar(1) - tau;
  const InternalSpace r = InternalSpace::real(1);
  auto pt = [](const Scalar& x) { return HPoint{{FactorCoord{RealCoord{{x}}}}}; };
  return CutProjectScheme(1, r, {Generator{{Scalar(1)}, pt(Scalar(1))}, Generator{{tau}, pt(conj)}});
}

CutProjectScheme CutProjectScheme::square_lattice(std::size_t d) {
  const InternalSpace h = InternalSpace::real(static_cast<int>(d));
  std::vector<Generator> gens;
  for (std::size_t i = 0; i < 2 * d; ++i) {
    ScalarVec e(2 * d, Scalar(0));
    e[i] = Scalar(1);
    gens.push_back(Generator{ScalarVec(e.begin(), e.begin() + static_cast<long>(d)),
                             HPoint{{FactorCoord{RealCoord{ScalarVec(e.begin() + static_cast<long>(d), e.end())}}}}});
  }
  return CutProjectScheme(d, h, std::move(gens), false);
}

ScalarVec CutProjectScheme::direct(const IntVec& n) const {
  if (n.size() != rank()) throw InvalidInput("lattice coordinate vector has wrong length");
  ScalarVec x(d_, Scalar(0));
  for (std::size_t j = 0; j < n.size(); ++j) {
    if (n[j] == 0) continue;
    const Scalar k(n[j]);
    for (std::size_t i = 0; i < d_; ++i) x[i] += k * gens_[j].g[i];
  }
  return x;
}

HPoint CutProjectScheme::star(const IntVec& n) const {
  if (n.size() != rank()) throw InvalidInput("lattice coordinate vector has wrong length");
  HPoint h = space_.zero();
  for (std::size_t j = 0; j < n.size(); ++j)
    if (n[j] != 0) h = space_.add(h, space_.scale(gens_[j].h, n[j]));
  return h;
}

LatticePoint CutProjectScheme::point(const IntVec& n) const { return LatticePoint{n, direct(n), star(n)}; }

std::vector<IntVec> CutProjectScheme::coordinate_box(long long bound) const {
  const double count = std::pow(2.0 * static_cast<double>(bound) + 1.0, static_cast<double>(rank()));
  if (count > 5e7) throw EnumerationOverflow("coordinate box too large");
  std::vector<IntVec> out;
  IntVec n(rank(), -bound);
  for (;;) {
    out.push_back(n);
    std::size_t i = 0;
    while (i < n.size() && n[i] == bound) n[i++] = -bound;
    if (i == n.size()) break;
    ++n[i];
  }
  return out;
}

std::vector<LatticePoint> CutProjectScheme::enumerate(const Box& b, const Window& w,
                                                      const EnumerationLimits& limits) const {
  if (b.dim() != d_) throw InvalidInput("box dimension does not match the scheme");
  if (!(w.space() == space_)) throw InvalidInput("window lives in a different internal space");
  const auto wb = w.linear_bounds();
  if (!wb) return {};
  std::vector<std::pair<double, double>> v;
  for (std::size_t i = 0; i < d_; ++i) {
    const double lo = b.lo[i].to_double(), hi = b.hi[i].to_double();
    v.emplace_back(lo - widen(lo), hi + widen(hi));
  }
  v.insert(v.end(), wb->begin(), wb->end());
  const std::size_t r = rank();

  std::vector<long long> nlo(r), nhi(r);
  for (std::size_t i = 0; i < r; ++i) {
    double lo = 0, hi = 0;
    for (std::size_t j = 0; j < r; ++j) {
      const double a = m_inv_double_[i][j];
      lo += std::min(a * v[j].first, a * v[j].second);
      hi += std::max(a * v[j].first, a * v[j].second);
    }
    if (!std::isfinite(lo) || !std::isfinite(hi) || std::fabs(lo) > 1e15 || std::fabs(hi) > 1e15)
      throw EnumerationOverflow("lattice coordinate bounds are not finite");
    nlo[i] = static_cast<long long>(std::floor(lo - widen(lo)));
    nhi[i] = static_cast<long long>(std::ceil(hi + widen(hi)));
  }
  // The widest coordinate is solved for last; the others are looped over.
  std::size_t last = 0;
  for (std::size_t i = 1; i < r; ++i)
    if (nhi[i] - nlo[i] > nhi[last] - nlo[last]) last = i;
  std::vector<std::size_t> outer;
  double candidates = 1;
  for (std::size_t i = 0; i < r; ++i) {
    if (i == last) continue;
    outer.push_back(i);
    candidates *= static_cast<double>(nhi[i] - nlo[i] + 1);
  }
  if (candidates > limits.max_candidates)
    throw EnumerationOverflow("enumeration needs " + std::to_string(candidates) + " candidates");

  auto run = [&](long long first_lo, long long first_hi) {
    std::vector<LatticePoint> found;
    IntVec n(r, 0);
    for (std::size_t k = 0; k < outer.size(); ++k) n[outer[k]] = nlo[outer[k]];
    if (!outer.empty()) n[outer[0]] = first_lo;
    for (;;) {
      double lo = static_cast<double>(nlo[last]), hi = static_cast<double>(nhi[last]);
      bool feasible = true;
      for (std::size_t i = 0; i < r && feasible; ++i) {
        double s = 0;
        for (std::size_t j : outer) s += m_double_[i][j] * static_cast<double>(n[j]);
        const double c = m_double_[i][last];
        const double slack = 1e-7 * (1.0 + std::fabs(s) + std::fabs(v[i].first) + std::fabs(v[i].second));
        const double a = v[i].first - s - slack, z = v[i].second - s + slack;
        if (std::fabs(c) < 1e-300) {
          feasible = a <= 0 && 0 <= z;
        } else {
          lo = std::max(lo, std::min(a / c, z / c));
          hi = std::min(hi, std::max(a / c, z / c));
          feasible = lo <= hi + 1;
        }
      }
      if (feasible) {
        for (long long t = static_cast<long long>(std::ceil(lo - 1e-9)); t <= static_cast<long long>(std::floor(hi + 1e-9));
             ++t) {
          n[last] = t;
          ScalarVec x = direct(n);
          if (!b.contains(x)) continue;
          HPoint h = star(n);
          if (w.contains_at(h, x)) found.push_back(LatticePoint{n, std::move(x), std::move(h)});
        }
      }
      std::size_t k = outer.size();
      for (std::size_t q = outer.size(); q-- > 0;) {
        const std::size_t c = outer[q];
        const long long top = q == 0 ? first_hi : nhi[c];
        if (n[c] < top) {
          ++n[c];
          k = q;
          break;
        }
        n[c] = q == 0 ? first_lo : nlo[c];
      }
      if (k == outer.size()) break;
    }
    return found;
  };

  std::vector<LatticePoint> all;
  if (outer.empty()) {
    all = run(0, 0);
  } else {
    const long long span = nhi[outer[0]] - nlo[outer[0]] + 1;
    const unsigned threads =
        static_cast<unsigned>(std::min<long long>(thread_count(limits.threads), candidates > 2e4 ? span : 1));
    std::vector<std::vector<LatticePoint>> parts(threads);
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      const long long a = nlo[outer[0]] + span * t / threads;
      const long long z = nlo[outer[0]] + span * (t + 1) / threads - 1;
      if (a > z) continue;
      auto job = [&, t, a, z] {
        try {
          parts[t] = run(a, z);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      };
      if (threads == 1) {
        job();
      } else {
        pool.emplace_back(job);
      }
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
    for (auto& p : parts)
      for (auto& x : p) all.push_back(std::move(x));
  }
  std::sort(all.begin(), all.end(), [](const LatticePoint& a, const LatticePoint& b) {
    const int c = compare(a.x, b.x);
    return c != 0 ? c < 0 : a.n < b.n;
  });
  return all;
}

Patch CutProjectScheme::project_points(const Box& b, const Window& w, bool with_coords,
                                       const EnumerationLimits& limits) const {
  Patch p;
  p.box = b;
  p.scheme_id = id();
  for (auto& lp : enumerate(b, w, limits)) {
    p.points.push_back(std::move(lp.x));
    if (with_coords) p.coords.push_back(std::move(lp.n));
  }
  return p;
}

std::optional<Commensurability> CutProjectScheme::is_commensurate(const ScalarVec& a, long long bound) const {
  if (a.size() != d_) throw InvalidInput("shift has wrong dimension");
  if (std::all_of(a.begin(), a.end(), [](const Scalar& x) { return x.is_zero(); }))
    throw InvalidInput("shift must be nonzero");
  if (bound < 1) throw InvalidInput("commensurability bound must be positive");
  const std::size_t r = rank();
  if (direct_exact_ && all_exact(a)) {
    std::vector<Scalar> all(a.begin(), a.end());
    for (const auto& gen : gens_) all.insert(all.end(), gen.g.begin(), gen.g.end());
    const auto basis = radicand_basis(all);
    QMatrix lhs;
    QVec rhs;
    for (std::size_t i = 0; i < d_; ++i) {
      const QVec ai = expand(a[i], basis);
      std::vector<QVec> gi;
      for (std::size_t j = 0; j < r; ++j) gi.push_back(expand(gens_[j].g[i], basis));
      for (std::size_t k = 0; k < basis.size(); ++k) {
        QVec row(r);
        for (std::size_t j = 0; j < r; ++j) row[j] = gi[j][k];
        lhs.push_back(row);
        rhs.push_back(ai[k]);
      }
    }
    const auto y = solve(lhs, rhs);
    if (!y) return std::nullopt;
    mpz_class m = 1;
    for (const auto& q : *y) m = lcm(m, mpz_class(q.get_den()));
    if (m > static_cast<long>(bound)) return std::nullopt;
    Commensurability c;
    c.m = m.get_si();
    for (const auto& q : *y) {
      const mpq_class t = q * m;
      c.n.push_back(mpz_class(t.get_num()).get_si());
    }
    return c;
  }
  std::vector<std::vector<Expression>> x(r + 1);
  for (std::size_t i = 0; i < d_; ++i) x[0].push_back(Expression::constant(a[i]));
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t i = 0; i < d_; ++i) x[j + 1].push_back(Expression::constant(gens_[j].g[i]));
  const RelationResult rel = find_integer_relation(x, bound, 48);
  if (rel.status == RelationResult::Status::Excluded) return std::nullopt;
  if (rel.status == RelationResult::Status::Undecided || rel.relation[0] == 0)
    throw CommensurabilityUnknown("integer-relation search at bound " + std::to_string(bound) +
                                  " is inconclusive for " + to_string(a));
  long long g = 0;
  for (long long c : rel.relation) g = std::gcd(g, c);
  Commensurability c;
  c.heuristic = true;
  const long long c0 = rel.relation[0] / g;
  c.m = std::llabs(c0);
  for (std::size_t j = 1; j <= r; ++j) c.n.push_back(-(c0 > 0 ? 1 : -1) * rel.relation[j] / g);
  return c;
}

bool CutProjectScheme::dense_heuristic() const {
  const auto& axes = space_.axes();
  std::vector<std::size_t> cells;
  double total = 1;
  for (const auto& a : axes) {
    std::size_t n = 8;
    if (a.kind == Axis::Kind::Integer) n = 3;
    if (a.kind == Axis::Kind::Residue) n = static_cast<std::size_t>(a.modulus);
    cells.push_back(n);
    total *= static_cast<double>(n);
  }
  if (total > 1e5) return false;
  long long bound = 1;
  while (std::pow(2.0 * static_cast<double>(bound + 1) + 1.0, static_cast<double>(rank())) <= 2e4) ++bound;
  std::set<std::size_t> hit;
  for (const auto& n : coordinate_box(bound)) {
    const FlatPoint f = space_.flatten(star(n));
    std::size_t idx = 0;
    bool inside = true;
    for (std::size_t i = 0; i < axes.size() && inside; ++i) {
      long long c = 0;
      switch (axes[i].kind) {
        case Axis::Kind::Line: {
          const double x = f[i].x.to_double();
          c = static_cast<long long>(std::floor((x + 1.0) * 4.0));
          inside = x >= -1.0 && c >= 0 && c < 8;
          break;
        }
        case Axis::Kind::Circle:
          c = std::clamp<long long>(static_cast<long long>(std::floor(f[i].x.to_double() * 8.0)), 0, 7);
          break;
        case Axis::Kind::Integer:
          c = f[i].k + 1;
          inside = c >= 0 && c < 3;
          break;
        case Axis::Kind::Residue:
          c = f[i].k;
          break;
      }
      idx = idx * cells[i] + static_cast<std::size_t>(c);
    }
    if (inside) hit.insert(idx);
  }
  return static_cast<double>(hit.size()) == total;
}

}  // namespace cutproject
