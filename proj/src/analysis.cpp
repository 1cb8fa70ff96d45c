#include "cutproject/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cutproject/error.hpp"

namespace cutproject {

// --------------------------------------------------------------- annihilator

std::vector<ScalarVec> annihilator_projection(const CutProjectScheme& scheme, std::size_t count) {
  const InternalSpace& h = scheme.space();
  for (const auto& f : h.factors())
    if (std::holds_alternative<TorusFactor>(f.v) || std::holds_alternative<TwistedFactor>(f.v))
      throw InvalidInput("annihilator projection supports real, integer and cyclic factors only");
  const auto inv = inverse(scheme.matrix());
  if (!inv) throw InvalidInput("lattice matrix is singular");
  const std::size_t d = scheme.dim();
  const std::size_t r = scheme.rank();
  // (chi_G, eta) M = z - s c / q with z integral; the direct part of
  // (z - s c / q) M^-1 generates the projection.
  auto direct_part = [&](const ScalarVec& row) {
    ScalarVec chi(d, Scalar(0));
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t i = 0; i < d; ++i) chi[i] += row[j] * (*inv)[j][i];
    return chi;
  };
  std::vector<ScalarVec> out;
  for (std::size_t j = 0; j < r; ++j) {
    ScalarVec e(r, Scalar(0));
    e[j] = Scalar(1);
    out.push_back(direct_part(e));
  }
  const auto& axes = h.axes();
  for (std::size_t a = 0; a < axes.size(); ++a) {
    if (axes[a].kind != Axis::Kind::Residue) continue;
    ScalarVec row(r);
    for (std::size_t j = 0; j < r; ++j)
      row[j] = Scalar::rational(-h.flatten(scheme.generators()[j].h)[a].k, axes[a].modulus);
    out.push_back(direct_part(row));
  }
  if (count > 0 && out.size() > count) out.resize(count);
  return out;
}

// ------------------------------------------------------------------ density

double DensityReport::correction(std::size_t i) const { return boundary_constant / static_cast<double>(n.at(i)); }

bool DensityReport::all_within() const {
  return std::all_of(within.begin(), within.end(), [](bool b) { return b; });
}

DensityReport empirical_density(const CutProjectScheme& scheme, const Window& w, const std::vector<long long>& n,
                                double boundary_constant) {
  DensityReport rep;
  rep.boundary_constant = boundary_constant;
  rep.lower = scheme.density() * w.interior().measure();
  rep.upper = scheme.density() * w.closure().measure();
  const std::size_t d = scheme.dim();
  for (long long k : n) {
    if (k < 1) throw InvalidInput("averaging radius must be positive");
    const std::size_t c = scheme.project_points(averaging_box(d, k), w).size();
    const double e = static_cast<double>(c) / std::pow(2.0 * static_cast<double>(k), static_cast<double>(d));
    rep.n.push_back(k);
    rep.counts.push_back(c);
    rep.empirical.push_back(e);
    const double corr = boundary_constant / static_cast<double>(k);
    rep.within.push_back(rep.lower.to_double() - corr <= e && e <= rep.upper.to_double() + corr);
  }
  return rep;
}

// ------------------------------------------------------------- Fourier-Bohr

std::complex<double> fourier_bohr(const Patch& patch, const ScalarVec& chi, double volume) {
  const std::vector<double> c = to_doubles(chi);
  double re = 0, im = 0;
  for (const auto& x : patch.points) {
    double phase = 0;
    for (std::size_t i = 0; i < c.size(); ++i) phase += c[i] * x[i].to_double();
    re += std::cos(2 * std::numbers::pi * phase);
    im -= std::sin(2 * std::numbers::pi * phase);
  }
  return {re / volume, im / volume};
}

std::complex<double> fourier_bohr(const CutProjectScheme& scheme, const Window& w, const ScalarVec& chi, long long n) {
  if (chi.size() != scheme.dim()) throw InvalidInput("character has wrong dimension");
  const std::size_t d = scheme.dim();
  return fourier_bohr(scheme.project_points(averaging_box(d, n), w), chi,
                      std::pow(2.0 * static_cast<double>(n), static_cast<double>(d)));
}

// --------------------------------------------------------- equidistribution

std::string to_string(EquidistributionReport::Status s) {
  switch (s) {
    case EquidistributionReport::Status::Pass:
      return "pass";
    case EquidistributionReport::Status::Inconclusive:
      return "inconclusive";
    case EquidistributionReport::Status::Fail:
      return "fail";
  }
  return "?";
}

EquidistributionReport equidistribution_check(const CutProjectScheme& scheme, const Window& u, double chi_bound,
                                              long long n, int grid, double tolerance, double min_points_per_cell) {
  const InternalSpace& space = scheme.space();
  if (space.factors().empty() || !std::holds_alternative<TorusFactor>(space.factors().back().v))
    throw InvalidInput("equidistribution needs a scheme whose last internal factor is a torus");
  if (grid < 1) throw InvalidInput("grid resolution must be positive");
  const auto& tf = std::get<TorusFactor>(space.factors().back().v);
  const std::size_t td = static_cast<std::size_t>(tf.dim);
  const std::size_t d = scheme.dim();
  if (td != d) throw InvalidInput("torus dimension differs from the direct dimension");

  Window window = u;
  if (!(u.space() == space)) {
    const InternalSpace torus(std::vector<Factor>{space.factors().back()});
    window = Window::product(u, Window::full(torus));
    if (!(window.space() == space)) throw InvalidInput("window is in neither the extended nor the base space");
  }
  const Patch patch = scheme.project_points(averaging_box(d, n), window);

  EquidistributionReport rep;
  rep.tolerance = tolerance;
  rep.points = patch.size();
  const auto dinv = to_doubles(tf.basis_inverse);
  const auto dmat = to_doubles(tf.basis);

  // Fundamental coordinates u = D^-1 x mod 1.
  std::vector<std::vector<double>> us;
  us.reserve(patch.size());
  for (const auto& x : patch.points) {
    std::vector<double> v(td, 0.0);
    for (std::size_t i = 0; i < td; ++i) {
      for (std::size_t j = 0; j < d; ++j) v[i] += dinv[i][j] * x[j].to_double();
      v[i] -= std::floor(v[i]);
    }
    us.push_back(std::move(v));
  }

  std::size_t cells = 1;
  for (std::size_t i = 0; i < td; ++i) cells *= static_cast<std::size_t>(grid);
  rep.cells = cells;
  std::vector<std::size_t> hist(cells, 0);
  for (const auto& v : us) {
    std::size_t idx = 0;
    for (double c : v) idx = idx * static_cast<std::size_t>(grid) + std::min<std::size_t>(static_cast<std::size_t>(c * grid), grid - 1);
    ++hist[idx];
  }
  rep.cells_hit = static_cast<std::size_t>(std::count_if(hist.begin(), hist.end(), [](std::size_t c) { return c > 0; }));

  // Anchored boxes [0, j/grid) in every coordinate.
  if (!us.empty()) {
    std::vector<int> corner(td, 1);
    for (;;) {
      double vol = 1;
      for (int c : corner) vol *= static_cast<double>(c) / grid;
      std::size_t in = 0;
      for (const auto& v : us) {
        bool inside = true;
        for (std::size_t i = 0; i < td && inside; ++i) inside = v[i] < static_cast<double>(corner[i]) / grid;
        if (inside) ++in;
      }
      rep.discrepancy = std::max(rep.discrepancy, std::fabs(static_cast<double>(in) / static_cast<double>(us.size()) - vol));
      std::size_t i = 0;
      while (i < td && corner[i] == grid) corner[i++] = 1;
      if (i == td) break;
      ++corner[i];
    }
  }

  // Characters of the torus: chi = D^-T k, k in Z^d \ {0}; <chi, x> = <k, u>.
  std::vector<long long> kmax(td);
  for (std::size_t i = 0; i < td; ++i) {
    double norm = 0;
    for (std::size_t j = 0; j < td; ++j) norm += dmat[j][i] * dmat[j][i];
    kmax[i] = static_cast<long long>(std::floor(chi_bound * std::sqrt(norm) + 1e-9));
  }
  const double volume = std::pow(2.0 * static_cast<double>(n), static_cast<double>(d));
  IntVec k(td);
  for (std::size_t i = 0; i < td; ++i) k[i] = -kmax[i];
  for (;;) {
    std::vector<double> chi(td, 0.0);
    bool zero = true;
    for (std::size_t j = 0; j < td; ++j) {
      for (std::size_t i = 0; i < td; ++i) chi[j] += dinv[i][j] * static_cast<double>(k[i]);
      zero = zero && k[j] == 0;
    }
    double norm = 0;
    for (double c : chi) norm += c * c;
    if (!zero && std::sqrt(norm) <= chi_bound + 1e-12) {
      ++rep.characters;
      double re = 0, im = 0;
      for (const auto& v : us) {
        double phase = 0;
        for (std::size_t i = 0; i < td; ++i) phase += static_cast<double>(k[i]) * v[i];
        re += std::cos(2 * std::numbers::pi * phase);
        im -= std::sin(2 * std::numbers::pi * phase);
      }
      const double a = std::hypot(re, im) / volume;
      if (a >= rep.max_coefficient) {
        rep.max_coefficient = a;
        rep.worst_character.clear();
        for (std::size_t j = 0; j < td; ++j) {
          Scalar c(0);
          for (std::size_t i = 0; i < td; ++i) c += tf.basis_inverse[i][j] * Scalar(k[i]);
          rep.worst_character.push_back(c);
        }
      }
    }
    std::size_t i = 0;
    while (i < td && k[i] == kmax[i]) {
      k[i] = -kmax[i];
      ++i;
    }
    if (i == td) break;
    ++k[i];
  }

  if (rep.points > 0 && rep.cells_hit == rep.cells && rep.max_coefficient < tolerance) {
    rep.status = EquidistributionReport::Status::Pass;
  } else if (rep.points > 0 && rep.cells_hit < rep.cells &&
             static_cast<double>(rep.points) < min_points_per_cell * static_cast<double>(rep.cells)) {
    rep.status = EquidistributionReport::Status::Inconclusive;
  } else {
    rep.status = EquidistributionReport::Status::Fail;
  }
  return rep;
}

// --------------------------------------------------------- patch comparison

namespace {

bool exact_points(const Patch& p) {
  return std::all_of(p.points.begin(), p.points.end(), [](const ScalarVec& x) {
    return std::all_of(x.begin(), x.end(), [](const Scalar& s) { return s.is_exact(); });
  });
}

// Index of a point of a missing from b (a.size() if none). Exact patches
// merge; otherwise points are matched injectively within eps.
std::size_t first_unmatched(const Patch& a, const Patch& b, double eps) {
  if (exact_points(a) && exact_points(b)) {
    for (std::size_t i = 0; i < a.size(); ++i)
      if (!b.contains(a.points[i])) return i;
    return a.size();
  }
  std::vector<std::vector<double>> bd;
  for (const auto& x : b.points) bd.push_back(to_doubles(x));
  std::vector<std::size_t> order(bd.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return bd[x][0] < bd[y][0]; });
  std::vector<bool> used(bd.size(), false);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto x = to_doubles(a.points[i]);
    auto it = std::lower_bound(order.begin(), order.end(), x[0] - eps,
                               [&](std::size_t k, double v) { return bd[k][0] < v; });
    bool matched = false;
    for (; it != order.end() && bd[*it][0] <= x[0] + eps && !matched; ++it) {
      if (used[*it]) continue;
      bool close = true;
      for (std::size_t c = 0; c < x.size() && close; ++c) close = std::fabs(bd[*it][c] - x[c]) <= eps;
      if (close) {
        used[*it] = true;
        matched = true;
      }
    }
    if (!matched) return i;
  }
  return a.size();
}

}  // namespace

PatchComparison verify_inclusion(const Patch& a, const Patch& b, double eps) {
  if (!(a.box == b.box)) throw InvalidInput("patches live on different boxes: " + a.box.to_string() + " and " + b.box.to_string());
  PatchComparison out;
  const std::size_t i = first_unmatched(a, b, eps);
  out.holds = i == a.size();
  if (!out.holds) {
    out.witness = a.points[i];
    out.detail = "point " + to_string(a.points[i]) + " of the first patch is missing from the second";
  }
  return out;
}

PatchComparison verify_equality(const Patch& a, const Patch& b, double eps) {
  PatchComparison out = verify_inclusion(a, b, eps);
  if (!out.holds) return out;
  out = verify_inclusion(b, a, eps);
  if (!out.holds) {
    out.detail = "point " + to_string(*out.witness) + " of the second patch is missing from the first";
    return out;
  }
  if (a.size() != b.size()) {
    out.holds = false;
    out.detail = "patches have " + std::to_string(a.size()) + " and " + std::to_string(b.size()) + " points";
  }
  return out;
}

// -------------------------------------------------------------- repetitivity

RepetitivityReport repetitivity_check(const std::function<Patch(const Box&)>& source, const Box& k,
                                      const Scalar& radius, const Box& probe) {
  if (k.dim() != 1 || probe.dim() != 1) throw InvalidInput("repetitivity check is one-dimensional");
  if (radius.sign() < 0) throw InvalidInput("radius must be non-negative");
  RepetitivityReport rep;
  const Scalar lo = probe.lo[0] - radius, hi = probe.hi[0] + radius;
  const Box cover{{k.lo[0] + lo}, {k.hi[0] + hi}};
  const Patch p = source(cover);
  const Patch ref = p.restricted(k);
  const ScalarVec anchor = ref.size() > 0 ? ref.points.front() : ScalarVec{k.lo[0]};

  // Candidate t: some point p with p - t the first point of P within K.
  std::vector<Scalar> returns;
  for (const auto& x : p.points) {
    const Scalar t = x[0] - anchor[0];
    if (compare(t, lo) < 0 || compare(t, hi) > 0) continue;
    ++rep.candidates;
    const Patch moved = p.restricted(k.translated({t})).translated({-t});
    bool same = moved.size() == ref.size();
    for (std::size_t i = 0; same && i < ref.size(); ++i) same = equal(moved.points[i], ref.points[i]);
    if (same) returns.push_back(t);
  }
  rep.returns = returns.size();
  std::sort(returns.begin(), returns.end(), [](const Scalar& a, const Scalar& b) { return compare(a, b) < 0; });

  // Closed R-balls around the returns must cover the probe interval.
  const Scalar& plo = probe.lo[0];
  const Scalar& phi = probe.hi[0];
  std::optional<Scalar> reach;
  for (const Scalar& t : returns) {
    if (compare(t + radius, plo) < 0) continue;
    if (!reach) {
      if (compare(t - radius, plo) > 0) {
        rep.witness_center = ScalarVec{plo};
        return rep;
      }
      reach = t + radius;
    } else if (compare(t - radius, *reach) > 0) {
      rep.witness_center = ScalarVec{min((*reach + t - radius) / Scalar(2), phi)};
      return rep;
    } else {
      reach = max(*reach, t + radius);
    }
    if (compare(*reach, phi) >= 0) break;
  }
  if (!reach) {
    rep.witness_center = ScalarVec{plo};
    return rep;
  }
  if (compare(*reach, phi) < 0) {
    rep.witness_center = ScalarVec{phi};
    return rep;
  }
  rep.passed = true;
  return rep;
}

}  // namespace cutproject
