#include "cutproject/hull.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "cutproject/analysis.hpp"
#include "cutproject/error.hpp"

namespace cutproject {

namespace {

double star_distance(const InternalSpace& space, const HPoint& a, const HPoint& b) {
  const FlatPoint f = space.flatten(space.reduce(space.subtract(a, b)));
  double dist = 0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    switch (space.axes()[i].kind) {
      case Axis::Kind::Line:
        dist = std::max(dist, std::fabs(f[i].x.to_double()));
        break;
      case Axis::Kind::Circle: {
        const double u = f[i].x.to_double();
        dist = std::max(dist, std::min(u, 1.0 - u));
        break;
      }
      default:
        if (f[i].k != 0) return INFINITY;
    }
  }
  return dist;
}

// Closed ball of radius eps around 0 in the continuous axes, {0} on the
// discrete ones.
Window ball(const InternalSpace& space, double eps) {
  FlatBox b(space.axes().size());
  const Scalar e = Scalar::approx(eps);
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (space.axes()[i].kind == Axis::Kind::Line) {
      b[i].intervals = {Interval::closed(-e, e)};
    } else if (space.axes()[i].kind == Axis::Kind::Circle) {
      b[i].intervals = {Interval::closed(Scalar(0), e), Interval::half_open(Scalar(1) - e, Scalar(1))};
    } else {
      b[i].values = {0};
    }
  }
  return Window::box(space, b);
}

LatticePoint shifted(const CutProjectScheme& scheme, LatticePoint lp, const HPoint& t) {
  lp.star = scheme.space().add(lp.star, t);
  return lp;
}

}  // namespace

Patch shifted_projection(const CutProjectScheme& scheme, const Window& w, const ShiftParameter& x, const Box& b) {
  if (x.s.size() != scheme.dim()) throw InvalidInput("shift has wrong dimension");
  const InternalSpace& h = scheme.space();
  Patch p = scheme.project_points(b.translated(Scalar(-1) * x.s), w.translate(h.negate(x.t))).translated(x.s);
  p.box = b;
  return p;
}

// ------------------------------------------------------------ limit patches

LimitPatchReport limit_patch_check(const CutProjectScheme& scheme, const AlmostModelSetWitness& witness,
                                   const HPoint& target, const Box& k, const LimitPatchOptions& opts) {
  const InternalSpace& h = scheme.space();
  h.check(target);
  if (!(opts.ratio > 0 && opts.ratio < 1) || !(opts.tolerance > 0) || !(opts.first_radius >= opts.tolerance))
    throw InvalidInput("limit sequence needs 0 < ratio < 1 and 0 < tolerance <= first radius");
  LimitPatchReport rep;
  const std::size_t d = scheme.dim();
  for (double eps = opts.first_radius; eps >= opts.tolerance; eps *= opts.ratio) {
    const Window near = ball(h, eps).translate(target);
    std::optional<LatticePoint> best;
    for (double r = 16; r <= opts.max_search_radius && !best; r *= 2) {
      for (auto& lp : scheme.enumerate(Box::cube(d, Scalar(static_cast<long long>(-r)), Scalar(static_cast<long long>(r))), near)) {
        double norm = 0;
        for (const auto& c : lp.x) norm = std::max(norm, std::fabs(c.to_double()));
        if (!best) {
          best = std::move(lp);
          continue;
        }
        double bn = 0;
        for (const auto& c : best->x) bn = std::max(bn, std::fabs(c.to_double()));
        if (norm < bn) best = std::move(lp);
      }
    }
    if (!best) {
      rep.stall = "no lattice star within " + std::to_string(eps) + " of the target inside radius " +
                  std::to_string(opts.max_search_radius);
      break;
    }
    rep.sequence.push_back(best->n);
    rep.distances.push_back(star_distance(h, best->star, target));
    const ScalarVec& s = best->x;
    Patch p = gamma_patch(scheme, witness, k.translated(Scalar(-1) * s)).translated(s);
    p.box = k;
    rep.patches.push_back(std::move(p));
  }
  if (rep.patches.size() >= 2) {
    rep.stabilized = verify_equality(rep.patches[rep.patches.size() - 2], rep.patches.back()).holds;
  } else if (rep.patches.size() == 1 && !rep.stall) {
    rep.stabilized = true;
  }
  rep.lower = scheme.project_points(k, witness.open_part.translate(target));
  rep.upper = scheme.project_points(k, witness.closed_part.translate(target));
  for (const auto& x : rep.upper.points)
    if (!rep.lower.contains(x)) rep.boundary_points.push_back(x);
  if (!rep.patches.empty()) {
    rep.limit = rep.patches.back();
    rep.lower_included = verify_inclusion(rep.lower, rep.limit).holds;
    rep.upper_included = verify_inclusion(rep.limit, rep.upper).holds;
  }
  return rep;
}

// ----------------------------------------------------------- generic shifts

std::optional<IntVec> shift_collision(const CutProjectScheme& scheme, const Window& u, const Window& w,
                                      const HPoint& t, long long bound) {
  const InternalSpace& h = scheme.space();
  const Window diff = w.minus(u);
  if (diff.is_empty()) return std::nullopt;
  std::vector<HPoint> targets;
  for (const auto& p : diff.finite_points()) targets.push_back(h.add(p, t));
  ScalarVec reach(scheme.dim(), Scalar(0));
  for (const auto& g : scheme.generators())
    for (std::size_t i = 0; i < reach.size(); ++i) reach[i] += Scalar(bound) * g.g[i].abs();
  const Box b{Scalar(-1) * reach, reach};
  for (const auto& lp : scheme.enumerate(b, Window::points(h, targets))) {
    if (std::all_of(lp.n.begin(), lp.n.end(), [&](long long x) { return std::llabs(x) <= bound; })) return lp.n;
  }
  return std::nullopt;
}

GenericShiftResult generic_shift(const CutProjectScheme& scheme, const Window& u, const Window& w, long long bound,
                                 int attempts, unsigned seed, const std::vector<HPoint>& candidates) {
  const InternalSpace& h = scheme.space();
  GenericShiftResult res;
  res.bound = bound;
  if (w.minus(u).is_empty()) {
    res.t = h.zero();
    return res;
  }
  static const char* const kLadder[] = {"1/pi", "1/e", "sqrt(3)/7", "pi/10", "e/7", "1/sqrt(7)"};
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long long> num(1, 997), den(1000, 9973);
  auto candidate = [&](int i) {
    if (static_cast<std::size_t>(i) < candidates.size()) return candidates[static_cast<std::size_t>(i)];
    const int j = i - static_cast<int>(candidates.size());
    FlatPoint f(h.axes().size());
    for (std::size_t a = 0; a < f.size(); ++a) {
      if (!h.axes()[a].continuous()) continue;
      const std::size_t step = static_cast<std::size_t>(j) + a;
      if (step < std::size(kLadder)) {
        f[a].x = Scalar::parse(kLadder[step]);
      } else {
        const long long n = num(rng), m = den(rng);
        f[a].x = Scalar::rational(n, m);
      }
    }
    return h.unflatten(f);
  };
  const int total = attempts + static_cast<int>(candidates.size());
  for (int i = 0; i < total; ++i) {
    const HPoint t = candidate(i);
    if (const auto hit = shift_collision(scheme, u, w, t, bound)) {
      res.rejected.emplace_back(t, *hit);
      continue;
    }
    res.t = t;
    res.attempt = i;
    return res;
  }
  std::string witness;
  for (const auto& [t, n] : res.rejected) witness += h.to_string(t) + " hits star of " + to_string(n) + "\n";
  throw CertificationFailure("no generic shift found in " + std::to_string(total) + " attempts", witness);
}

// ----------------------------------------------------- hull classification

HullClassificationReport hull_classification_check(const CutProjectScheme& scheme,
                                                   const AlmostModelSetWitness& witness, const ShiftParameter& x,
                                                   const Box& k, const std::optional<Patch>& claimed) {
  const InternalSpace& h = scheme.space();
  if (x.s.size() != scheme.dim()) throw InvalidInput("shift has wrong dimension");
  h.check(x.t);
  HullClassificationReport rep;
  const HPoint minus_t = h.negate(x.t);
  const Window u = witness.open_part.translate(minus_t);
  const Window w = witness.closed_part.translate(minus_t);

  // Gamma(x) from the original scheme.
  {
    const Box moved = k.translated(Scalar(-1) * x.s);
    Patch g;
    for (const auto& lp : scheme.enumerate(moved, w.closure()))
      if (witness.gamma(shifted(scheme, lp, x.t))) g.points.push_back(lp.x + x.s);
    g.box = k;
    g.scheme_id = scheme.id();
    sort_points(g.points);
    rep.gamma = std::move(g);
  }
  rep.lower = shifted_projection(scheme, witness.open_part, x, k);
  rep.upper = shifted_projection(scheme, witness.closed_part, x, k);
  const Patch& examined = claimed ? *claimed : rep.gamma;
  const PatchComparison lo = verify_inclusion(rep.lower, examined);
  const PatchComparison up = verify_inclusion(examined, rep.upper);
  rep.sandwich = lo.holds && up.holds;
  if (!lo.holds) {
    rep.witness = lo.witness;
    rep.detail = "missing point of Lambda_U(x): " + lo.detail;
  } else if (!up.holds) {
    rep.witness = up.witness;
    rep.detail = "point outside Lambda_W(x): " + up.detail;
  }

  // Rebuild a window in a scheme where Gamma(x) consists of lattice points.
  const bool shift_g = std::any_of(x.s.begin(), x.s.end(), [](const Scalar& c) { return !c.is_zero(); });
  if (shift_g) {
    TranslationOptions topts;
    topts.box = k;
    topts.windows = {witness.closed_part};
    rep.translation = translate_cps(scheme, x.s, topts);
    const Translation& tr = *rep.translation;
    const IntVec v = [&] {
      IntVec out = tr.b_coords;
      out.push_back(-tr.m);
      return out;
    }();
    const IntMatrix inv = tr.commensurate() ? integer_inverse(unimodular_to_e1(v)) : IntMatrix{};
    const std::size_t r = scheme.rank();
    // New lattice point -> (old coordinates n, multiple j) with point = l(n) + j s.
    auto old_point = [&tr, inv, r](const IntVec& kc) {
      IntVec w(r + 1);
      if (tr.commensurate()) {
        IntVec full(r + 1, 0);
        for (std::size_t i = 0; i < r; ++i) full[i + 1] = kc[i];
        w = multiply(inv, full);
        const long long c = floor_div(w[r] - 1, tr.m);
        for (std::size_t i = 0; i < r; ++i) w[i] += c * tr.b_coords[i];
        w[r] -= c * tr.m;
      } else {
        w = kc;
      }
      return w;
    };
    const CutProjectScheme& old = scheme;
    const auto rule = witness.gamma;
    const HPoint t = x.t;
    AlmostModelSetWitness lifted{lift_window(tr, u, 1), lift_window(tr, w, 1),
                                 [&old, rule, t, old_point, r](const LatticePoint& lp) {
                                   const IntVec c = old_point(lp.n);
                                   if (c[r] != 1) return false;
                                   const IntVec n(c.begin(), c.begin() + static_cast<long>(r));
                                   LatticePoint o = old.point(n);
                                   o.star = old.space().add(o.star, t);
                                   return rule(o);
                                 }};
    rep.model = almost_to_model(tr.scheme, lifted, k);
    Patch rebuilt = tr.scheme.project_points(k, rep.model.window);
    const PatchComparison eq = verify_equality(rebuilt, examined);
    rep.rebuilt_equal = eq.holds;
    if (!eq.holds && !rep.witness) {
      rep.witness = eq.witness;
      rep.detail = "rebuilt window differs: " + eq.detail;
    }
  } else {
    const auto rule = witness.gamma;
    const HPoint t = x.t;
    const InternalSpace space = h;
    AlmostModelSetWitness moved{u, w, [rule, t, space](const LatticePoint& lp) {
                                  LatticePoint o = lp;
                                  o.star = space.add(o.star, t);
                                  return rule(o);
                                }};
    rep.model = almost_to_model(scheme, moved, k);
    const PatchComparison eq = verify_equality(scheme.project_points(k, rep.model.window), examined);
    rep.rebuilt_equal = eq.holds;
    if (!eq.holds && !rep.witness) {
      rep.witness = eq.witness;
      rep.detail = "rebuilt window differs: " + eq.detail;
    }
  }
  return rep;
}

}  // namespace cutproject
