#include "cutproject/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "cutproject/analysis.hpp"
#include "cutproject/error.hpp"

namespace cutproject {

namespace {

bool all_exact(const ScalarVec& v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& x) { return x.is_exact(); });
}

HPoint append(const HPoint& h, FactorCoord c) {
  HPoint out = h;
  out.factors.push_back(std::move(c));
  return out;
}

const TwistedFactor& twist_factor(const InternalSpace& space) {
  return std::get<TwistedFactor>(space.factors().front().v);
}

CertificateCheck patch_check(std::string name, const Box& b, const Window& w, long long shift, const Patch& lhs,
                             const Patch& rhs) {
  CertificateCheck c{std::move(name), b, w, shift, false, {}};
  const PatchComparison cmp = verify_equality(lhs, rhs);
  c.passed = cmp.holds;
  c.detail = std::to_string(lhs.size()) + " points";
  if (!cmp.holds) c.detail += "; " + cmp.detail;
  return c;
}

std::vector<Window> windows_or_default(const std::vector<Window>& given, const InternalSpace& space) {
  return given.empty() ? std::vector<Window>{default_window(space)} : given;
}

}  // namespace

bool TransformCertificate::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CertificateCheck& c) { return c.passed; });
}

std::string to_string(TransformCertificate::Kind k) {
  switch (k) {
    case TransformCertificate::Kind::Translation:
      return "Translation";
    case TransformCertificate::Kind::QuotientTranslation:
      return "QuotientTranslation";
    case TransformCertificate::Kind::InjectiveExtension:
      return "InjectiveExtension";
    case TransformCertificate::Kind::WindowAugmentation:
      return "WindowAugmentation";
  }
  return "?";
}

Window default_window(const InternalSpace& space) {
  FlatBox b(space.axes().size());
  for (std::size_t i = 0; i < b.size(); ++i) {
    switch (space.axes()[i].kind) {
      case Axis::Kind::Line:
        b[i].intervals = {Interval::half_open(Scalar(-1), Scalar(1))};
        break;
      case Axis::Kind::Circle:
        b[i].intervals = {Interval::half_open(Scalar(0), Scalar(1))};
        break;
      case Axis::Kind::Integer:
        b[i].values = {0};
        break;
      case Axis::Kind::Residue:
        for (long long r = 0; r < space.axes()[i].modulus; ++r) b[i].values.push_back(r);
        break;
    }
  }
  return Window::box(space, b);
}

Box default_box(std::size_t d) { return Box::cube(d, Scalar(-20), Scalar(20)); }

// ------------------------------------------------------------- translation

HPoint Translation::embed(const HPoint& h) const {
  if (!commensurate()) return append(h, FactorCoord{IntCoord{{0}}});
  return scheme.space().reduce(HPoint{{FactorCoord{TwistedCoord{h, 0}}}});
}

IntVec Translation::map_coords(const IntVec& n) const { return multiply(old_to_new, n); }

Translation translate_cps(const CutProjectScheme& scheme, const ScalarVec& a, const TranslationOptions& opts) {
  if (a.size() != scheme.dim()) throw InvalidInput("shift has wrong dimension");
  if (std::all_of(a.begin(), a.end(), [](const Scalar& x) { return x.is_zero(); }))
    throw InvalidInput("shift must be nonzero");
  const bool float_mode = !(scheme.direct_exact() && all_exact(a));
  const auto comm = scheme.is_commensurate(a, opts.bound);
  if (float_mode && !opts.accept_heuristic)
    throw CommensurabilityUnknown("commensurability of " + to_string(a) +
                                  " is only heuristically decided in float mode");

  const InternalSpace& h = scheme.space();
  const std::size_t r = scheme.rank();
  Translation t;
  t.original = scheme;
  t.a = a;
  t.certificate.input_id = scheme.id();
  t.certificate.notes.emplace_back("bound", std::to_string(opts.bound));
  t.certificate.notes.emplace_back("heuristic", float_mode ? "true" : "false");

  if (!comm) {
    const InternalSpace hz = h.product(InternalSpace::integers(1));
    std::vector<Generator> gens;
    for (const auto& g : scheme.generators()) gens.push_back(Generator{g.g, append(g.h, FactorCoord{IntCoord{{0}}})});
    gens.push_back(Generator{a, append(h.zero(), FactorCoord{IntCoord{{1}}})});
    t.scheme = CutProjectScheme(scheme.dim(), hz, std::move(gens), scheme.injective_projection());
    t.b = append(h.zero(), FactorCoord{IntCoord{{1}}});
    t.old_to_new.assign(r + 1, IntVec(r, 0));
    for (std::size_t i = 0; i < r; ++i) t.old_to_new[i][i] = 1;
    t.a_coords.assign(r + 1, 0);
    t.a_coords[r] = 1;
    t.certificate.kind = TransformCertificate::Kind::Translation;
    t.certificate.lift_rule = "W' = W x {n}";
  } else {
    if (h.has_twist()) throw InvalidInput("translation of a twisted scheme would nest twists");
    t.m = comm->m;
    t.b_coords = comm->n;
    t.twist = scheme.star(comm->n);
    const InternalSpace ht = InternalSpace::twisted(h, t.m, *t.twist);
    const TwistedFactor& tw = twist_factor(ht);
    // Z^(r+1) / Z v with v = (n, -m) is the new coordinate lattice.
    IntVec v = comm->n;
    v.push_back(-t.m);
    const IntMatrix u = unimodular_to_e1(v);
    const IntMatrix inv = integer_inverse(u);
    std::vector<Generator> gens;
    for (std::size_t k = 1; k <= r; ++k) {
      IntVec w(r);
      for (std::size_t i = 0; i < r; ++i) w[i] = inv[i][k];
      const long long wa = inv[r][k];
      ScalarVec g = scheme.direct(w);
      if (wa != 0) g = g + Scalar(wa) * a;
      gens.push_back(Generator{g, HPoint{{FactorCoord{InternalSpace::twisted_point(tw, scheme.star(w), wa)}}}});
    }
    t.scheme = CutProjectScheme(scheme.dim(), ht, std::move(gens), scheme.injective_projection());
    t.b = HPoint{{FactorCoord{InternalSpace::twisted_point(tw, h.zero(), 1)}}};
    t.old_to_new.assign(r, IntVec(r, 0));
    t.a_coords.assign(r, 0);
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < r; ++j) t.old_to_new[i][j] = u[i + 1][j];
      t.a_coords[i] = u[i + 1][r];
    }
    t.certificate.kind = TransformCertificate::Kind::QuotientTranslation;
    t.certificate.lift_rule = "W' = (W + s b*) at residue r, n = r + s m";
    t.certificate.notes.emplace_back("m", std::to_string(t.m));
    t.certificate.notes.emplace_back("m a coords", to_string(t.b_coords));
    t.certificate.notes.emplace_back("b*", h.to_string(*t.twist));
  }
  t.certificate.output_id = t.scheme.id();

  const LatticePoint ab = t.scheme.point(t.a_coords);
  CertificateCheck member{"(a, b) in L'", Box{a, a}, Window::points(t.scheme.space(), {t.b}), 1, false, {}};
  member.passed = equal(ab.x, a) && t.scheme.space().equal(ab.star, t.b);
  member.detail = t.scheme.space().to_string(ab.star);
  t.certificate.checks.push_back(std::move(member));

  const Box box = opts.box.value_or(default_box(scheme.dim()));
  for (const auto& w : windows_or_default(opts.windows, h)) {
    for (long long n : opts.multiples) {
      const Window lifted = lift_window(t, w, n);
      t.certificate.checks.push_back(patch_check("n a + Lambda_W = Lambda'_W'", box, w, n, shifted_patch(t, box, w, n),
                                                 t.scheme.project_points(box, lifted)));
    }
  }
  return t;
}

Window lift_window(const Translation& t, const Window& w, long long n) {
  if (!(w.space() == t.original.space())) throw InvalidInput("window is not in the original internal space");
  if (!t.commensurate()) {
    FlatBox level(1);
    level[0].values = {n};
    return Window::product(w, Window::box(InternalSpace::integers(1), level));
  }
  const InternalSpace& h = t.original.space();
  const Window base = w.translate(h.scale(*t.twist, floor_div(n, t.m)));
  return Window::at_residue(t.scheme.space(), floor_mod(n, t.m), base);
}

Patch shifted_patch(const Translation& t, const Box& b, const Window& w, long long n) {
  const ScalarVec na = Scalar(n) * t.a;
  Patch p = t.original.project_points(b.translated(Scalar(-n) * t.a), w).translated(na);
  p.box = b;
  return p;
}

std::optional<std::string> verify_lattice_restriction(const Translation& t, int samples, unsigned seed) {
  const auto& old = t.original;
  const auto& neu = t.scheme;
  const std::size_t r = old.rank();
  auto same = [&](const IntVec& n) -> std::optional<std::string> {
    const LatticePoint p = neu.point(t.map_coords(n));
    if (!equal(p.x, old.direct(n)) || !neu.space().equal(p.star, t.embed(old.star(n))))
      return "old coordinates " + to_string(n) + " map to " + to_string(p.x) + ", " + neu.space().to_string(p.star);
    return std::nullopt;
  };
  for (std::size_t j = 0; j < r; ++j) {
    IntVec e(r, 0);
    e[j] = 1;
    if (auto f = same(e)) return f;
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long long> coef(-50, 50);
  for (int s = 0; s < samples; ++s) {
    IntVec n(r);
    for (auto& x : n) x = coef(rng);
    if (auto f = same(n)) return f;
  }
  const LatticePoint ab = neu.point(t.a_coords);
  if (!equal(ab.x, t.a) || !neu.space().equal(ab.star, t.b)) return "(a, b) is not a lattice point";

  // Converse: new lattice points whose internal part lies in H come from
  // old lattice points.
  const std::size_t rn = neu.rank();
  IntVec v = t.b_coords;
  v.push_back(-t.m);
  const IntMatrix inv = t.commensurate() ? integer_inverse(unimodular_to_e1(v)) : IntMatrix{};
  int found = 0;
  for (int attempt = 0; found < samples && attempt < 50 * samples; ++attempt) {
    IntVec k(rn);
    for (auto& x : k) x = coef(rng);
    if (!t.commensurate()) k[r] = 0;
    const LatticePoint p = neu.point(k);
    IntVec w(r + 1, 0);
    if (t.commensurate()) {
      IntVec full(r + 1, 0);
      for (std::size_t i = 0; i < r; ++i) full[i + 1] = k[i];
      w = multiply(inv, full);
    } else {
      w = k;
    }
    const bool in_h = t.commensurate() ? floor_mod(w[r], t.m) == 0 : w[r] == 0;
    const HPoint& star = p.star;
    const bool residue_zero = t.commensurate() ? std::get<TwistedCoord>(star.factors[0].v).r == 0
                                               : std::get<IntCoord>(star.factors.back().v).k[0] == 0;
    if (in_h != residue_zero) return "residue of new coordinates " + to_string(k) + " is inconsistent";
    if (!in_h) continue;
    ++found;
    const long long q = t.commensurate() ? w[r] / t.m : 0;
    IntVec n(r);
    for (std::size_t i = 0; i < r; ++i) n[i] = w[i] + (t.commensurate() ? q * t.b_coords[i] : 0);
    if (!equal(p.x, old.direct(n)) || !neu.space().equal(star, t.embed(old.star(n))))
      return "new coordinates " + to_string(k) + " with internal part in H are not the old point " + to_string(n);
  }
  return std::nullopt;
}

// ---------------------------------------------------------- generic lattice

namespace {

std::vector<Expression> rational_basis(const std::vector<ScalarVec>& a, long long bound) {
  std::vector<Scalar> exact;
  std::vector<Scalar> floats;
  for (const auto& v : a)
    for (const auto& x : v) (x.is_exact() ? exact : floats).push_back(x);
  std::vector<Expression> basis;
  for (std::uint64_t s : radicand_basis(exact)) basis.push_back(Expression::constant(Scalar::sqrt(static_cast<long long>(s))));
  // Float entries join the basis only when no relation ties them to it.
  for (const auto& x : floats) {
    if (x.is_zero()) continue;
    auto trial = basis;
    trial.push_back(Expression::constant(x));
    if (find_integer_relation(trial, bound, 48).status != RelationResult::Status::Found) basis = std::move(trial);
  }
  return basis;
}

}  // namespace

GenericLatticeCertificate certify_generic(const std::vector<ScalarVec>& a, const std::vector<Expression>& c,
                                          long long bound) {
  GenericLatticeCertificate cert;
  cert.constants = c;
  cert.bound = bound;
  std::vector<Expression> x = rational_basis(a, bound);
  bool has_float = false;
  for (const auto& v : a)
    for (const auto& s : v) has_float = has_float || !s.is_exact();
  for (const auto& ci : c) {
    if (ci.evaluate().is_zero()) {
      cert.rejected.emplace_back(ci.text(), "zero");
      return cert;
    }
    x.push_back(ci);
    x.push_back(Expression::parse("1/(" + ci.text() + ")"));
  }
  const RelationResult rel = find_integer_relation(x, bound, has_float ? 48 : 0);
  cert.precision_bits = rel.precision_bits;
  std::string text;
  for (const auto& ci : c) text += (text.empty() ? "" : ", ") + ci.text();
  switch (rel.status) {
    case RelationResult::Status::Excluded:
      cert.passed = true;
      break;
    case RelationResult::Status::Found: {
      std::string relation;
      for (std::size_t i = 0; i < x.size(); ++i) {
        if (rel.relation[i] == 0) continue;
        relation += (relation.empty() ? "" : " + ") + std::to_string(rel.relation[i]) + "*(" + x[i].text() + ")";
      }
      cert.rejected.emplace_back(text, relation + " = 0");
      break;
    }
    case RelationResult::Status::Undecided:
      cert.rejected.emplace_back(text, "undecided");
      break;
  }
  return cert;
}

GenericLattice choose_generic_lattice(const std::vector<ScalarVec>& a, std::size_t d, GenericStrategy strategy,
                                      long long bound, int attempts, unsigned seed) {
  if (d == 0) throw InvalidInput("dimension must be positive");
  static const char* const kNamed[] = {"2^(1/3)", "3^(1/3)", "5^(1/3)", "pi/3", "e/2", "7^(1/3)"};
  constexpr std::size_t kNamedCount = std::size(kNamed);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> num(1, 9), den(2, 9);
  GenericLatticeCertificate last;
  std::vector<std::pair<std::string, std::string>> rejected;
  for (int k = 0; k < attempts; ++k) {
    std::vector<Expression> c;
    for (std::size_t i = 0; i < d; ++i) {
      if (strategy == GenericStrategy::NamedConstants) {
        c.push_back(Expression::parse(kNamed[(static_cast<std::size_t>(k) * d + i) % kNamedCount]));
      } else {
        c.push_back(Expression::parse("exp(" + std::to_string(num(rng)) + "/" + std::to_string(den(rng)) + ")"));
      }
    }
    last = certify_generic(a, c, bound);
    rejected.insert(rejected.end(), last.rejected.begin(), last.rejected.end());
    if (last.passed) {
      last.rejected = rejected;
      GenericLattice g;
      g.diagonal = c;
      g.basis.assign(d, ScalarVec(d, Scalar(0)));
      for (std::size_t i = 0; i < d; ++i) g.basis[i][i] = c[i].evaluate();
      g.certificate = last;
      return g;
    }
  }
  std::string witness;
  for (const auto& [c, why] : rejected) witness += c + ": " + why + "\n";
  throw CertificationFailure("no generic lattice found after " + std::to_string(attempts) + " attempts", witness);
}

std::vector<ScalarVec> generic_avoidance_set(const CutProjectScheme& scheme) {
  std::vector<ScalarVec> out;
  for (const auto& g : scheme.generators()) out.push_back(g.g);
  for (auto& v : annihilator_projection(scheme)) out.push_back(std::move(v));
  return out;
}

// ------------------------------------------------------ injective extension

HPoint InjectiveExtension::embed(const HPoint& h, const ScalarVec& u) const {
  return scheme.space().reduce(append(h, FactorCoord{TorusCoord{u}}));
}

std::optional<std::pair<IntVec, IntVec>> star_collision(const CutProjectScheme& scheme, long long bound) {
  const InternalSpace& space = scheme.space();
  const auto& axes = space.axes();
  std::size_t key = axes.size();
  for (std::size_t i = 0; i < axes.size() && key == axes.size(); ++i)
    if (axes[i].kind == Axis::Kind::Line) key = i;
  struct Entry {
    double key;
    IntVec n;
    HPoint star;
  };
  std::vector<Entry> entries;
  for (auto& n : scheme.coordinate_box(bound)) {
    HPoint h = space.reduce(scheme.star(n));
    const FlatPoint f = space.flatten(h);
    double k = 0;
    if (key < axes.size()) k = f[key].x.to_double();
    else if (!axes.empty()) k = axes[0].continuous() ? f[0].x.to_double() : static_cast<double>(f[0].k);
    entries.push_back(Entry{k, std::move(n), std::move(h)});
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.key < b.key; });
  // Equal stars have keys within float noise; circle keys near 0 and 1 are
  // also compared across the seam.
  const double eps = 1e-6;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    for (std::size_t j = i + 1; j < entries.size() && entries[j].key - entries[i].key <= eps; ++j)
      if (space.equal(entries[i].star, entries[j].star)) return std::make_pair(entries[i].n, entries[j].n);
  }
  if (key == axes.size() && !axes.empty() && axes[0].kind == Axis::Kind::Circle) {
    for (std::size_t i = 0; i < entries.size() && entries[i].key < eps; ++i)
      for (std::size_t j = entries.size(); j-- > i + 1 && entries[j].key > 1 - eps;)
        if (space.equal(entries[i].star, entries[j].star)) return std::make_pair(entries[i].n, entries[j].n);
  }
  return std::nullopt;
}

std::optional<IntVec> star_kernel_vector(const CutProjectScheme& scheme, long long bound) {
  ScalarVec reach(scheme.dim(), Scalar(0));
  for (const auto& g : scheme.generators())
    for (std::size_t i = 0; i < reach.size(); ++i) reach[i] += Scalar(bound) * g.g[i].abs();
  const Box b{Scalar(-1) * reach, reach};
  const Window zero = Window::points(scheme.space(), {scheme.space().zero()});
  for (const auto& lp : scheme.enumerate(b, zero)) {
    const bool nonzero = std::any_of(lp.n.begin(), lp.n.end(), [](long long x) { return x != 0; });
    const bool in_range = std::all_of(lp.n.begin(), lp.n.end(), [&](long long x) { return std::llabs(x) <= bound; });
    if (nonzero && in_range) return lp.n;
  }
  return std::nullopt;
}

InjectiveExtension extend_injective(const CutProjectScheme& scheme, const std::vector<Expression>& diagonal,
                                    const ExtensionOptions& opts) {
  const std::size_t d = scheme.dim();
  if (diagonal.size() != d) throw InvalidInput("torus basis needs one constant per direct dimension");
  InjectiveExtension e;
  e.original = scheme;
  e.diagonal = diagonal;
  e.generic = certify_generic(generic_avoidance_set(scheme), diagonal, opts.relation_bound);
  if (!e.generic.passed) {
    std::string witness;
    for (const auto& [c, why] : e.generic.rejected) witness += c + ": " + why;
    throw CertificationFailure("torus lattice is not generic for the scheme", witness);
  }
  Matrix basis(d, ScalarVec(d, Scalar(0)));
  for (std::size_t i = 0; i < d; ++i) basis[i][i] = diagonal[i].evaluate();
  const InternalSpace torus = InternalSpace::torus(basis);
  const TorusFactor& tf = std::get<TorusFactor>(torus.factors().front().v);
  std::vector<Generator> gens;
  for (const auto& g : scheme.generators())
    gens.push_back(Generator{g.g, append(g.h, FactorCoord{InternalSpace::torus_point(tf, g.g)})});
  e.scheme = CutProjectScheme(d, scheme.space().product(torus), std::move(gens), scheme.injective_projection());

  auto& cert = e.certificate;
  cert.kind = TransformCertificate::Kind::InjectiveExtension;
  cert.input_id = scheme.id();
  cert.output_id = e.scheme.id();
  cert.lift_rule = "W' = W x K";
  cert.notes.emplace_back("relation bound", std::to_string(opts.relation_bound));
  cert.notes.emplace_back("relation precision bits", std::to_string(e.generic.precision_bits));
  cert.notes.emplace_back("genericity", "heuristic (bounded integer-relation search)");

  CertificateCheck inj{"phi injective on |n_i| <= " + std::to_string(opts.injectivity_bound),
                       Box::cube(scheme.rank(), Scalar(-opts.injectivity_bound), Scalar(opts.injectivity_bound)),
                       Window::points(e.scheme.space(), {e.scheme.space().zero()}), 0, true, {}};
  if (const auto hit = star_collision(e.scheme, opts.injectivity_bound)) {
    IntVec k(hit->first.size());
    for (std::size_t i = 0; i < k.size(); ++i) k[i] = hit->first[i] - hit->second[i];
    throw CertificationFailure("extended star map is not injective", "kernel vector " + to_string(k));
  }
  inj.detail = "pairwise distinct";
  cert.checks.push_back(std::move(inj));

  const Box box = opts.box.value_or(default_box(d));
  const Window k = Window::full(torus);
  for (const auto& w : windows_or_default(opts.windows, scheme.space()))
    cert.checks.push_back(patch_check("Lambda_W = Lambda'_{W x K}", box, w, 0, scheme.project_points(box, w),
                                      e.scheme.project_points(box, Window::product(w, k))));
  return e;
}

// ------------------------------------------------------ almost model sets

Patch gamma_patch(const CutProjectScheme& scheme, const AlmostModelSetWitness& witness, const Box& b) {
  Patch p;
  p.box = b;
  p.scheme_id = scheme.id();
  for (auto& lp : scheme.enumerate(b, witness.closed_part.closure())) {
    if (!witness.gamma(lp)) continue;
    p.points.push_back(std::move(lp.x));
    p.coords.push_back(std::move(lp.n));
  }
  return p;
}

std::optional<std::string> verify_witness(const CutProjectScheme& scheme, const AlmostModelSetWitness& witness,
                                          const Box& b) {
  if (!witness.open_part.is_open()) return "U is not open";
  for (const auto& lp : scheme.enumerate(b, witness.open_part))
    if (!witness.gamma(lp)) return "point " + to_string(lp.x) + " of Lambda_U is missing from Gamma";
  for (const auto& lp : scheme.enumerate(b, witness.closed_part.closure()))
    if (witness.gamma(lp) && !witness.closed_part.contains(lp.star))
      return "point " + to_string(lp.x) + " of Gamma is not in Lambda_W";
  return std::nullopt;
}

std::optional<IntVec> star_injectivity_counterexample(const CutProjectScheme& scheme, const Box& region) {
  const InternalSpace& h = scheme.space();
  const bool linear = std::all_of(h.factors().begin(), h.factors().end(), [](const Factor& f) {
    return std::holds_alternative<RealFactor>(f.v) || std::holds_alternative<IntegerFactor>(f.v);
  });
  if (linear && scheme.is_exact()) {
    const Matrix& m = scheme.matrix();
    const Matrix lower(m.begin() + static_cast<long>(scheme.dim()), m.end());
    if (!lower.empty() && rational_column_rank(lower) == scheme.rank()) return std::nullopt;
  }
  ScalarVec half(region.dim());
  for (std::size_t i = 0; i < half.size(); ++i) half[i] = region.hi[i] - region.lo[i];
  const Box diff{Scalar(-1) * half, half};
  const Window zero = Window::points(h, {h.zero()});
  for (const auto& lp : scheme.enumerate(diff, zero))
    if (std::any_of(lp.n.begin(), lp.n.end(), [](long long x) { return x != 0; })) return lp.n;
  return std::nullopt;
}

AlmostModel almost_to_model(const CutProjectScheme& scheme, const AlmostModelSetWitness& witness,
                            const Box& truncation) {
  if (!(witness.open_part.space() == scheme.space()) || !(witness.closed_part.space() == scheme.space()))
    throw InvalidInput("witness windows are not in the scheme's internal space");
  if (const auto k = star_injectivity_counterexample(scheme, truncation))
    throw CertificationFailure("star map is not injective on the truncation", "kernel vector " + to_string(*k));
  if (const auto bad = verify_witness(scheme, witness, truncation))
    throw CertificationFailure("witness inclusions fail on the truncation", *bad);

  AlmostModel out;
  out.gamma = gamma_patch(scheme, witness, truncation);
  std::vector<HPoint> stars;
  for (const auto& n : out.gamma.coords) stars.push_back(scheme.star(n));
  out.window = Window::augmented(witness.open_part, stars, witness.closed_part.closure(), truncation);

  auto& cert = out.certificate;
  cert.kind = TransformCertificate::Kind::WindowAugmentation;
  cert.input_id = cert.output_id = scheme.id();
  cert.lift_rule = "W' = U + stars of Gamma on the truncation";
  cert.notes.emplace_back("augmented stars", std::to_string(out.window.augmentation().stars.size()));
  Patch gamma_points = out.gamma;
  gamma_points.coords.clear();
  cert.checks.push_back(patch_check("Lambda_W' = Gamma", truncation, out.window, 0,
                                    scheme.project_points(truncation, out.window), gamma_points));
  CertificateCheck chain{"inclusion chain", truncation, out.window, 0, false, {}};
  chain.passed = inclusion_chain_holds(witness.open_part, witness.closed_part, out.window);
  cert.checks.push_back(std::move(chain));
  return out;
}

bool inclusion_chain_holds(const Window& u, const Window& w, const Window& w_prime) {
  const Window wi = w_prime.interior();
  const Window wc = w_prime.closure();
  return u.interior().subset_of(wi) && wi.subset_of(w_prime) && w_prime.subset_of(wc) && wc.subset_of(w.closure());
}

bool reverify(const Translation& t) {
  for (const auto& c : t.certificate.checks) {
    if (c.name == "(a, b) in L'") {
      const LatticePoint p = t.scheme.point(t.a_coords);
      if (!equal(p.x, t.a) || !t.scheme.space().equal(p.star, t.b)) return false;
      continue;
    }
    const Patch lhs = shifted_patch(t, c.box, c.window, c.shift);
    if (!verify_equality(lhs, t.scheme.project_points(c.box, lift_window(t, c.window, c.shift))).holds) return false;
  }
  return true;
}

bool reverify(const InjectiveExtension& e) {
  const std::size_t torus_index = e.scheme.space().factors().size() - 1;
  const InternalSpace torus(std::vector<Factor>{e.scheme.space().factors()[torus_index]});
  for (const auto& c : e.certificate.checks) {
    if (c.window.space() == e.scheme.space()) {
      if (star_collision(e.scheme, c.box.hi[0].floor())) return false;
      continue;
    }
    if (!verify_equality(e.original.project_points(c.box, c.window),
                         e.scheme.project_points(c.box, Window::product(c.window, Window::full(torus))))
             .holds)
      return false;
  }
  return true;
}

bool reverify(const CutProjectScheme& scheme, const AlmostModel& a) {
  Patch gamma = a.gamma;
  gamma.coords.clear();
  return verify_equality(scheme.project_points(a.gamma.box, a.window), gamma).holds;
}

}  // namespace cutproject
