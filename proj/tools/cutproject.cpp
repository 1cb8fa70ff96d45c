// cutproject: generate model-set patches, transform schemes and verify their
// properties from the command line.
//
// Exit codes: 0 pass, 1 verification failure, 2 input error, 3 resource limit
// (enumeration overflow), 4 certification failure.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "cutproject/analysis.hpp"
#include "cutproject/error.hpp"
#include "cutproject/hull.hpp"
#include "cutproject/report.hpp"
#include "cutproject/serialize.hpp"
#include "cutproject/substitution.hpp"
#include "cutproject/transforms.hpp"

using namespace cutproject;

namespace {

enum ExitCode { kPass = 0, kVerifyFail = 1, kInput = 2, kResource = 3, kCertification = 4 };

struct RunConfig {
  std::string scheme = "fibonacci";
  std::string window;
  std::string box;
  std::string mode = "exact";
  double tol = 0;  // 0: the command's own default
  std::string out;
  std::string format = "json";
  unsigned seed = 1;
  long long bound = 0;  // 0: the command's own default
};

// ------------------------------------------------------------------ input

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Json parse_json(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InvalidInput("malformed JSON in " + origin + ": " + e.what());
  }
}

// A file path, inline JSON, or a bare string (interval or box shorthand).
Json json_argument(const std::string& arg) {
  if (std::filesystem::is_regular_file(arg)) return parse_json(read_file(arg), arg);
  if (!arg.empty() && (arg.front() == '{' || arg.front() == '"')) return parse_json(arg, "argument");
  return Json(arg);
}

// Splits at commas outside parentheses.
std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> parts;
  std::string cur;
  int depth = 0;
  for (char c : text) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) parts.push_back(cur);
  return parts;
}

ScalarVec parse_scalars(const std::string& text) {
  ScalarVec v;
  for (const auto& p : split_list(text)) v.push_back(Scalar::parse(p));
  if (v.empty()) throw InvalidInput("empty scalar list");
  return v;
}

// "1,2,5" or "lo:hi:step".
std::vector<long long> parse_ints(const std::string& text) {
  std::vector<long long> v;
  try {
    if (text.find(':') != std::string::npos) {
      long long lo = 0, hi = 0, step = 1;
      char c1 = 0, c2 = 0;
      std::istringstream in(text);
      if (!(in >> lo >> c1 >> hi >> c2 >> step) || step <= 0) throw InvalidInput("bad range " + text);
      for (long long x = lo; x <= hi; x += step) v.push_back(x);
    } else {
      for (const auto& p : split_list(text)) v.push_back(std::stoll(p));
    }
  } catch (const std::logic_error&) {
    throw InvalidInput("bad integer list " + text);
  }
  if (v.empty()) throw InvalidInput("empty integer list " + text);
  return v;
}

HPoint float_point(const HPoint& h) {
  HPoint out = h;
  for (auto& f : out.factors) {
    if (auto* r = std::get_if<RealCoord>(&f.v))
      for (auto& x : r->x) x = x.to_float();
    if (auto* t = std::get_if<TorusCoord>(&f.v))
      for (auto& x : t->u) x = x.to_float();
    if (auto* w = std::get_if<TwistedCoord>(&f.v)) w->base = float_point(w->base);
  }
  return out;
}

CutProjectScheme load_scheme(const RunConfig& cfg) {
  CutProjectScheme s;
  if (cfg.scheme == "fibonacci") {
    s = CutProjectScheme::fibonacci();
  } else {
    try {
      s = scheme_from_json(parse_json(read_file(cfg.scheme), cfg.scheme));
    } catch (const Json::exception& e) {
      throw InvalidInput(cfg.scheme + ": " + e.what());
    }
  }
  if (cfg.mode == "exact") return s;
  std::vector<Generator> gens = s.generators();
  for (auto& g : gens) {
    for (auto& x : g.g) x = x.to_float();
    g.h = float_point(g.h);
  }
  return CutProjectScheme(s.dim(), s.space(), std::move(gens), s.injective_projection());
}

Window load_window(const std::string& arg, const InternalSpace& space) {
  if (arg.empty()) return default_window(space);
  try {
    return window_from_json(json_argument(arg), space);
  } catch (const Json::exception& e) {
    throw InvalidInput("window: " + std::string(e.what()));
  }
}

Box load_box(const std::string& arg, std::size_t d, const Box& fallback) {
  if (arg.empty()) return fallback;
  Box b;
  try {
    b = box_from_json(json_argument(arg));
  } catch (const Json::exception& e) {
    throw InvalidInput("box: " + std::string(e.what()));
  }
  if (b.dim() != d) throw InvalidInput("box dimension " + std::to_string(b.dim()) + " differs from " + std::to_string(d));
  return b;
}

Box load_box(const RunConfig& cfg, std::size_t d) { return load_box(cfg.box, d, default_box(d)); }

// Witness file: {"open": W, "closed": W, "gamma": W, "include": [n..], "exclude": [n..]}.
// Gamma holds the lattice points with star in "gamma" (default: closed),
// plus "include", minus "exclude".
AlmostModelSetWitness load_witness(const std::string& arg, const InternalSpace& space) {
  const Json j = json_argument(arg);
  try {
    const Window open = window_from_json(j.at("open"), space);
    const Window closed = window_from_json(j.at("closed"), space);
    const Window gamma = j.contains("gamma") ? window_from_json(j.at("gamma"), space) : closed;
    std::set<IntVec> include, exclude;
    if (j.contains("include")) include = j.at("include").get<std::set<IntVec>>();
    if (j.contains("exclude")) exclude = j.at("exclude").get<std::set<IntVec>>();
    return {open, closed, [=](const LatticePoint& lp) {
              if (exclude.count(lp.n)) return false;
              return include.count(lp.n) > 0 || gamma.contains(lp.star);
            }};
  } catch (const Json::exception& e) {
    throw InvalidInput("witness: " + std::string(e.what()));
  }
}

AlmostModelSetWitness default_witness(const Window& w) {
  return {w.interior(), w.closure(), [w](const LatticePoint& lp) { return w.contains(lp.star); }};
}

HPoint real_point(const InternalSpace& space, const ScalarVec& x) {
  if (space.factors().size() != 1 || !std::holds_alternative<RealFactor>(space.factors()[0].v))
    throw InvalidInput("targets need a real internal space");
  return HPoint{{FactorCoord{RealCoord{x}}}};
}

// ----------------------------------------------------------------- output

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write " + path);
  out << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

int report(const RunConfig& cfg, const std::string& suite, bool passed, Json body) {
  Json j{{"suite", suite}, {"passed", passed}};
  for (auto& [k, v] : body.items()) j[k] = v;
  write_text(cfg.out, dump(j));
  return passed ? kPass : kVerifyFail;
}

// ---------------------------------------------------------------- commands

int cmd_generate(const RunConfig& cfg, bool coords) {
  const CutProjectScheme s = load_scheme(cfg);
  const Patch p = s.project_points(load_box(cfg, s.dim()), load_window(cfg.window, s.space()), coords);
  write_text(cfg.out, cfg.format == "csv" ? to_csv(p) : dump(to_json(p)));
  return kPass;
}

int cmd_oracle(const RunConfig& cfg, int fit_height) {
  const auto sys = SubstitutionSystem::fibonacci();
  const Box b = load_box(cfg, 1);
  const Patch p = fixed_point_patch(sys, iterations_to_cover(sys, b), b);
  if (fit_height <= 0) {
    write_text(cfg.out, cfg.format == "csv" ? to_csv(p) : dump(to_json(p)));
    return kPass;
  }
  const WindowFit fit = fit_half_open_window(CutProjectScheme::fibonacci(), p, fit_height);
  Json alternatives = Json::array();
  for (const auto& iv : fit.alternatives) alternatives.push_back(to_json(iv));
  write_text(cfg.out, dump(Json{{"window", to_json(Window::interval(fit.window))},
                                {"interval", to_json(fit.window)},
                                {"lo_coords", fit.lo_coords},
                                {"hi_coords", fit.hi_coords},
                                {"alternatives", alternatives},
                                {"oracle_points", p.size()}}));
  return kPass;
}

void report_failed_checks(const TransformCertificate& c) {
  for (const auto& k : c.checks)
    if (!k.passed) std::cerr << "check failed: " << k.name << " (" << k.detail << ")\n";
}

struct TransformArgs {
  std::string kind;
  std::string shift;
  std::string multiples = "1";
  bool heuristic = false;
  std::string constants;
  long long injectivity_bound = 200;
  std::string witness;
  std::string scheme_out;
  std::string window_out;
};

int cmd_transform(const RunConfig& cfg, const TransformArgs& a) {
  const CutProjectScheme s = load_scheme(cfg);
  Json art{{"kind", a.kind}, {"input", to_json(s)}};
  TransformCertificate cert;
  if (a.kind == "translate") {
    if (a.shift.empty()) throw InvalidInput("translate needs --shift");
    TranslationOptions o;
    if (cfg.bound > 0) o.bound = cfg.bound;
    o.accept_heuristic = a.heuristic;
    if (!cfg.window.empty()) o.windows = {load_window(cfg.window, s.space())};
    if (!cfg.box.empty()) o.box = load_box(cfg, s.dim());
    o.multiples = parse_ints(a.multiples);
    const ScalarVec shift = parse_scalars(a.shift);
    const Translation t = translate_cps(s, shift, o);
    art["shift"] = to_json(shift);
    art["bound"] = o.bound;
    art["heuristic"] = o.accept_heuristic;
    art["output"] = to_json(t.scheme);
    art["b"] = to_json(t.scheme.space(), t.b);
    art["m"] = t.m;
    art["b_coords"] = t.b_coords;
    if (t.twist) art["twist"] = to_json(s.space(), *t.twist);
    art["a_coords"] = t.a_coords;
    cert = t.certificate;
    if (!a.scheme_out.empty()) write_text(a.scheme_out, dump(to_json(t.scheme)));
  } else if (a.kind == "extend") {
    if (a.constants.empty()) throw InvalidInput("extend needs --constants");
    ExtensionOptions o;
    o.injectivity_bound = a.injectivity_bound;
    if (cfg.bound > 0) o.relation_bound = cfg.bound;
    if (!cfg.window.empty()) o.windows = {load_window(cfg.window, s.space())};
    if (!cfg.box.empty()) o.box = load_box(cfg, s.dim());
    std::vector<Expression> diag;
    for (const auto& c : split_list(a.constants)) diag.push_back(Expression::parse(c));
    const InjectiveExtension e = extend_injective(s, diag, o);
    Json constants = Json::array();
    for (const auto& c : diag) constants.push_back(c.text());
    art["constants"] = constants;
    art["injectivity_bound"] = o.injectivity_bound;
    art["relation_bound"] = o.relation_bound;
    art["output"] = to_json(e.scheme);
    art["generic"] = to_json(e.generic);
    cert = e.certificate;
    if (!a.scheme_out.empty()) write_text(a.scheme_out, dump(to_json(e.scheme)));
  } else {
    if (a.witness.empty()) throw InvalidInput("augment needs --witness");
    const Box trunc = load_box(cfg.box, s.dim(), Box::cube(s.dim(), Scalar(-50), Scalar(50)));
    const AlmostModel m = almost_to_model(s, load_witness(a.witness, s.space()), trunc);
    art["witness"] = json_argument(a.witness);
    art["truncation"] = to_json(trunc);
    art["window"] = to_json(m.window);
    art["gamma"] = to_json(m.gamma);
    cert = m.certificate;
    if (!a.window_out.empty()) write_text(a.window_out, dump(to_json(m.window)));
  }
  art["certificate"] = to_json(cert);
  write_text(cfg.out, dump(art));
  if (cert.passed()) return kPass;
  report_failed_checks(cert);
  return kCertification;
}

struct VerifyArgs {
  std::string suite;
  std::string n;
  std::string chi;
  std::string constants = "2^(1/3)";
  double chi_bound = 3;
  int grid = 8;
  long long injectivity_bound = 200;
  std::vector<std::string> targets;
  int random_targets = 0;
  std::string k;
  std::string probe = "[-100,100]";
  std::string radius = "20";
  std::string witness;
  std::string patch;
  std::string certificate;
};

double tol_or(const RunConfig& cfg, double fallback) { return cfg.tol > 0 ? cfg.tol : fallback; }

int verify_density(const RunConfig& cfg, const VerifyArgs& v) {
  const CutProjectScheme s = load_scheme(cfg);
  const DensityReport r = empirical_density(s, load_window(cfg.window, s.space()), parse_ints(v.n.empty() ? "50:1000:50" : v.n));
  const double tol = tol_or(cfg, 1e-3);
  bool passed = r.all_within();
  if (r.lower == r.upper) passed = passed && std::fabs(r.empirical.back() - r.lower.to_double()) < tol;
  return report(cfg, "density", passed, Json{{"tolerance", tol}, {"density", to_json(r)}});
}

int verify_fb(const RunConfig& cfg, const VerifyArgs& v) {
  const CutProjectScheme s = load_scheme(cfg);
  const Window w = load_window(cfg.window, s.space());
  const long long n = v.n.empty() ? 1000 : parse_ints(v.n).back();
  const ScalarVec chi = v.chi.empty() ? ScalarVec(s.dim(), Scalar(0)) : parse_scalars(v.chi);
  if (chi.size() != s.dim()) throw InvalidInput("character dimension differs from the direct space");
  const auto a = fourier_bohr(s, w, chi, n);
  const double density = empirical_density(s, w, {n}).empirical[0];
  const bool trivial = std::all_of(chi.begin(), chi.end(), [](const Scalar& c) { return c == Scalar(0); });
  const double tol = tol_or(cfg, trivial ? 1e-12 : 0.05);
  const bool passed = trivial ? std::abs(a - std::complex<double>(density, 0)) <= tol : std::abs(a) < tol;
  return report(cfg, "fb", passed,
                Json{{"chi", to_json(chi)}, {"n", n}, {"a_chi", {{"re", a.real()}, {"im", a.imag()}, {"abs", std::abs(a)}}},
                     {"density", density}, {"tolerance", tol}});
}

int verify_equidist(const RunConfig& cfg, const VerifyArgs& v) {
  const CutProjectScheme s = load_scheme(cfg);
  ExtensionOptions o;
  o.injectivity_bound = v.injectivity_bound;
  if (cfg.bound > 0) o.relation_bound = cfg.bound;
  std::vector<Expression> diag;
  for (const auto& c : split_list(v.constants)) diag.push_back(Expression::parse(c));
  const InjectiveExtension e = extend_injective(s, diag, o);
  const long long n = v.n.empty() ? 2000 : parse_ints(v.n).back();
  const double tol = tol_or(cfg, 0.05);
  const auto r = equidistribution_check(e.scheme, load_window(cfg.window, s.space()), v.chi_bound, n, v.grid, tol);
  return report(cfg, "equidist", r.status == EquidistributionReport::Status::Pass,
                Json{{"constants", v.constants}, {"n", n}, {"chi_bound", v.chi_bound}, {"equidistribution", to_json(r)}});
}

int verify_hull(const RunConfig& cfg, const VerifyArgs& v) {
  const CutProjectScheme s = load_scheme(cfg);
  const Window w = load_window(cfg.window, s.space());
  const AlmostModelSetWitness wit = v.witness.empty() ? default_witness(w) : load_witness(v.witness, s.space());
  const Box k = load_box(v.k, s.dim(), Box::cube(s.dim(), Scalar(-10), Scalar(10)));
  LimitPatchOptions lo;
  if (cfg.tol > 0) lo.tolerance = cfg.tol;

  std::vector<HPoint> targets;
  for (const auto& t : v.targets) targets.push_back(real_point(s.space(), parse_scalars(t)));
  std::mt19937_64 rng(cfg.seed);
  for (int i = 0; i < v.random_targets; ++i) {
    ScalarVec x;
    for (std::size_t j = 0; j < s.space().linear_dim(); ++j)
      x.push_back(Scalar::rational(static_cast<long long>(rng() % 2000001) - 1000000, 1000003));
    targets.push_back(real_point(s.space(), x));
  }

  bool passed = true;
  Json limits = Json::array();
  for (const auto& t : targets) {
    const LimitPatchReport r = limit_patch_check(s, wit, t, k, lo);
    passed = passed && r.holds();
    Json j = to_json(r);
    j["target"] = to_json(s.space(), t);
    limits.push_back(j);
  }

  const long long bound = cfg.bound > 0 ? cfg.bound : 500;
  const GenericShiftResult g = generic_shift(s, wit.open_part, wit.closed_part, bound, 12, cfg.seed);
  const auto eq = verify_equality(s.project_points(k, wit.open_part.translate(g.t)),
                                  s.project_points(k, wit.closed_part.translate(g.t)));
  passed = passed && eq.holds;
  Json rejected = Json::array();
  for (const auto& [t, n] : g.rejected) rejected.push_back(Json{{"t", to_json(s.space(), t)}, {"collision", n}});
  return report(cfg, "hull", passed,
                Json{{"k", to_json(k)},
                     {"limit_patches", limits},
                     {"generic_shift",
                      {{"t", to_json(s.space(), g.t)}, {"attempt", g.attempt}, {"bound", g.bound},
                       {"rejected", rejected}, {"equal_on_k", to_json(eq)}}}});
}

int verify_repetitivity(const RunConfig& cfg, const VerifyArgs& v) {
  const CutProjectScheme s = load_scheme(cfg);
  const Window w = load_window(cfg.window, s.space());
  std::function<Patch(const Box&)> source = [&](const Box& b) { return s.project_points(b, w); };
  Patch fixed;
  if (!v.patch.empty()) {
    fixed = patch_from_json(json_argument(v.patch));
    source = [&](const Box& b) {
      for (std::size_t i = 0; i < b.dim(); ++i)
        if (compare(b.lo[i], fixed.box.lo[i]) < 0 || compare(b.hi[i], fixed.box.hi[i]) > 0)
          throw InvalidInput("patch file does not cover the requested box");
      return fixed.restricted(b);
    };
  }
  const Box k = load_box(v.k, 1, Box::cube(1, Scalar(0), Scalar(5)));
  const Box probe = load_box(v.probe, 1, Box::cube(1, Scalar(-100), Scalar(100)));
  const Scalar radius = Scalar::parse(v.radius);
  const RepetitivityReport r = repetitivity_check(source, k, radius, probe);
  return report(cfg, "repetitivity", r.passed,
                Json{{"k", to_json(k)}, {"radius", to_json(radius)}, {"probe", to_json(probe)}, {"repetitivity", to_json(r)}});
}

int verify_theorem(const RunConfig& cfg, const VerifyArgs& v) {
  if (v.certificate.empty()) throw InvalidInput("theorem needs --certificate");
  const Json art = json_argument(v.certificate);
  if (!art.is_object()) throw InvalidInput("certificate file must hold a JSON object");
  try {
    const CutProjectScheme input = scheme_from_json(art.at("input"));
    const TransformCertificate cert = certificate_from_json(art.at("certificate"));
    const std::string kind = art.at("kind").get<std::string>();
    bool recorded = cert.passed() && cert.input_id == input.id();
    bool rebuilt = true, replayed = false;
    if (kind == "translate") {
      TranslationOptions o;
      o.bound = art.at("bound").get<long long>();
      o.accept_heuristic = art.value("heuristic", false);
      o.box = Box::cube(input.dim(), Scalar(0), Scalar(1));
      Translation t = translate_cps(input, scalar_vec_from_json(art.at("shift")), o);
      rebuilt = t.scheme.id() == cert.output_id;
      t.certificate = cert;
      replayed = rebuilt && reverify(t);
    } else if (kind == "extend") {
      ExtensionOptions o;
      o.injectivity_bound = art.at("injectivity_bound").get<long long>();
      o.relation_bound = art.at("relation_bound").get<long long>();
      o.box = Box::cube(input.dim(), Scalar(0), Scalar(1));
      std::vector<Expression> diag;
      for (const auto& c : art.at("constants")) diag.push_back(Expression::parse(c.get<std::string>()));
      InjectiveExtension e = extend_injective(input, diag, o);
      rebuilt = e.scheme.id() == cert.output_id;
      e.certificate = cert;
      replayed = rebuilt && reverify(e);
    } else if (kind == "augment") {
      const AlmostModel m{window_from_json(art.at("window"), input.space()), patch_from_json(art.at("gamma")), cert};
      replayed = reverify(input, m);
    } else {
      throw InvalidInput("unknown artifact kind " + kind);
    }
    return report(cfg, "theorem", recorded && rebuilt && replayed,
                  Json{{"kind", kind}, {"certificate_kind", to_string(cert.kind)}, {"checks", cert.checks.size()},
                       {"recorded_passed", recorded}, {"scheme_rebuilt", rebuilt}, {"replayed", replayed}});
  } catch (const Json::exception& e) {
    throw InvalidInput(std::string("certificate file: ") + e.what());
  }
}

int cmd_verify(const RunConfig& cfg, const VerifyArgs& v) {
  if (v.suite == "density") return verify_density(cfg, v);
  if (v.suite == "fb") return verify_fb(cfg, v);
  if (v.suite == "equidist") return verify_equidist(cfg, v);
  if (v.suite == "hull") return verify_hull(cfg, v);
  if (v.suite == "repetitivity") return verify_repetitivity(cfg, v);
  return verify_theorem(cfg, v);
}

void add_common(CLI::App* app, RunConfig& cfg) {
  app->add_option("--scheme", cfg.scheme, "Scheme JSON file, or \"fibonacci\"")->capture_default_str();
  app->add_option("--window", cfg.window, "Window JSON file, inline JSON or interval such as \"(-1, tau-1]\"");
  app->add_option("--box", cfg.box, "Box such as [0,20] or [0,5]x[0,5]");
  app->add_option("--mode", cfg.mode, "Arithmetic of the scheme data")
      ->check(CLI::IsMember({"exact", "float"}))
      ->capture_default_str();
  app->add_option("--tol", cfg.tol, "Tolerance of the command's check")->check(CLI::PositiveNumber);
  app->add_option("--out", cfg.out, "Output file (default stdout)");
  app->add_option("--format", cfg.format, "Patch format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  app->add_option("--seed", cfg.seed, "Seed for randomized choices")->capture_default_str();
  app->add_option("--bound", cfg.bound, "Relation or enumeration bound")->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cut-and-project schemes: patches, scheme transformations and property checks"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::function<int()> action;

  bool coords = false;
  auto* gen = app.add_subcommand("generate", "Write the patch Lambda_W within a box");
  add_common(gen, cfg);
  gen->add_flag("--coords", coords, "Include lattice coordinates (JSON only)");
  gen->callback([&] { action = [&] { return cmd_generate(cfg, coords); }; });

  int fit_height = 0;
  auto* orc = app.add_subcommand("oracle", "Fixed point of the Fibonacci substitution within a box");
  add_common(orc, cfg);
  orc->add_option("--fit", fit_height, "Fit a half-open window with endpoint height up to this value");
  orc->callback([&] { action = [&] { return cmd_oracle(cfg, fit_height); }; });

  TransformArgs ta;
  auto* tr = app.add_subcommand("transform", "Build a transformed scheme with its certificate");
  add_common(tr, cfg);
  tr->add_option("kind", ta.kind, "translate | extend | augment")
      ->required()
      ->check(CLI::IsMember({"translate", "extend", "augment"}));
  tr->add_option("--shift", ta.shift, "Translation vector a, comma separated");
  tr->add_option("--multiples", ta.multiples, "Multiples n checked for n a + Lambda_W")->capture_default_str();
  tr->add_flag("--accept-heuristic", ta.heuristic, "Accept float-mode commensurability answers");
  tr->add_option("--constants", ta.constants, "Diagonal entries of D, comma separated");
  tr->add_option("--injectivity-bound", ta.injectivity_bound, "Coordinate bound for star injectivity")
      ->capture_default_str();
  tr->add_option("--witness", ta.witness, "Almost-model-set witness JSON");
  tr->add_option("--scheme-out", ta.scheme_out, "Also write the new scheme here");
  tr->add_option("--window-out", ta.window_out, "Also write the augmented window here");
  tr->callback([&] { action = [&] { return cmd_transform(cfg, ta); }; });

  VerifyArgs va;
  auto* ver = app.add_subcommand("verify", "Run a verification suite and write a JSON report");
  add_common(ver, cfg);
  ver->add_option("suite", va.suite, "density | fb | equidist | hull | repetitivity | theorem")
      ->required()
      ->check(CLI::IsMember({"density", "fb", "equidist", "hull", "repetitivity", "theorem"}));
  ver->add_option("--n", va.n, "Radius or radii: 1000, 50,100 or 50:1000:50");
  ver->add_option("--chi", va.chi, "Character, comma separated");
  ver->add_option("--constants", va.constants, "Torus diagonal for equidist")->capture_default_str();
  ver->add_option("--chi-bound", va.chi_bound, "Largest character norm for equidist")->capture_default_str();
  ver->add_option("--grid", va.grid, "Cells per torus axis for equidist")->capture_default_str();
  ver->add_option("--injectivity-bound", va.injectivity_bound, "Coordinate bound for star injectivity")
      ->capture_default_str();
  ver->add_option("--target", va.targets, "Internal target t for hull, comma separated (repeatable)");
  ver->add_option("--random-targets", va.random_targets, "Number of seeded random hull targets");
  ver->add_option("--k", va.k, "Observation box K");
  ver->add_option("--probe", va.probe, "Probe box for repetitivity")->capture_default_str();
  ver->add_option("--radius", va.radius, "Return radius R for repetitivity")->capture_default_str();
  ver->add_option("--witness", va.witness, "Almost-model-set witness JSON for hull");
  ver->add_option("--patch", va.patch, "Patch JSON checked instead of the scheme (repetitivity)");
  ver->add_option("--certificate", va.certificate, "Transform output checked by the theorem suite");
  ver->callback([&] { action = [&] { return cmd_verify(cfg, va); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kInput;
  }

  try {
    return action();
  } catch (const CertificationFailure& e) {
    std::cerr << "certification failed: " << e.what() << "\nwitness: " << e.witness() << "\n";
    return kCertification;
  } catch (const CommensurabilityUnknown& e) {
    std::cerr << "certification failed: " << e.what() << "\n";
    return kCertification;
  } catch (const EnumerationOverflow& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return kResource;
  } catch (const std::bad_alloc&) {
    std::cerr << "resource limit: out of memory\n";
    return kResource;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  }
}
