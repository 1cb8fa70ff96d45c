#include "cutproject/serialize.hpp"

#include <cstdint>
#include <cstdio>
#include <sstream>

#include "cutproject/error.hpp"

namespace cutproject {

namespace {

[[noreturn]] void bad(const std::string& what) { throw InvalidInput("JSON: " + what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

mpq_class parse_rational(const Json& j) {
  if (j.is_number_integer()) return mpq_class(static_cast<long>(j.get<long long>()));
  if (!j.is_string()) bad("rational must be a string \"p/q\"");
  mpq_class q;
  if (q.set_str(j.get<std::string>(), 10) != 0) bad("malformed rational " + j.get<std::string>());
  q.canonicalize();
  return q;
}

std::string rational_text(const mpq_class& q) { return q.get_str(); }

std::string double_text(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

// ------------------------------------------------------------------ scalars

Json to_json(const Scalar& x) {
  Json j;
  if (!x.is_exact()) {
    j["type"] = "float";
    j["value"] = x.to_double();
    j["tol"] = x.tolerance();
    return j;
  }
  const Surd& s = x.exact();
  if (s.is_rational()) {
    j["type"] = "rat";
    j["value"] = rational_text(s.rational_part());
    return j;
  }
  j["type"] = "quad";
  const auto& terms = s.terms();
  const bool single = terms.size() == 1 || (terms.size() == 2 && terms[0].radicand == 1);
  if (single) {
    j["a"] = rational_text(s.rational_part());
    j["b"] = rational_text(terms.back().coef);
    j["D"] = terms.back().radicand;
    return j;
  }
  Json t = Json::array();
  for (const auto& term : terms) t.push_back(Json{{"radicand", term.radicand}, {"coef", rational_text(term.coef)}});
  j["terms"] = t;
  return j;
}

Scalar scalar_from_json(const Json& j) {
  if (j.is_string()) return Scalar::parse(j.get<std::string>());
  if (j.is_number_integer()) return Scalar(j.get<long long>());
  if (j.is_number()) return Scalar::approx(j.get<double>());
  const std::string type = field(j, "type").get<std::string>();
  if (type == "rat") return Scalar(parse_rational(field(j, "value")));
  if (type == "float") {
    const double tol = j.contains("tol") ? j.at("tol").get<double>() : kDefaultTolerance;
    return Scalar::approx(field(j, "value").get<double>(), tol);
  }
  if (type != "quad") bad("unknown scalar type " + type);
  if (j.contains("terms")) {
    Scalar x(0);
    for (const auto& t : j.at("terms"))
      x += Scalar(parse_rational(field(t, "coef"))) *
           Scalar::sqrt(static_cast<long long>(field(t, "radicand").get<std::uint64_t>()));
    return x;
  }
  const long long d = field(j, "D").get<long long>();
  if (d < 1) bad("quadratic radicand must be positive");
  return Scalar(parse_rational(field(j, "a"))) + Scalar(parse_rational(field(j, "b"))) * Scalar::sqrt(d);
}

Json to_json(const ScalarVec& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

ScalarVec scalar_vec_from_json(const Json& j) {
  if (!j.is_array()) bad("expected an array of scalars");
  ScalarVec v;
  for (const auto& x : j) v.push_back(scalar_from_json(x));
  return v;
}

// ----------------------------------------------------------- internal space

Json to_json(const InternalSpace& space) {
  Json factors = Json::array();
  for (const auto& f : space.factors()) {
    if (const auto* r = std::get_if<RealFactor>(&f.v)) {
      factors.push_back(Json{{"kind", "real"}, {"dim", r->dim}});
    } else if (const auto* z = std::get_if<IntegerFactor>(&f.v)) {
      factors.push_back(Json{{"kind", "integer"}, {"rank", z->rank}});
    } else if (const auto* c = std::get_if<CyclicFactor>(&f.v)) {
      factors.push_back(Json{{"kind", "cyclic"}, {"q", c->q}});
    } else if (const auto* t = std::get_if<TorusFactor>(&f.v)) {
      Json basis = Json::array();
      for (const auto& row : t->basis) basis.push_back(to_json(row));
      factors.push_back(Json{{"kind", "torus"}, {"dim", t->dim}, {"basis", basis}});
    } else {
      const auto& tw = std::get<TwistedFactor>(f.v);
      factors.push_back(Json{{"kind", "twisted"},
                             {"m", tw.m},
                             {"base", to_json(*tw.base)},
                             {"twist", to_json(*tw.base, tw.twist)}});
    }
  }
  return Json{{"factors", factors}};
}

InternalSpace space_from_json(const Json& j) {
  std::vector<Factor> factors;
  const Json& list = field(j, "factors");
  if (!list.is_array()) bad("factors must be an array");
  for (const auto& f : list) {
    const std::string kind = field(f, "kind").get<std::string>();
    if (kind == "real") {
      factors.push_back(Factor{RealFactor{f.value("dim", 1)}});
    } else if (kind == "integer") {
      factors.push_back(Factor{IntegerFactor{f.value("rank", 1)}});
    } else if (kind == "cyclic") {
      factors.push_back(Factor{CyclicFactor{field(f, "q").get<long long>()}});
    } else if (kind == "torus") {
      Matrix basis;
      for (const auto& row : field(f, "basis")) basis.push_back(scalar_vec_from_json(row));
      const InternalSpace t = InternalSpace::torus(basis);
      factors.push_back(t.factors()[0]);
    } else if (kind == "twisted") {
      const InternalSpace base = space_from_json(field(f, "base"));
      const HPoint twist = hpoint_from_json(base, field(f, "twist"));
      const InternalSpace t = InternalSpace::twisted(base, field(f, "m").get<long long>(), twist);
      factors.push_back(t.factors()[0]);
    } else {
      bad("unknown factor kind " + kind);
    }
  }
  return InternalSpace(std::move(factors));
}

Json to_json(const InternalSpace& space, const HPoint& x) {
  space.check(x);
  Json out = Json::array();
  for (std::size_t i = 0; i < x.factors.size(); ++i) {
    const auto& c = x.factors[i].v;
    if (const auto* r = std::get_if<RealCoord>(&c)) {
      out.push_back(Json{{"x", to_json(r->x)}});
    } else if (const auto* z = std::get_if<IntCoord>(&c)) {
      out.push_back(Json{{"k", z->k}});
    } else if (const auto* q = std::get_if<CyclicCoord>(&c)) {
      out.push_back(Json{{"r", q->r}});
    } else if (const auto* t = std::get_if<TorusCoord>(&c)) {
      out.push_back(Json{{"u", to_json(t->u)}});
    } else {
      const auto& tw = std::get<TwistedCoord>(c);
      const auto& f = std::get<TwistedFactor>(space.factors()[i].v);
      out.push_back(Json{{"base", to_json(*f.base, tw.base)}, {"r", tw.r}});
    }
  }
  return out;
}

HPoint hpoint_from_json(const InternalSpace& space, const Json& j) {
  if (!j.is_array() || j.size() != space.factors().size()) bad("point must list one entry per factor");
  HPoint x;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto& f = space.factors()[i].v;
    const Json& c = j[i];
    if (std::holds_alternative<RealFactor>(f)) {
      x.factors.push_back({RealCoord{scalar_vec_from_json(field(c, "x"))}});
    } else if (std::holds_alternative<IntegerFactor>(f)) {
      x.factors.push_back({IntCoord{field(c, "k").get<IntVec>()}});
    } else if (std::holds_alternative<CyclicFactor>(f)) {
      x.factors.push_back({CyclicCoord{field(c, "r").get<long long>()}});
    } else if (const auto* t = std::get_if<TorusFactor>(&f)) {
      if (c.contains("x")) {
        x.factors.push_back({InternalSpace::torus_point(*t, scalar_vec_from_json(c.at("x")))});
      } else {
        x.factors.push_back({TorusCoord{scalar_vec_from_json(field(c, "u"))}});
      }
    } else {
      const auto& tw = std::get<TwistedFactor>(f);
      x.factors.push_back({TwistedCoord{hpoint_from_json(*tw.base, field(c, "base")), field(c, "r").get<long long>()}});
    }
  }
  space.check(x);
  return space.reduce(x);
}

// -------------------------------------------------------------- boxes, etc.

Json to_json(const Box& b) { return Json{{"lo", to_json(b.lo)}, {"hi", to_json(b.hi)}}; }

Box box_from_json(const Json& j) {
  if (j.is_string()) return Box::parse(j.get<std::string>());
  Box b{scalar_vec_from_json(field(j, "lo")), scalar_vec_from_json(field(j, "hi"))};
  if (b.lo.size() != b.hi.size() || b.lo.empty()) bad("box corners must have equal positive dimension");
  for (std::size_t i = 0; i < b.dim(); ++i)
    if (compare(b.lo[i], b.hi[i]) > 0) bad("box lower corner exceeds upper corner");
  return b;
}

Json to_json(const Interval& iv) {
  return Json{{"lo", to_json(iv.lo)}, {"hi", to_json(iv.hi)}, {"lo_closed", iv.lo_closed}, {"hi_closed", iv.hi_closed}};
}

Interval interval_from_json(const Json& j) {
  if (j.is_string()) return Interval::parse(j.get<std::string>());
  Interval iv{scalar_from_json(field(j, "lo")), scalar_from_json(field(j, "hi")), field(j, "lo_closed").get<bool>(),
              field(j, "hi_closed").get<bool>()};
  if (compare(iv.lo, iv.hi) > 0) bad("interval endpoints out of order");
  return iv;
}

// ------------------------------------------------------------------ windows

namespace {

Json boxes_json(const Window& w) {
  Json boxes = Json::array();
  for (const auto& b : w.boxes()) {
    Json axes = Json::array();
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (w.space().axes()[i].continuous()) {
        Json ivs = Json::array();
        for (const auto& iv : b[i].intervals) ivs.push_back(to_json(iv));
        axes.push_back(Json{{"intervals", ivs}});
      } else {
        axes.push_back(Json{{"values", b[i].values}});
      }
    }
    boxes.push_back(axes);
  }
  return boxes;
}

std::vector<FlatBox> boxes_from(const Json& j) {
  std::vector<FlatBox> boxes;
  if (!j.is_array()) bad("window boxes must be an array");
  for (const auto& b : j) {
    FlatBox box;
    for (const auto& a : b) {
      AxisSet s;
      if (a.contains("intervals"))
        for (const auto& iv : a.at("intervals")) s.intervals.push_back(interval_from_json(iv));
      if (a.contains("values")) s.values = a.at("values").get<IntVec>();
      box.push_back(std::move(s));
    }
    boxes.push_back(std::move(box));
  }
  return boxes;
}

}  // namespace

Json to_json(const Window& w) {
  if (w.is_augmented()) {
    const auto& a = w.augmentation();
    Json stars = Json::array();
    for (const auto& s : a.stars) stars.push_back(to_json(w.space(), s));
    Json j{{"kind", "augmented"},
           {"space", to_json(w.space())},
           {"open_part", to_json(*a.open_part)},
           {"stars", stars},
           {"envelope", to_json(*a.envelope)}};
    if (a.truncation) j["truncation"] = to_json(*a.truncation);
    return j;
  }
  return Json{{"kind", "boxes"}, {"space", to_json(w.space())}, {"boxes", boxes_json(w)}};
}

Window window_from_json(const Json& j, const InternalSpace& space) {
  if (j.is_string()) {
    if (!(space == InternalSpace::real(1))) bad("interval shorthand needs a one-dimensional real space");
    return Window::interval(Interval::parse(j.get<std::string>()));
  }
  if (j.contains("space") && !(space_from_json(j.at("space")) == space)) bad("window lives in a different space");
  const std::string kind = j.value("kind", "boxes");
  if (kind == "augmented") {
    std::vector<HPoint> stars;
    for (const auto& s : field(j, "stars")) stars.push_back(hpoint_from_json(space, s));
    std::optional<Box> trunc;
    if (j.contains("truncation")) trunc = box_from_json(j.at("truncation"));
    return Window::augmented(window_from_json(field(j, "open_part"), space), stars,
                             window_from_json(field(j, "envelope"), space), trunc);
  }
  if (kind != "boxes") bad("unknown window kind " + kind);
  return Window(space, boxes_from(field(j, "boxes")));
}

Window window_from_json(const Json& j) {
  if (j.is_string()) return Window::interval(Interval::parse(j.get<std::string>()));
  return window_from_json(j, space_from_json(field(j, "space")));
}

// ------------------------------------------------------------------ schemes

Json to_json(const CutProjectScheme& s) {
  Json gens = Json::array();
  for (const auto& g : s.generators()) gens.push_back(Json{{"g", to_json(g.g)}, {"h", to_json(s.space(), g.h)}});
  Json j{{"d", s.dim()}, {"H", to_json(s.space())}, {"generators", gens}};
  if (!s.injective_projection()) j["require_injective"] = false;
  return j;
}

CutProjectScheme scheme_from_json(const Json& j) {
  const InternalSpace space = space_from_json(field(j, "H"));
  std::vector<Generator> gens;
  for (const auto& g : field(j, "generators"))
    gens.push_back(Generator{scalar_vec_from_json(field(g, "g")), hpoint_from_json(space, field(g, "h"))});
  return CutProjectScheme(field(j, "d").get<std::size_t>(), space, std::move(gens), j.value("require_injective", true));
}

std::string CutProjectScheme::id() const { return fnv1a_hex(to_json(*this).dump()); }

// ------------------------------------------------------------------ patches

Json to_json(const Patch& p) {
  Json pts = Json::array();
  for (const auto& x : p.points) pts.push_back(to_json(x));
  Json j{{"scheme_id", p.scheme_id}, {"box", to_json(p.box)}, {"count", p.size()}, {"points", pts}};
  if (p.has_coords()) j["coords"] = p.coords;
  return j;
}

Patch patch_from_json(const Json& j) {
  Patch p;
  p.scheme_id = j.value("scheme_id", "");
  p.box = box_from_json(field(j, "box"));
  for (const auto& x : field(j, "points")) p.points.push_back(scalar_vec_from_json(x));
  if (j.contains("coords")) p.coords = j.at("coords").get<std::vector<IntVec>>();
  if (p.has_coords() && p.coords.size() != p.points.size()) bad("coords and points differ in length");
  return p;
}

std::string to_csv(const Patch& p) {
  std::ostringstream out;
  const std::size_t d = p.box.dim();
  for (std::size_t i = 0; i < d; ++i) out << (i ? "," : "") << "x" << i;
  for (std::size_t i = 0; i < d; ++i) out << ",exact" << i;
  out << '\n';
  for (const auto& x : p.points) {
    for (std::size_t i = 0; i < d; ++i) out << (i ? "," : "") << double_text(x[i].to_double());
    for (std::size_t i = 0; i < d; ++i) out << ",\"" << x[i].to_string() << '"';
    out << '\n';
  }
  return out.str();
}

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace cutproject
