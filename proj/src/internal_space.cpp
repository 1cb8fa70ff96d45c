#include "cutproject/internal_space.hpp"

#include <cassert>

#include "cutproject/error.hpp"

namespace cutproject {

namespace {

template <class T>
const T& as(const FactorCoord& c, const char* what) {
  const T* p = std::get_if<T>(&c.v);
  if (p == nullptr) throw InvalidInput(std::string("coordinate does not match factor: expected ") + what);
  return *p;
}

Scalar reduce_unit(const Scalar& x) {
  Scalar r = x - Scalar(x.floor());
  if (!r.is_exact() && (r.sign() == 0 || compare(r, Scalar(1)) == 0)) return Scalar::approx(0.0, r.tolerance());
  return r;
}

}  // namespace

InternalSpace::InternalSpace(std::vector<Factor> factors) : factors_(std::move(factors)) {
  for (const auto& f : factors_) {
    if (const auto* r = std::get_if<RealFactor>(&f.v)) {
      if (r->dim < 1) throw InvalidInput("real factor dimension must be positive");
    } else if (const auto* z = std::get_if<IntegerFactor>(&f.v)) {
      if (z->rank < 1) throw InvalidInput("integer factor rank must be positive");
    } else if (const auto* c = std::get_if<CyclicFactor>(&f.v)) {
      if (c->q < 2) throw InvalidInput("cyclic factor order must be at least 2");
    } else if (const auto* t = std::get_if<TorusFactor>(&f.v)) {
      if (t->dim < 1 || t->basis.size() != static_cast<std::size_t>(t->dim))
        throw InvalidInput("torus basis must be a square matrix of the torus dimension");
      if (t->volume.is_zero()) throw InvalidInput("torus basis is singular");
    } else {
      const auto& tw = std::get<TwistedFactor>(f.v);
      if (tw.m < 1) throw InvalidInput("twist order m must be at least 1");
      if (!tw.base) throw InvalidInput("twisted factor without base");
      if (tw.base->has_twist()) throw InvalidInput("nested twisted extensions are not supported");
      tw.base->check(tw.twist);
    }
  }
  build_axes();
}

InternalSpace InternalSpace::real(int dim) { return InternalSpace({Factor{RealFactor{dim}}}); }
InternalSpace InternalSpace::integers(int rank) { return InternalSpace({Factor{IntegerFactor{rank}}}); }
InternalSpace InternalSpace::cyclic(long long q) { return InternalSpace({Factor{CyclicFactor{q}}}); }

InternalSpace InternalSpace::torus(const Matrix& basis) {
  TorusFactor t;
  t.dim = static_cast<int>(basis.size());
  for (const auto& row : basis)
    if (row.size() != basis.size()) throw InvalidInput("torus basis must be square");
  t.basis = basis;
  const auto inv = inverse(basis);
  if (!inv) throw InvalidInput("torus basis is singular");
  t.basis_inverse = *inv;
  t.volume = determinant(basis).abs();
  return InternalSpace({Factor{t}});
}

InternalSpace InternalSpace::twisted(const InternalSpace& base, long long m, const HPoint& twist) {
  TwistedFactor t;
  t.base = std::make_shared<const InternalSpace>(base);
  t.m = m;
  t.twist = base.reduce(twist);
  return InternalSpace({Factor{t}});
}

InternalSpace InternalSpace::product(const InternalSpace& other) const {
  std::vector<Factor> f = factors_;
  f.insert(f.end(), other.factors_.begin(), other.factors_.end());
  return InternalSpace(std::move(f));
}

bool InternalSpace::has_twist() const {
  for (const auto& f : factors_)
    if (std::holds_alternative<TwistedFactor>(f.v)) return true;
  return false;
}

bool InternalSpace::has_torus() const {
  for (const auto& f : factors_) {
    if (std::holds_alternative<TorusFactor>(f.v)) return true;
    if (const auto* t = std::get_if<TwistedFactor>(&f.v); t && t->base->has_torus()) return true;
  }
  return false;
}

bool InternalSpace::has_cyclic() const {
  for (const auto& f : factors_) {
    if (std::holds_alternative<CyclicFactor>(f.v)) return true;
    if (const auto* t = std::get_if<TwistedFactor>(&f.v); t && t->base->has_cyclic()) return true;
  }
  return false;
}

HPoint InternalSpace::zero() const {
  HPoint p;
  for (const auto& f : factors_) {
    if (const auto* r = std::get_if<RealFactor>(&f.v)) {
      p.factors.push_back({RealCoord{ScalarVec(r->dim, Scalar(0))}});
    } else if (const auto* z = std::get_if<IntegerFactor>(&f.v)) {
      p.factors.push_back({IntCoord{IntVec(z->rank, 0)}});
    } else if (std::holds_alternative<CyclicFactor>(f.v)) {
      p.factors.push_back({CyclicCoord{0}});
    } else if (const auto* t = std::get_if<TorusFactor>(&f.v)) {
      p.factors.push_back({TorusCoord{ScalarVec(t->dim, Scalar(0))}});
    } else {
      const auto& tw = std::get<TwistedFactor>(f.v);
      p.factors.push_back({TwistedCoord{tw.base->zero(), 0}});
    }
  }
  return p;
}

void InternalSpace::check(const HPoint& a) const {
  if (a.factors.size() != factors_.size()) throw InvalidInput("point has wrong number of factors");
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    const auto& f = factors_[i];
    const auto& c = a.factors[i];
    if (const auto* r = std::get_if<RealFactor>(&f.v)) {
      if (as<RealCoord>(c, "real").x.size() != static_cast<std::size_t>(r->dim))
        throw InvalidInput("real coordinate has wrong dimension");
    } else if (const auto* z = std::get_if<IntegerFactor>(&f.v)) {
      if (as<IntCoord>(c, "integer").k.size() != static_cast<std::size_t>(z->rank))
        throw InvalidInput("integer coordinate has wrong rank");
    } else if (std::holds_alternative<CyclicFactor>(f.v)) {
      as<CyclicCoord>(c, "cyclic");
    } else if (const auto* t = std::get_if<TorusFactor>(&f.v)) {
      if (as<TorusCoord>(c, "torus").u.size() != static_cast<std::size_t>(t->dim))
        throw InvalidInput("torus coordinate has wrong dimension");
    } else {
      const auto& tw = std::get<TwistedFactor>(f.v);
      tw.base->check(as<TwistedCoord>(c, "twisted").base);
    }
  }
}

HPoint InternalSpace::reduce(HPoint a) const {
  check(a);
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    const auto& f = factors_[i];
    auto& c = a.factors[i];
    if (const auto* cf = std::get_if<CyclicFactor>(&f.v)) {
      auto& r = std::get<CyclicCoord>(c.v).r;
      r = floor_mod(r, cf->q);
    } else if (std::holds_alternative<TorusFactor>(f.v)) {
      for (auto& u : std::get<TorusCoord>(c.v).u) u = reduce_unit(u);
    } else if (const auto* tw = std::get_if<TwistedFactor>(&f.v)) {
      auto& t = std::get<TwistedCoord>(c.v);
      t = twisted_point(*tw, tw->base->reduce(t.base), t.r);
    }
  }
  return a;
}

TorusCoord InternalSpace::torus_point(const TorusFactor& f, const ScalarVec& x) {
  ScalarVec u = multiply(f.basis_inverse, x);
  for (auto& v : u) v = reduce_unit(v);
  return TorusCoord{u};
}

TwistedCoord InternalSpace::twisted_point(const TwistedFactor& f, const HPoint& h, long long n) {
  const long long s = floor_div(n, f.m);
  HPoint base = h;
  if (s != 0) base = f.base->add(base, f.base->scale(f.twist, s));
  return TwistedCoord{f.base->reduce(base), floor_mod(n, f.m)};
}

HPoint InternalSpace::add(const HPoint& a, const HPoint& b) const {
  check(a);
  check(b);
  HPoint out;
  out.factors.reserve(factors_.size());
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    const auto& f = factors_[i];
    const auto& x = a.factors[i];
    const auto& y = b.factors[i];
    if (std::holds_alternative<RealFactor>(f.v)) {
      out.factors.push_back({RealCoord{std::get<RealCoord>(x.v).x + std::get<RealCoord>(y.v).x}});
    } else if (std::holds_alternative<IntegerFactor>(f.v)) {
      IntVec k = std::get<IntCoord>(x.v).k;
      const IntVec& l = std::get<IntCoord>(y.v).k;
      for (std::size_t j = 0; j < k.size(); ++j) k[j] += l[j];
      out.factors.push_back({IntCoord{k}});
    } else if (const auto* c = std::get_if<CyclicFactor>(&f.v)) {
      out.factors.push_back(
          {CyclicCoord{floor_mod(std::get<CyclicCoord>(x.v).r + std::get<CyclicCoord>(y.v).r, c->q)}});
    } else if (std::holds_alternative<TorusFactor>(f.v)) {
      ScalarVec u = std::get<TorusCoord>(x.v).u + std::get<TorusCoord>(y.v).u;
      for (auto& v : u) v = reduce_unit(v);
      out.factors.push_back({TorusCoord{u}});
    } else {
      const auto& tw = std::get<TwistedFactor>(f.v);
      const auto& p = std::get<TwistedCoord>(x.v);
      const auto& q = std::get<TwistedCoord>(y.v);
      HPoint h = tw.base->add(p.base, q.base);
      long long r = p.r + q.r;
      if (r >= tw.m) {
        h = tw.base->add(h, tw.twist);
        r -= tw.m;
      }
      out.factors.push_back({TwistedCoord{h, r}});
    }
  }
  return out;
}

HPoint InternalSpace::negate(const HPoint& a) const {
  check(a);
  HPoint out;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    const auto& f = factors_[i];
    const auto& x = a.factors[i];
    if (std::holds_alternative<RealFactor>(f.v)) {
      out.factors.push_back({RealCoord{Scalar(-1) * std::get<RealCoord>(x.v).x}});
    } else if (std::holds_alternative<IntegerFactor>(f.v)) {
      IntVec k = std::get<IntCoord>(x.v).k;
      for (auto& v : k) v = -v;
      out.factors.push_back({IntCoord{k}});
    } else if (const auto* c = std::get_if<CyclicFactor>(&f.v)) {
      out.factors.push_back({CyclicCoord{floor_mod(-std::get<CyclicCoord>(x.v).r, c->q)}});
    } else if (std::holds_alternative<TorusFactor>(f.v)) {
      ScalarVec u = std::get<TorusCoord>(x.v).u;
      for (auto& v : u) v = reduce_unit(-v);
      out.factors.push_back({TorusCoord{u}});
    } else {
      const auto& tw = std::get<TwistedFactor>(f.v);
      const auto& p = std::get<TwistedCoord>(x.v);
      if (p.r == 0) {
        out.factors.push_back({TwistedCoord{tw.base->negate(p.base), 0}});
      } else {
        // (h, r) + (-h - b, m - r) carries to (0, 0).
        out.factors.push_back(
            {TwistedCoord{tw.base->subtract(tw.base->negate(p.base), tw.twist), tw.m - p.r}});
      }
    }
  }
  return out;
}

HPoint InternalSpace::scale(const HPoint& a, long long k) const {
  check(a);
  HPoint out;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    const auto& f = factors_[i];
    const auto& x = a.factors[i];
    if (std::holds_alternative<RealFactor>(f.v)) {
      out.factors.push_back({RealCoord{Scalar(k) * std::get<RealCoord>(x.v).x}});
    } else if (std::holds_alternative<IntegerFactor>(f.v)) {
      IntVec v = std::get<IntCoord>(x.v).k;
      for (auto& e : v) e *= k;
      out.factors.push_back({IntCoord{v}});
    } else if (const auto* c = std::get_if<CyclicFactor>(&f.v)) {
      out.factors.push_back({CyclicCoord{floor_mod(floor_mod(k, c->q) * std::get<CyclicCoord>(x.v).r, c->q)}});
    } else if (std::holds_alternative<TorusFactor>(f.v)) {
      ScalarVec u = Scalar(k) * std::get<TorusCoord>(x.v).u;
      for (auto& v : u) v = reduce_unit(v);
      out.factors.push_back({TorusCoord{u}});
    } else {
      const auto& tw = std::get<TwistedFactor>(f.v);
      const auto& p = std::get<TwistedCoord>(x.v);
      // k (h, r) = (k h, k r) modulo (b, -m).
      out.factors.push_back({twisted_point(tw, tw.base->scale(p.base, k), k * p.r)});
    }
  }
  return out;
}

int InternalSpace::compare(const HPoint& a, const HPoint& b) const {
  const FlatPoint x = flatten(a);
  const FlatPoint y = flatten(b);
  for (std::size_t i = 0; i < axes_.size(); ++i) {
    if (axes_[i].continuous()) {
      int c = cutproject::compare(x[i].x, y[i].x);
      if (c != 0 && axes_[i].kind == Axis::Kind::Circle) {
        const Scalar d = (x[i].x - y[i].x).abs();
        if (cutproject::compare(d, Scalar(1)) == 0) c = 0;
      }
      if (c != 0) return c;
    } else if (x[i].k != y[i].k) {
      return x[i].k < y[i].k ? -1 : 1;
    }
  }
  return 0;
}

bool InternalSpace::equal(const HPoint& a, const HPoint& b) const { return compare(a, b) == 0; }

std::size_t InternalSpace::linear_dim() const {
  std::size_t n = 0;
  for (const auto& f : factors_) {
    if (const auto* r = std::get_if<RealFactor>(&f.v)) {
      n += static_cast<std::size_t>(r->dim);
    } else if (const auto* z = std::get_if<IntegerFactor>(&f.v)) {
      n += static_cast<std::size_t>(z->rank);
    } else if (const auto* t = std::get_if<TwistedFactor>(&f.v)) {
      n += t->base->linear_dim();
    }
  }
  return n;
}

ScalarVec InternalSpace::linearize(const HPoint& a) const {
  check(a);
  ScalarVec out;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    const auto& f = factors_[i];
    const auto& x = a.factors[i];
    if (std::holds_alternative<RealFactor>(f.v)) {
      const auto& v = std::get<RealCoord>(x.v).x;
      out.insert(out.end(), v.begin(), v.end());
    } else if (std::holds_alternative<IntegerFactor>(f.v)) {
      for (long long k : std::get<IntCoord>(x.v).k) out.push_back(Scalar(k));
    } else if (const auto* tw = std::get_if<TwistedFactor>(&f.v)) {
      const auto& p = std::get<TwistedCoord>(x.v);
      ScalarVec h = tw->base->linearize(p.base);
      if (p.r != 0) h = h + Scalar::rational(p.r, tw->m) * tw->base->linearize(tw->twist);
      out.insert(out.end(), h.begin(), h.end());
    }
  }
  return out;
}

Scalar InternalSpace::kernel_mass() const {
  Scalar mass(1);
  for (const auto& f : factors_) {
    if (const auto* c = std::get_if<CyclicFactor>(&f.v)) {
      mass *= Scalar(c->q);
    } else if (const auto* t = std::get_if<TorusFactor>(&f.v)) {
      mass *= t->volume;
    } else if (const auto* tw = std::get_if<TwistedFactor>(&f.v)) {
      mass *= Scalar(tw->m) * tw->base->kernel_mass();
    }
  }
  return mass;
}

void InternalSpace::build_axes() {
  axes_.clear();
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    const auto& f = factors_[i];
    if (const auto* r = std::get_if<RealFactor>(&f.v)) {
      for (int j = 0; j < r->dim; ++j) axes_.push_back({Axis::Kind::Line, 0, i});
    } else if (const auto* z = std::get_if<IntegerFactor>(&f.v)) {
      for (int j = 0; j < z->rank; ++j) axes_.push_back({Axis::Kind::Integer, 0, i});
    } else if (const auto* c = std::get_if<CyclicFactor>(&f.v)) {
      axes_.push_back({Axis::Kind::Residue, c->q, i});
    } else if (const auto* t = std::get_if<TorusFactor>(&f.v)) {
      for (int j = 0; j < t->dim; ++j) axes_.push_back({Axis::Kind::Circle, 0, i});
    } else {
      const auto& tw = std::get<TwistedFactor>(f.v);
      axes_.push_back({Axis::Kind::Residue, tw.m, i});
      for (Axis a : tw.base->axes()) {
        a.factor = i;
        axes_.push_back(a);
      }
    }
  }
}

FlatPoint InternalSpace::flatten(const HPoint& a) const {
  check(a);
  FlatPoint out;
  out.reserve(axes_.size());
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    const auto& f = factors_[i];
    const auto& x = a.factors[i];
    if (std::holds_alternative<RealFactor>(f.v)) {
      for (const auto& v : std::get<RealCoord>(x.v).x) out.push_back({v, 0});
    } else if (std::holds_alternative<IntegerFactor>(f.v)) {
      for (long long k : std::get<IntCoord>(x.v).k) out.push_back({Scalar(0), k});
    } else if (std::holds_alternative<CyclicFactor>(f.v)) {
      out.push_back({Scalar(0), std::get<CyclicCoord>(x.v).r});
    } else if (std::holds_alternative<TorusFactor>(f.v)) {
      for (const auto& v : std::get<TorusCoord>(x.v).u) out.push_back({v, 0});
    } else {
      const auto& tw = std::get<TwistedFactor>(f.v);
      const auto& p = std::get<TwistedCoord>(x.v);
      out.push_back({Scalar(0), p.r});
      const FlatPoint b = tw.base->flatten(p.base);
      out.insert(out.end(), b.begin(), b.end());
    }
  }
  return out;
}

HPoint InternalSpace::unflatten(const FlatPoint& p) const {
  if (p.size() != axes_.size()) throw InvalidInput("flat point has wrong number of axes");
  HPoint out;
  std::size_t pos = 0;
  for (const auto& f : factors_) {
    if (const auto* r = std::get_if<RealFactor>(&f.v)) {
      ScalarVec x;
      for (int j = 0; j < r->dim; ++j) x.push_back(p[pos++].x);
      out.factors.push_back({RealCoord{x}});
    } else if (const auto* z = std::get_if<IntegerFactor>(&f.v)) {
      IntVec k;
      for (int j = 0; j < z->rank; ++j) k.push_back(p[pos++].k);
      out.factors.push_back({IntCoord{k}});
    } else if (std::holds_alternative<CyclicFactor>(f.v)) {
      out.factors.push_back({CyclicCoord{p[pos++].k}});
    } else if (const auto* t = std::get_if<TorusFactor>(&f.v)) {
      ScalarVec u;
      for (int j = 0; j < t->dim; ++j) u.push_back(p[pos++].x);
      out.factors.push_back({TorusCoord{u}});
    } else {
      const auto& tw = std::get<TwistedFactor>(f.v);
      const long long r = p[pos++].k;
      const std::size_t n = tw.base->axes().size();
      FlatPoint sub(p.begin() + static_cast<std::ptrdiff_t>(pos), p.begin() + static_cast<std::ptrdiff_t>(pos + n));
      pos += n;
      out.factors.push_back({TwistedCoord{tw.base->unflatten(sub), r}});
    }
  }
  return reduce(out);
}

Scalar InternalSpace::measure_scale() const {
  Scalar s(1);
  for (const auto& f : factors_) {
    if (const auto* t = std::get_if<TorusFactor>(&f.v)) {
      s *= t->volume;
    } else if (const auto* tw = std::get_if<TwistedFactor>(&f.v)) {
      s *= tw->base->measure_scale();
    }
  }
  return s;
}

std::string InternalSpace::describe() const {
  std::string s;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (i) s += " x ";
    const auto& f = factors_[i];
    if (const auto* r = std::get_if<RealFactor>(&f.v)) {
      s += r->dim == 1 ? "R" : "R^" + std::to_string(r->dim);
    } else if (const auto* z = std::get_if<IntegerFactor>(&f.v)) {
      s += z->rank == 1 ? "Z" : "Z^" + std::to_string(z->rank);
    } else if (const auto* c = std::get_if<CyclicFactor>(&f.v)) {
      s += "Z/" + std::to_string(c->q);
    } else if (const auto* t = std::get_if<TorusFactor>(&f.v)) {
      s += "T^" + std::to_string(t->dim);
    } else {
      const auto& tw = std::get<TwistedFactor>(f.v);
      s += "(" + tw.base->describe() + ") x_" + std::to_string(tw.m) + " Z/" + std::to_string(tw.m);
    }
  }
  return s.empty() ? "{0}" : s;
}

std::string InternalSpace::to_string(const HPoint& a) const {
  std::string s = "[";
  for (std::size_t i = 0; i < a.factors.size(); ++i) {
    if (i) s += "; ";
    const auto& c = a.factors[i].v;
    if (const auto* r = std::get_if<RealCoord>(&c)) {
      s += cutproject::to_string(r->x);
    } else if (const auto* z = std::get_if<IntCoord>(&c)) {
      s += cutproject::to_string(z->k);
    } else if (const auto* q = std::get_if<CyclicCoord>(&c)) {
      s += std::to_string(q->r);
    } else if (const auto* t = std::get_if<TorusCoord>(&c)) {
      s += "u" + cutproject::to_string(t->u);
    } else {
      const auto& tw = std::get<TwistedCoord>(c);
      const auto& f = std::get<TwistedFactor>(factors_[i].v);
      s += "(" + f.base->to_string(tw.base) + ", r=" + std::to_string(tw.r) + ")";
    }
  }
  return s + "]";
}

bool operator==(const InternalSpace& a, const InternalSpace& b) {
  if (a.factors_.size() != b.factors_.size()) return false;
  for (std::size_t i = 0; i < a.factors_.size(); ++i) {
    const auto& x = a.factors_[i].v;
    const auto& y = b.factors_[i].v;
    if (x.index() != y.index()) return false;
    if (const auto* r = std::get_if<RealFactor>(&x)) {
      if (r->dim != std::get<RealFactor>(y).dim) return false;
    } else if (const auto* z = std::get_if<IntegerFactor>(&x)) {
      if (z->rank != std::get<IntegerFactor>(y).rank) return false;
    } else if (const auto* c = std::get_if<CyclicFactor>(&x)) {
      if (c->q != std::get<CyclicFactor>(y).q) return false;
    } else if (const auto* t = std::get_if<TorusFactor>(&x)) {
      if (t->basis != std::get<TorusFactor>(y).basis) return false;
    } else {
      const auto& p = std::get<TwistedFactor>(x);
      const auto& q = std::get<TwistedFactor>(y);
      if (p.m != q.m || !(*p.base == *q.base) || !p.base->equal(p.twist, q.twist)) return false;
    }
  }
  return true;
}

}  // namespace cutproject
