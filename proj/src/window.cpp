#include "cutproject/window.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "cutproject/error.hpp"

namespace cutproject {

// ---------------------------------------------------------------- intervals

Interval Interval::parse(const std::string& text) {
  std::string s;
  for (char c : text)
    if (c != ' ') s += c;
  if (s.size() >= 2 && s.front() == '{' && s.back() == '}') return point(Scalar::parse(s.substr(1, s.size() - 2)));
  if (s.size() < 5 || (s.front() != '[' && s.front() != '(') || (s.back() != ']' && s.back() != ')'))
    throw InvalidInput("interval must look like [a,b), (a,b], [a,b], (a,b) or {x}: " + text);
  const std::string inner = s.substr(1, s.size() - 2);
  int depth = 0;
  std::size_t comma = std::string::npos;
  for (std::size_t i = 0; i < inner.size(); ++i) {
    if (inner[i] == '(') ++depth;
    if (inner[i] == ')') --depth;
    if (inner[i] == ',' && depth == 0) {
      comma = i;
      break;
    }
  }
  if (comma == std::string::npos) throw InvalidInput("interval needs two endpoints: " + text);
  Interval iv{Scalar::parse(inner.substr(0, comma)), Scalar::parse(inner.substr(comma + 1)), s.front() == '[',
              s.back() == ']'};
  if (compare(iv.lo, iv.hi) > 0) throw InvalidInput("interval endpoints out of order: " + text);
  return iv;
}

bool Interval::empty() const {
  const int c = compare(lo, hi);
  return c > 0 || (c == 0 && !(lo_closed && hi_closed));
}

bool Interval::contains(const Scalar& x) const {
  const int a = compare(lo, x);
  const int b = compare(x, hi);
  return (a < 0 || (a == 0 && lo_closed)) && (b < 0 || (b == 0 && hi_closed));
}

std::string Interval::to_string() const {
  if (compare(lo, hi) == 0) return "{" + lo.to_string() + "}";
  return std::string(lo_closed ? "[" : "(") + lo.to_string() + ", " + hi.to_string() + (hi_closed ? "]" : ")");
}

namespace {

// ------------------------------------------------------------ normalization

// Pieces of an interval on the circle R/Z inside [0,1); the point 0 is kept
// as a separate piece so that hi == 1 is always an open end.
std::vector<Interval> wrap_circle(Interval iv) {
  std::vector<Interval> out;
  if (iv.empty()) return out;
  const long long k = iv.lo.floor();
  iv.lo -= Scalar(k);
  iv.hi -= Scalar(k);
  const Scalar one(1);
  const int len = compare(iv.hi - iv.lo, one);
  if (len > 0 || (len == 0 && (iv.lo_closed || iv.hi_closed))) return {Interval::half_open(Scalar(0), one)};
  const int c = compare(iv.hi, one);
  if (c < 0) return {iv};
  out.push_back(Interval{iv.lo, one, iv.lo_closed, false});
  if (c == 0) {
    if (iv.hi_closed) out.push_back(Interval::point(Scalar(0)));
  } else {
    out.push_back(Interval{Scalar(0), iv.hi - one, true, iv.hi_closed});
  }
  std::vector<Interval> kept;
  for (auto& p : out)
    if (!p.empty()) kept.push_back(p);
  return kept;
}

bool normalize_box(const std::vector<Axis>& axes, FlatBox& box) {
  if (box.size() != axes.size()) throw InvalidInput("window box has wrong number of axes");
  for (std::size_t i = 0; i < axes.size(); ++i) {
    auto& s = box[i];
    if (axes[i].continuous()) {
      if (!s.values.empty()) throw InvalidInput("continuous axis given discrete values");
      std::vector<Interval> kept;
      for (const auto& iv : s.intervals) {
        if (axes[i].kind == Axis::Kind::Circle) {
          for (auto& p : wrap_circle(iv)) kept.push_back(p);
        } else if (!iv.empty()) {
          kept.push_back(iv);
        }
      }
      s.intervals = std::move(kept);
      if (s.intervals.empty()) return false;
    } else {
      if (!s.intervals.empty()) throw InvalidInput("discrete axis given intervals");
      if (axes[i].kind == Axis::Kind::Residue)
        for (auto& v : s.values) v = floor_mod(v, axes[i].modulus);
      std::sort(s.values.begin(), s.values.end());
      s.values.erase(std::unique(s.values.begin(), s.values.end()), s.values.end());
      if (s.values.empty()) return false;
    }
  }
  return true;
}

// -------------------------------------------------------- cell decomposition

struct AxisCells {
  Axis::Kind kind = Axis::Kind::Line;
  std::vector<Scalar> breaks;     // continuous axes, sorted, distinct
  std::vector<long long> values;  // discrete axes

  std::size_t size() const {
    if (kind == Axis::Kind::Line) return 2 * breaks.size() + 1;
    if (kind == Axis::Kind::Circle) return 2 * breaks.size();
    return values.size();
  }
  bool is_point(std::size_t c) const {
    if (kind == Axis::Kind::Line) return c % 2 == 1;
    if (kind == Axis::Kind::Circle) return c % 2 == 0;
    return true;
  }
  // Endpoints of gap cells; for line axes the outer gaps are unbounded.
  Scalar gap_lo(std::size_t c) const {
    return kind == Axis::Kind::Line ? breaks[c / 2 - 1] : breaks[(c - 1) / 2];
  }
  Scalar gap_hi(std::size_t c) const {
    if (kind == Axis::Kind::Line) return breaks[c / 2];
    const std::size_t i = (c - 1) / 2 + 1;
    return i < breaks.size() ? breaks[i] : Scalar(1);
  }
  bool outside(std::size_t c) const {
    return kind == Axis::Kind::Line && (c == 0 || c + 1 == size());
  }
  Scalar point_value(std::size_t c) const {
    return kind == Axis::Kind::Line ? breaks[(c - 1) / 2] : breaks[c / 2];
  }
  Scalar representative(std::size_t c) const {
    if (is_point(c)) return point_value(c);
    if (kind == Axis::Kind::Line) {
      if (breaks.empty()) return Scalar(0);
      if (c == 0) return breaks.front() - Scalar(1);
      if (c + 1 == size()) return breaks.back() + Scalar(1);
    }
    return (gap_lo(c) + gap_hi(c)) / Scalar(2);
  }
  std::vector<std::size_t> up(std::size_t c) const {
    if (kind == Axis::Kind::Line) {
      if (c % 2 == 1) return {c - 1, c, c + 1};
      return {c};
    }
    if (kind == Axis::Kind::Circle) {
      if (c % 2 == 0) return {(c + size() - 1) % size(), c, c + 1};
      return {c};
    }
    return {c};
  }
  Scalar length(std::size_t c) const {
    if (!kind_continuous() || is_point(c) || outside(c)) return Scalar(0);
    return gap_hi(c) - gap_lo(c);
  }
  bool kind_continuous() const { return kind == Axis::Kind::Line || kind == Axis::Kind::Circle; }
  AxisSet as_set(std::size_t c) const {
    AxisSet s;
    if (!kind_continuous()) {
      s.values = {values[c]};
    } else if (is_point(c)) {
      s.intervals = {Interval::point(point_value(c))};
    } else {
      s.intervals = {Interval::open(gap_lo(c), gap_hi(c))};
    }
    return s;
  }
  // Cells of this axis contained in the axis set.
  std::vector<std::size_t> members(const AxisSet& set) const {
    std::vector<std::size_t> out;
    if (!kind_continuous()) {
      for (std::size_t c = 0; c < values.size(); ++c)
        if (std::binary_search(set.values.begin(), set.values.end(), values[c])) out.push_back(c);
      return out;
    }
    for (std::size_t c = 0; c < size(); ++c) {
      if (outside(c)) continue;
      const Scalar r = representative(c);
      for (const auto& iv : set.intervals) {
        if (iv.contains(r)) {
          out.push_back(c);
          break;
        }
      }
    }
    return out;
  }
};

struct Grid {
  std::vector<AxisCells> axes;
  std::vector<std::size_t> stride;
  std::size_t total = 1;

  std::vector<std::size_t> decode(std::size_t idx) const {
    std::vector<std::size_t> c(axes.size());
    for (std::size_t i = 0; i < axes.size(); ++i) c[i] = (idx / stride[i]) % axes[i].size();
    return c;
  }
  std::size_t encode(const std::vector<std::size_t>& c) const {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < axes.size(); ++i) idx += c[i] * stride[i];
    return idx;
  }
};

void add_break(std::vector<Scalar>& v, const Scalar& x) { v.push_back(x); }

void sort_unique(std::vector<Scalar>& v) {
  std::sort(v.begin(), v.end(), [](const Scalar& a, const Scalar& b) { return compare(a, b) < 0; });
  std::vector<Scalar> out;
  for (const auto& x : v)
    if (out.empty() || compare(out.back(), x) != 0) out.push_back(x);
  v = std::move(out);
}

Grid make_grid(const InternalSpace& space, const std::vector<const Window*>& windows) {
  const auto& axes = space.axes();
  Grid g;
  g.axes.resize(axes.size());
  for (std::size_t i = 0; i < axes.size(); ++i) {
    g.axes[i].kind = axes[i].kind;
    if (axes[i].kind == Axis::Kind::Circle) add_break(g.axes[i].breaks, Scalar(0));
  }
  for (const Window* w : windows) {
    for (const auto& box : w->boxes()) {
      for (std::size_t i = 0; i < axes.size(); ++i) {
        if (axes[i].continuous()) {
          for (const auto& iv : box[i].intervals) {
            add_break(g.axes[i].breaks, iv.lo);
            if (!(axes[i].kind == Axis::Kind::Circle && compare(iv.hi, Scalar(1)) == 0))
              add_break(g.axes[i].breaks, iv.hi);
          }
        } else {
          g.axes[i].values.insert(g.axes[i].values.end(), box[i].values.begin(), box[i].values.end());
        }
      }
    }
  }
  g.stride.resize(axes.size());
  for (std::size_t i = axes.size(); i-- > 0;) {
    auto& a = g.axes[i];
    if (a.kind_continuous()) {
      sort_unique(a.breaks);
    } else {
      // An empty value list would leave the axis without cells.
      if (a.values.empty()) a.values.push_back(0);
      std::sort(a.values.begin(), a.values.end());
      a.values.erase(std::unique(a.values.begin(), a.values.end()), a.values.end());
    }
    g.stride[i] = g.total;
    g.total *= std::max<std::size_t>(a.size(), 1);
  }
  if (g.total > 50'000'000) throw EnumerationOverflow("window cell decomposition too large");
  return g;
}

std::vector<char> mask_of(const Grid& g, const Window& w) {
  std::vector<char> mask(g.total, 0);
  if (g.axes.empty()) {
    if (!w.boxes().empty()) mask.assign(1, 1);
    return mask;
  }
  for (const auto& box : w.boxes()) {
    std::vector<std::vector<std::size_t>> mem(g.axes.size());
    bool empty = false;
    for (std::size_t i = 0; i < g.axes.size(); ++i) {
      mem[i] = g.axes[i].members(box[i]);
      if (mem[i].empty()) empty = true;
    }
    if (empty) continue;
    std::vector<std::size_t> pos(g.axes.size(), 0);
    for (;;) {
      std::size_t idx = 0;
      for (std::size_t i = 0; i < g.axes.size(); ++i) idx += mem[i][pos[i]] * g.stride[i];
      mask[idx] = 1;
      std::size_t i = 0;
      while (i < g.axes.size() && ++pos[i] == mem[i].size()) pos[i++] = 0;
      if (i == g.axes.size()) break;
    }
  }
  return mask;
}

// Applies f to every product of per-axis up-neighbour cells of `cell`;
// stops early when f returns false.
template <class F>
void for_each_up(const Grid& g, std::size_t cell, F&& f) {
  const auto c = g.decode(cell);
  std::vector<std::vector<std::size_t>> ups(g.axes.size());
  for (std::size_t i = 0; i < g.axes.size(); ++i) ups[i] = g.axes[i].up(c[i]);
  std::vector<std::size_t> pos(g.axes.size(), 0);
  for (;;) {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < g.axes.size(); ++i) idx += ups[i][pos[i]] * g.stride[i];
    if (!f(idx)) return;
    std::size_t i = 0;
    while (i < g.axes.size() && ++pos[i] == ups[i].size()) pos[i++] = 0;
    if (i == g.axes.size()) return;
  }
}

std::vector<char> interior_mask(const Grid& g, const std::vector<char>& m) {
  std::vector<char> out(m.size(), 0);
  for (std::size_t c = 0; c < m.size(); ++c) {
    if (!m[c]) continue;
    bool all = true;
    for_each_up(g, c, [&](std::size_t u) {
      if (!m[u]) all = false;
      return all;
    });
    out[c] = all ? 1 : 0;
  }
  return out;
}

std::vector<char> closure_mask(const Grid& g, const std::vector<char>& m) {
  std::vector<char> out(m.size(), 0);
  for (std::size_t c = 0; c < m.size(); ++c) {
    if (m[c]) {
      out[c] = 1;
      continue;
    }
    bool any = false;
    for_each_up(g, c, [&](std::size_t u) {
      if (m[u]) any = true;
      return !any;
    });
    out[c] = any ? 1 : 0;
  }
  return out;
}

Scalar mask_measure(const Grid& g, const std::vector<char>& m, const Scalar& scale) {
  Scalar total(0);
  for (std::size_t c = 0; c < m.size(); ++c) {
    if (!m[c]) continue;
    const auto cell = g.decode(c);
    Scalar v(1);
    for (std::size_t i = 0; i < g.axes.size() && !v.is_zero(); ++i)
      if (g.axes[i].kind_continuous()) v *= g.axes[i].length(cell[i]);
    total += v;
  }
  return total * scale;
}

std::string axis_key(const AxisSet& s) {
  std::string k;
  for (const auto& iv : s.intervals) k += iv.to_string() + ";";
  for (long long v : s.values) k += std::to_string(v) + ",";
  return k;
}

// Merges boxes that agree on all axes but one and are contiguous on it.
std::vector<FlatBox> merge_boxes(std::vector<FlatBox> boxes, const std::vector<Axis>& axes) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t j = 0; j < axes.size(); ++j) {
      std::map<std::string, std::vector<std::size_t>> groups;
      for (std::size_t b = 0; b < boxes.size(); ++b) {
        std::string key;
        for (std::size_t i = 0; i < axes.size(); ++i)
          if (i != j) key += axis_key(boxes[b][i]) + "|";
        groups[key].push_back(b);
      }
      std::vector<FlatBox> next;
      for (auto& [key, idx] : groups) {
        if (idx.size() == 1) {
          next.push_back(boxes[idx[0]]);
          continue;
        }
        if (!axes[j].continuous()) {
          FlatBox merged = boxes[idx[0]];
          for (std::size_t t = 1; t < idx.size(); ++t) {
            const auto& v = boxes[idx[t]][j].values;
            merged[j].values.insert(merged[j].values.end(), v.begin(), v.end());
          }
          std::sort(merged[j].values.begin(), merged[j].values.end());
          merged[j].values.erase(std::unique(merged[j].values.begin(), merged[j].values.end()),
                                 merged[j].values.end());
          next.push_back(merged);
          changed = true;
          continue;
        }
        std::vector<Interval> ivs;
        for (std::size_t b : idx)
          for (const auto& iv : boxes[b][j].intervals) ivs.push_back(iv);
        std::sort(ivs.begin(), ivs.end(), [](const Interval& a, const Interval& b) {
          const int c = compare(a.lo, b.lo);
          if (c != 0) return c < 0;
          return a.lo_closed && !b.lo_closed;
        });
        std::vector<Interval> out;
        for (const auto& iv : ivs) {
          if (!out.empty()) {
            auto& last = out.back();
            const int c = compare(last.hi, iv.lo);
            if (c > 0 || (c == 0 && (last.hi_closed || iv.lo_closed))) {
              const int h = compare(iv.hi, last.hi);
              if (h > 0 || (h == 0 && iv.hi_closed)) {
                last.hi = iv.hi;
                last.hi_closed = iv.hi_closed;
              }
              continue;
            }
          }
          out.push_back(iv);
        }
        if (out.size() < ivs.size()) changed = true;
        for (const auto& iv : out) {
          FlatBox b = boxes[idx[0]];
          b[j].intervals = {iv};
          next.push_back(b);
        }
      }
      boxes = std::move(next);
    }
  }
  return boxes;
}

std::vector<FlatBox> boxes_of_mask(const Grid& g, const std::vector<char>& m, const std::vector<Axis>& axes) {
  std::vector<FlatBox> boxes;
  for (std::size_t c = 0; c < m.size(); ++c) {
    if (!m[c]) continue;
    const auto cell = g.decode(c);
    FlatBox b(g.axes.size());
    for (std::size_t i = 0; i < g.axes.size(); ++i) b[i] = g.axes[i].as_set(cell[i]);
    boxes.push_back(std::move(b));
  }
  return merge_boxes(std::move(boxes), axes);
}

// ---------------------------------------------------------------- translate

std::vector<FlatBox> translate_box(const InternalSpace& space, const FlatBox& box, const FlatPoint& t) {
  const auto& axes = space.axes();
  // Twisted factors: residue axis position and base description.
  struct Twist {
    std::size_t axis;
    const TwistedFactor* factor;
  };
  std::vector<Twist> twists;
  {
    std::size_t pos = 0;
    for (const auto& f : space.factors()) {
      const std::size_t start = pos;
      while (pos < axes.size() && &space.factors()[axes[pos].factor] == &f) ++pos;
      if (const auto* tw = std::get_if<TwistedFactor>(&f.v)) twists.push_back({start, tw});
    }
  }
  std::vector<FlatBox> split{box};
  for (const auto& tw : twists) {
    std::vector<FlatBox> next;
    for (const auto& b : split) {
      for (long long r : b[tw.axis].values) {
        FlatBox c = b;
        c[tw.axis].values = {r};
        next.push_back(std::move(c));
      }
    }
    split = std::move(next);
  }
  std::vector<FlatBox> out;
  for (auto& b : split) {
    FlatPoint shift = t;
    std::vector<bool> handled(axes.size(), false);
    for (const auto& tw : twists) {
      const long long m = tw.factor->m;
      const long long r = b[tw.axis].values[0] + t[tw.axis].k;
      const bool carry = r >= m;
      b[tw.axis].values = {floor_mod(r, m)};
      handled[tw.axis] = true;
      if (carry) {
        const FlatPoint bs = tw.factor->base->flatten(tw.factor->twist);
        for (std::size_t i = 0; i < bs.size(); ++i) {
          shift[tw.axis + 1 + i].x += bs[i].x;
          shift[tw.axis + 1 + i].k += bs[i].k;
        }
      }
    }
    bool ok = true;
    for (std::size_t i = 0; i < axes.size() && ok; ++i) {
      if (handled[i]) continue;
      auto& s = b[i];
      switch (axes[i].kind) {
        case Axis::Kind::Line:
          for (auto& iv : s.intervals) {
            iv.lo += shift[i].x;
            iv.hi += shift[i].x;
          }
          break;
        case Axis::Kind::Circle: {
          std::vector<Interval> wrapped;
          for (auto iv : s.intervals) {
            iv.lo += shift[i].x;
            iv.hi += shift[i].x;
            for (auto& p : wrap_circle(iv)) wrapped.push_back(p);
          }
          s.intervals = std::move(wrapped);
          ok = !s.intervals.empty();
          break;
        }
        case Axis::Kind::Integer:
          for (auto& v : s.values) v += shift[i].k;
          break;
        case Axis::Kind::Residue:
          for (auto& v : s.values) v = floor_mod(v + shift[i].k, axes[i].modulus);
          std::sort(s.values.begin(), s.values.end());
          break;
      }
    }
    if (ok) out.push_back(std::move(b));
  }
  return out;
}

void linear_bounds_of(const InternalSpace& space, const FlatBox& box, std::size_t offset,
                      std::vector<std::pair<double, double>>& out) {
  const auto& axes = space.axes();
  std::size_t pos = 0;
  for (const auto& f : space.factors()) {
    if (const auto* r = std::get_if<RealFactor>(&f.v)) {
      for (int j = 0; j < r->dim; ++j, ++pos) {
        double lo = INFINITY, hi = -INFINITY;
        for (const auto& iv : box[offset + pos].intervals) {
          lo = std::min(lo, iv.lo.to_double());
          hi = std::max(hi, iv.hi.to_double());
        }
        out.emplace_back(lo, hi);
      }
    } else if (const auto* z = std::get_if<IntegerFactor>(&f.v)) {
      for (int j = 0; j < z->rank; ++j, ++pos) {
        const auto& v = box[offset + pos].values;
        out.emplace_back(static_cast<double>(v.front()), static_cast<double>(v.back()));
      }
    } else if (std::holds_alternative<CyclicFactor>(f.v)) {
      ++pos;
    } else if (const auto* t = std::get_if<TorusFactor>(&f.v)) {
      pos += static_cast<std::size_t>(t->dim);
    } else {
      const auto& tw = std::get<TwistedFactor>(f.v);
      const auto& residues = box[offset + pos].values;
      std::vector<std::pair<double, double>> base;
      linear_bounds_of(*tw.base, box, offset + pos + 1, base);
      const std::vector<double> lb = to_doubles(tw.base->linearize(tw.twist));
      for (std::size_t j = 0; j < base.size(); ++j) {
        double lo = INFINITY, hi = -INFINITY;
        for (long long r : residues) {
          const double off = static_cast<double>(r) / static_cast<double>(tw.m) * lb[j];
          lo = std::min(lo, base[j].first + off);
          hi = std::max(hi, base[j].second + off);
        }
        out.emplace_back(lo, hi);
      }
      pos += 1 + tw.base->axes().size();
    }
  }
  (void)axes;
}

}  // namespace

// ------------------------------------------------------------------- window

Window::Window(InternalSpace space, std::vector<FlatBox> boxes) : space_(std::move(space)) {
  for (auto& b : boxes)
    if (normalize_box(space_.axes(), b)) boxes_.push_back(std::move(b));
}

Window Window::empty(const InternalSpace& space) { return Window(space, {}); }

Window Window::interval(const Interval& iv) {
  const InternalSpace r = InternalSpace::real(1);
  return Window(r, {FlatBox{AxisSet{{iv}, {}}}});
}

Window Window::box(const InternalSpace& space, FlatBox box) { return Window(space, {std::move(box)}); }

Window Window::points(const InternalSpace& space, const std::vector<HPoint>& pts) {
  std::vector<FlatBox> boxes;
  for (const auto& p : pts) {
    const FlatPoint f = space.flatten(space.reduce(p));
    FlatBox b(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (space.axes()[i].continuous()) {
        b[i].intervals = {Interval::point(f[i].x)};
      } else {
        b[i].values = {f[i].k};
      }
    }
    boxes.push_back(std::move(b));
  }
  return Window(space, std::move(boxes));
}

Window Window::full(const InternalSpace& space) {
  FlatBox b(space.axes().size());
  for (std::size_t i = 0; i < b.size(); ++i) {
    const auto& a = space.axes()[i];
    if (a.kind == Axis::Kind::Circle) {
      b[i].intervals = {Interval::half_open(Scalar(0), Scalar(1))};
    } else if (a.kind == Axis::Kind::Residue) {
      for (long long r = 0; r < a.modulus; ++r) b[i].values.push_back(r);
    } else {
      throw InvalidInput("full window only exists for compact factors");
    }
  }
  return Window(space, {b});
}

Window Window::product(const Window& a, const Window& b) {
  const InternalSpace space = a.space_.product(b.space_);
  std::vector<FlatBox> boxes;
  for (const auto& x : a.boxes_) {
    for (const auto& y : b.boxes_) {
      FlatBox z = x;
      z.insert(z.end(), y.begin(), y.end());
      boxes.push_back(std::move(z));
    }
  }
  return Window(space, std::move(boxes));
}

Window Window::at_residue(const InternalSpace& twisted_space, long long residue, const Window& base_window) {
  if (twisted_space.factors().size() != 1 || !std::holds_alternative<TwistedFactor>(twisted_space.factors()[0].v))
    throw InvalidInput("at_residue needs a single twisted factor space");
  const auto& tw = std::get<TwistedFactor>(twisted_space.factors()[0].v);
  if (!(*tw.base == base_window.space())) throw InvalidInput("base window lives in a different space");
  std::vector<FlatBox> boxes;
  for (const auto& b : base_window.boxes()) {
    FlatBox z;
    z.push_back(AxisSet{{}, {floor_mod(residue, tw.m)}});
    z.insert(z.end(), b.begin(), b.end());
    boxes.push_back(std::move(z));
  }
  return Window(twisted_space, std::move(boxes));
}

Window Window::augmented(const Window& open_part, const std::vector<HPoint>& stars, const Window& envelope,
                         std::optional<Box> truncation) {
  const InternalSpace& space = open_part.space();
  auto aug = std::make_shared<Augmentation>();
  aug->open_part = std::make_shared<const Window>(open_part);
  aug->envelope = std::make_shared<const Window>(envelope);
  aug->truncation = std::move(truncation);
  std::vector<HPoint> kept;
  for (const auto& s : stars) {
    const HPoint r = space.reduce(s);
    if (open_part.contains(r)) continue;
    bool dup = false;
    for (const auto& k : kept)
      if (space.equal(k, r)) dup = true;
    if (!dup) kept.push_back(r);
  }
  std::sort(kept.begin(), kept.end(),
            [&](const HPoint& a, const HPoint& b) { return space.compare(a, b) < 0; });
  aug->stars = kept;
  Window w = open_part.unite(points(space, kept));
  w.augmentation_ = aug;
  return w;
}

const Augmentation& Window::augmentation() const {
  if (!augmentation_) throw InvalidInput("window is not augmented");
  return *augmentation_;
}

bool Window::contains(const HPoint& x) const {
  const FlatPoint p = space_.flatten(space_.reduce(x));
  const auto& axes = space_.axes();
  for (const auto& box : boxes_) {
    bool in = true;
    for (std::size_t i = 0; i < axes.size() && in; ++i) {
      if (axes[i].continuous()) {
        bool any = false;
        for (const auto& iv : box[i].intervals) {
          if (iv.contains(p[i].x)) {
            any = true;
            break;
          }
        }
        in = any;
      } else {
        in = std::binary_search(box[i].values.begin(), box[i].values.end(), p[i].k);
      }
    }
    if (in) return true;
  }
  return false;
}

bool Window::contains_at(const HPoint& star, const ScalarVec& point) const {
  if (contains(star)) return true;
  if (augmentation_ && augmentation_->truncation && !augmentation_->truncation->contains(point) &&
      augmentation_->envelope->contains(star))
    throw OutOfCertifiedRange("lattice point " + cutproject::to_string(point) +
                              " lies outside the certified truncation " +
                              augmentation_->truncation->to_string());
  return false;
}

Window Window::interior() const {
  const Grid g = make_grid(space_, {this});
  return Window(space_, boxes_of_mask(g, interior_mask(g, mask_of(g, *this)), space_.axes()));
}

Window Window::closure() const {
  const Grid g = make_grid(space_, {this});
  return Window(space_, boxes_of_mask(g, closure_mask(g, mask_of(g, *this)), space_.axes()));
}

Window Window::boundary() const {
  const Grid g = make_grid(space_, {this});
  const auto m = mask_of(g, *this);
  auto c = closure_mask(g, m);
  const auto in = interior_mask(g, m);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = c[i] && !in[i];
  return Window(space_, boxes_of_mask(g, c, space_.axes()));
}

Window Window::minus(const Window& other) const {
  if (!(space_ == other.space_)) throw InvalidInput("windows live in different spaces");
  const Grid g = make_grid(space_, {this, &other});
  auto a = mask_of(g, *this);
  const auto b = mask_of(g, other);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = a[i] && !b[i];
  return Window(space_, boxes_of_mask(g, a, space_.axes()));
}

Window Window::unite(const Window& other) const {
  if (!(space_ == other.space_)) throw InvalidInput("windows live in different spaces");
  std::vector<FlatBox> boxes = boxes_;
  boxes.insert(boxes.end(), other.boxes_.begin(), other.boxes_.end());
  return Window(space_, std::move(boxes));
}

Scalar Window::measure() const {
  const Grid g = make_grid(space_, {this});
  return mask_measure(g, mask_of(g, *this), space_.measure_scale());
}

Scalar Window::boundary_measure() const { return closure().measure() - interior().measure(); }

WindowProperties Window::properties() const {
  WindowProperties p;
  // Every window in this class is a finite union of bounded boxes.
  p.precompact = true;
  p.measurable = true;
  const Window in = interior();
  p.has_interior = !in.is_empty();
  p.topologically_regular = in.closure().same_set(closure());
  p.measure_regular = boundary_measure().is_zero();
  return p;
}

bool Window::is_empty() const { return boxes_.empty(); }

bool Window::is_open() const { return same_set(interior()); }

bool Window::subset_of(const Window& other) const {
  if (!(space_ == other.space_)) throw InvalidInput("windows live in different spaces");
  const Grid g = make_grid(space_, {this, &other});
  const auto a = mask_of(g, *this);
  const auto b = mask_of(g, other);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] && !b[i]) return false;
  return true;
}

bool Window::same_set(const Window& other) const {
  if (!(space_ == other.space_)) return false;
  const Grid g = make_grid(space_, {this, &other});
  return mask_of(g, *this) == mask_of(g, other);
}

std::vector<HPoint> Window::finite_points() const {
  const Grid g = make_grid(space_, {this});
  const auto m = mask_of(g, *this);
  std::vector<HPoint> out;
  for (std::size_t c = 0; c < m.size(); ++c) {
    if (!m[c]) continue;
    const auto cell = g.decode(c);
    FlatPoint p(g.axes.size());
    for (std::size_t i = 0; i < g.axes.size(); ++i) {
      const auto& a = g.axes[i];
      if (a.kind_continuous()) {
        if (!a.is_point(cell[i])) throw InvalidInput("window is not a finite set");
        p[i].x = a.point_value(cell[i]);
      } else {
        p[i].k = a.values[cell[i]];
      }
    }
    out.push_back(space_.unflatten(p));
  }
  return out;
}

Window Window::translate(const HPoint& t) const {
  const FlatPoint shift = space_.flatten(space_.reduce(t));
  std::vector<FlatBox> boxes;
  for (const auto& b : boxes_)
    for (auto& x : translate_box(space_, b, shift)) boxes.push_back(std::move(x));
  Window w(space_, std::move(boxes));
  if (augmentation_) {
    auto aug = std::make_shared<Augmentation>(*augmentation_);
    aug->open_part = std::make_shared<const Window>(augmentation_->open_part->translate(t));
    aug->envelope = std::make_shared<const Window>(augmentation_->envelope->translate(t));
    for (auto& s : aug->stars) s = space_.add(s, t);
    w.augmentation_ = aug;
  }
  return w;
}

std::optional<std::vector<std::pair<double, double>>> Window::linear_bounds() const {
  if (boxes_.empty()) return std::nullopt;
  std::vector<std::pair<double, double>> total;
  for (const auto& b : boxes_) {
    std::vector<std::pair<double, double>> one;
    linear_bounds_of(space_, b, 0, one);
    if (total.empty()) {
      total = one;
    } else {
      for (std::size_t j = 0; j < one.size(); ++j) {
        total[j].first = std::min(total[j].first, one[j].first);
        total[j].second = std::max(total[j].second, one[j].second);
      }
    }
  }
  for (auto& [lo, hi] : total) {
    lo -= 1e-7 * (1.0 + std::fabs(lo));
    hi += 1e-7 * (1.0 + std::fabs(hi));
  }
  return total;
}

std::string Window::to_string() const {
  if (boxes_.empty()) return "{}";
  std::string s;
  const auto& axes = space_.axes();
  for (std::size_t b = 0; b < boxes_.size(); ++b) {
    if (b) s += " u ";
    for (std::size_t i = 0; i < axes.size(); ++i) {
      if (i) s += " x ";
      const auto& set = boxes_[b][i];
      if (axes[i].continuous()) {
        for (std::size_t j = 0; j < set.intervals.size(); ++j) s += (j ? "u" : "") + set.intervals[j].to_string();
      } else {
        s += "{";
        for (std::size_t j = 0; j < set.values.size(); ++j) s += (j ? "," : "") + std::to_string(set.values[j]);
        s += "}";
      }
    }
  }
  return s;
}

}  // namespace cutproject
