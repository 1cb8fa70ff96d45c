#include "cutproject/region.hpp"

#include "cutproject/error.hpp"

namespace cutproject {

Box Box::cube(std::size_t d, const Scalar& lo, const Scalar& hi) {
  if (compare(lo, hi) > 0) throw InvalidInput("box lower corner exceeds upper corner");
  return Box{ScalarVec(d, lo), ScalarVec(d, hi)};
}

Box Box::parse(const std::string& text) {
  Box b;
  std::size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == 'x' || text[pos] == '*')) ++pos;
    if (pos == text.size()) break;
    if (text[pos] != '[') throw InvalidInput("box must be written as [a,b] or [a,b]x[c,d]");
    const std::size_t close = text.find(']', pos);
    if (close == std::string::npos) throw InvalidInput("unterminated box interval");
    const std::string inner = text.substr(pos + 1, close - pos - 1);
    // The comma separating the endpoints is the one outside parentheses.
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
    if (comma == std::string::npos) throw InvalidInput("box interval needs two endpoints");
    b.lo.push_back(Scalar::parse(inner.substr(0, comma)));
    b.hi.push_back(Scalar::parse(inner.substr(comma + 1)));
    if (compare(b.lo.back(), b.hi.back()) > 0) throw InvalidInput("box lower corner exceeds upper corner");
    pos = close + 1;
  }
  if (b.lo.empty()) throw InvalidInput("empty box specification");
  return b;
}

bool Box::contains(const ScalarVec& x) const {
  if (x.size() != lo.size()) throw InvalidInput("point dimension does not match box");
  for (std::size_t i = 0; i < x.size(); ++i)
    if (compare(x[i], lo[i]) < 0 || compare(x[i], hi[i]) > 0) return false;
  return true;
}

bool Box::contains(const Box& other) const {
  if (other.dim() != dim()) return false;
  for (std::size_t i = 0; i < dim(); ++i)
    if (compare(other.lo[i], lo[i]) < 0 || compare(other.hi[i], hi[i]) > 0) return false;
  return true;
}

Box Box::translated(const ScalarVec& t) const { return Box{lo + t, hi + t}; }

Box Box::expanded(const Scalar& r) const {
  Box b = *this;
  for (auto& x : b.lo) x -= r;
  for (auto& x : b.hi) x += r;
  return b;
}

std::string Box::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < dim(); ++i) {
    if (i) s += "x";
    s += "[" + lo[i].to_string() + "," + hi[i].to_string() + "]";
  }
  return s;
}

bool operator==(const Box& a, const Box& b) { return equal(a.lo, b.lo) && equal(a.hi, b.hi); }

}  // namespace cutproject
