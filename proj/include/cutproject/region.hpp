#pragma once

#include <string>

#include "cutproject/scalar.hpp"

namespace cutproject {

/// Closed axis-parallel box [lo_1,hi_1] x ... x [lo_d,hi_d] in direct space.
struct Box {
  ScalarVec lo;
  ScalarVec hi;

  /// [lo, hi]^d.
  static Box cube(std::size_t d, const Scalar& lo, const Scalar& hi);
  /// Parses "[a,b]" or "[a,b]x[c,d]" with expression endpoints.
  static Box parse(const std::string& text);

  std::size_t dim() const noexcept { return lo.size(); }
  bool contains(const ScalarVec& x) const;
  bool contains(const Box& other) const;
  Box translated(const ScalarVec& t) const;
  /// Box grown by r on every side.
  Box expanded(const Scalar& r) const;
  std::string to_string() const;
  friend bool operator==(const Box& a, const Box& b);
};

}  // namespace cutproject
