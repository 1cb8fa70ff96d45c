#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cutproject/internal_space.hpp"
#include "cutproject/region.hpp"

namespace cutproject {

/// Interval with individually open or closed ends; a point is [x,x].
struct Interval {
  Scalar lo;
  Scalar hi;
  bool lo_closed = true;
  bool hi_closed = false;

  static Interval closed(const Scalar& a, const Scalar& b) { return {a, b, true, true}; }
  static Interval open(const Scalar& a, const Scalar& b) { return {a, b, false, false}; }
  /// [a, b)
  static Interval half_open(const Scalar& a, const Scalar& b) { return {a, b, true, false}; }
  static Interval point(const Scalar& x) { return {x, x, true, true}; }
  /// Parses "[a,b)", "(a,b]", "{x}" and similar with expression endpoints.
  static Interval parse(const std::string& text);

  bool empty() const;
  bool contains(const Scalar& x) const;
  std::string to_string() const;
};

/// Subset of one flattened axis: a union of intervals on continuous axes,
/// a finite value set on discrete axes.
struct AxisSet {
  std::vector<Interval> intervals;
  std::vector<long long> values;
};

/// Product of per-axis sets over the flattened axes of a space.
using FlatBox = std::vector<AxisSet>;

/// Flags of the regularity conditions on windows.
struct WindowProperties {
  bool precompact = false;
  bool has_interior = false;
  bool topologically_regular = false;  ///< closure(interior(W)) == closure(W)
  bool measure_regular = false;        ///< Haar measure of the boundary is zero
  bool measurable = false;
  friend bool operator==(const WindowProperties&, const WindowProperties&) = default;
};

class Window;

/// Data of an augmented window U ∪ (finite star set) built for a truncation.
struct Augmentation {
  std::shared_ptr<const Window> open_part;
  std::vector<HPoint> stars;
  /// Region that may contain further star points of lattice points outside
  /// the truncation; membership there is uncertified.
  std::shared_ptr<const Window> envelope;
  std::optional<Box> truncation;
};

/// Window in an internal space: a finite union of boxes over the flattened
/// axes, optionally tagged as an augmented window.
///
/// Topological queries work on a cell decomposition: the breakpoints of all
/// intervals cut each continuous axis into points and open gaps, so every
/// window is a union of product cells and interior, closure and measure are
/// decided exactly cell by cell.
class Window {
 public:
  Window() = default;
  Window(InternalSpace space, std::vector<FlatBox> boxes);

  static Window empty(const InternalSpace& space);
  /// Interval in the one-dimensional real space.
  static Window interval(const Interval& iv);
  static Window box(const InternalSpace& space, FlatBox box);
  /// Finite set of points.
  static Window points(const InternalSpace& space, const std::vector<HPoint>& pts);
  /// Whole compact space of a torus or cyclic factor list (every axis full).
  static Window full(const InternalSpace& space);
  /// Product window in space_a x space_b.
  static Window product(const Window& a, const Window& b);
  /// Window in Twisted(base) consisting of base_window at one residue.
  static Window at_residue(const InternalSpace& twisted_space, long long residue, const Window& base_window);
  /// U ∪ stars, with stars already in U dropped.
  static Window augmented(const Window& open_part, const std::vector<HPoint>& stars, const Window& envelope,
                          std::optional<Box> truncation);

  const InternalSpace& space() const noexcept { return space_; }
  const std::vector<FlatBox>& boxes() const noexcept { return boxes_; }
  bool is_augmented() const noexcept { return augmentation_ != nullptr; }
  const Augmentation& augmentation() const;

  bool contains(const HPoint& x) const;
  /// Membership of the star of a lattice point. For augmented windows with a
  /// truncation, throws OutOfCertifiedRange when the lattice point lies
  /// outside the truncation and the answer depends on unrecorded stars.
  bool contains_at(const HPoint& star, const ScalarVec& point) const;

  Window interior() const;
  Window closure() const;
  /// closure minus interior.
  Window boundary() const;
  /// Set difference this \ other.
  Window minus(const Window& other) const;
  Window unite(const Window& other) const;
  Scalar measure() const;
  Scalar boundary_measure() const;
  WindowProperties properties() const;
  bool is_empty() const;
  bool is_open() const;
  bool subset_of(const Window& other) const;
  bool same_set(const Window& other) const;
  /// Points of a finite window; throws InvalidInput if the window has a
  /// positive-dimensional part.
  std::vector<HPoint> finite_points() const;

  /// t + W.
  Window translate(const HPoint& t) const;

  /// Bounding intervals [lo, hi] of the linearized coordinates, with a small
  /// outward margin; nullopt for the empty window.
  std::optional<std::vector<std::pair<double, double>>> linear_bounds() const;

  std::string to_string() const;

 private:
  InternalSpace space_;
  std::vector<FlatBox> boxes_;
  std::shared_ptr<const Augmentation> augmentation_;
};

}  // namespace cutproject
