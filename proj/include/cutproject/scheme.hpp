#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cutproject/internal_space.hpp"
#include "cutproject/region.hpp"
#include "cutproject/window.hpp"

namespace cutproject {

/// Lattice generator: direct part g in R^d and internal part h in H.
struct Generator {
  ScalarVec g;
  HPoint h;
};

/// Lattice point with its integer coordinates, projection and star.
struct LatticePoint {
  IntVec n;
  ScalarVec x;
  HPoint star;
};

/// Finite point set in R^d cut out by a box. Points are sorted
/// lexicographically; `coords` is either empty or parallel to `points`.
struct Patch {
  std::vector<ScalarVec> points;
  Box box;
  std::string scheme_id;
  std::vector<IntVec> coords;

  std::size_t size() const noexcept { return points.size(); }
  bool has_coords() const noexcept { return !coords.empty(); }
  bool contains(const ScalarVec& x) const;
  /// The patch moved by t (box included); lattice coordinates are dropped.
  Patch translated(const ScalarVec& t) const;
  /// Points inside a sub-box.
  Patch restricted(const Box& b) const;
};

/// Sorts points lexicographically and removes duplicates.
void sort_points(std::vector<ScalarVec>& points);

/// Result of a commensurability query: m a = sum n_i g_i with m minimal.
struct Commensurability {
  long long m = 1;
  IntVec n;
  bool heuristic = false;
};

/// Limits for lattice enumeration.
struct EnumerationLimits {
  /// Maximum number of integer candidates inspected before giving up.
  double max_candidates = 2e8;
  /// 0 means CUTPROJECT_THREADS or the hardware concurrency.
  unsigned threads = 0;
};

/// Cut-and-project scheme (R^d, H, L) with L = sum Z (g_i, h_i).
///
/// The real-coordinate matrix M stacks the direct coordinates and the
/// linearized internal coordinates of the generators as columns; it must be
/// square and nonsingular. A lattice point with projection x and star h then
/// has coordinates n = M^-1 (x, L(h)), which bounds every enumeration.
class CutProjectScheme {
 public:
  CutProjectScheme() = default;
  /// `require_injective = false` admits degenerate lattices such as Z^2 in
  /// R x R (identity embedding); enumeration still works, but the star map is
  /// not a function of the projected point.
  CutProjectScheme(std::size_t d, InternalSpace space, std::vector<Generator> generators,
                   bool require_injective = true);

  /// Minkowski embedding of Z[tau]: generators (1, 1) and (tau, tau').
  static CutProjectScheme fibonacci();
  /// Z^2d in R^d x R^d with the identity embedding (not injective).
  static CutProjectScheme square_lattice(std::size_t d);

  std::size_t dim() const noexcept { return d_; }
  std::size_t rank() const noexcept { return gens_.size(); }
  const InternalSpace& space() const noexcept { return space_; }
  const std::vector<Generator>& generators() const noexcept { return gens_; }
  const Matrix& matrix() const noexcept { return m_; }
  bool is_exact() const noexcept { return exact_; }
  /// All direct parts exact (internal parts may be float, e.g. a torus).
  bool direct_exact() const noexcept { return direct_exact_; }
  /// False only for schemes built without the injectivity requirement.
  bool injective_projection() const noexcept { return injective_; }

  ScalarVec direct(const IntVec& n) const;
  HPoint star(const IntVec& n) const;
  LatticePoint point(const IntVec& n) const;

  /// Haar measure of a fundamental domain: |det M| times the kernel mass of
  /// the linearization of H.
  const Scalar& covolume() const noexcept { return covolume_; }
  Scalar density() const { return covolume_.inverse(); }

  /// All lattice points with projection in B and star in W, sorted by
  /// projection. Augmented windows are queried through contains_at.
  std::vector<LatticePoint> enumerate(const Box& b, const Window& w, const EnumerationLimits& limits = {}) const;
  /// Lattice points whose coordinates satisfy |n_i| <= bound on the given
  /// coordinate box, unfiltered.
  std::vector<IntVec> coordinate_box(long long bound) const;
  Patch project_points(const Box& b, const Window& w, bool with_coords = false,
                       const EnumerationLimits& limits = {}) const;

  /// Minimal m <= bound with m a in the projected lattice. Exact data are
  /// solved by rational linear algebra; float data by an integer-relation
  /// search with coefficient bound `bound` (answer tagged heuristic).
  /// Throws CommensurabilityUnknown when the float search is inconclusive.
  std::optional<Commensurability> is_commensurate(const ScalarVec& a, long long bound) const;

  /// Heuristic density test of the internal projection: the stars of
  /// |n_i| <= N hit every probe cell (side 1/4 on [-1,1] for continuous
  /// axes, {-1,0,1} for integer axes, all residues for cyclic ones).
  bool dense_heuristic() const;

  /// FNV-1a hash of the canonical JSON form.
  std::string id() const;

 private:
  std::size_t d_ = 0;
  InternalSpace space_;
  std::vector<Generator> gens_;
  Matrix m_;
  std::vector<std::vector<double>> m_double_;
  std::vector<std::vector<double>> m_inv_double_;
  Scalar covolume_;
  bool exact_ = true;
  bool direct_exact_ = true;
  bool injective_ = true;
};

/// A_n = [-n, n]^d.
Box averaging_box(std::size_t d, long long n);

}  // namespace cutproject
