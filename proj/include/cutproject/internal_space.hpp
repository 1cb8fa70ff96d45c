#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "cutproject/linalg.hpp"
#include "cutproject/scalar.hpp"

namespace cutproject {

struct FactorCoord;

/// Element of an internal space: one coordinate block per factor.
struct HPoint {
  std::vector<FactorCoord> factors;
};

struct RealCoord {
  ScalarVec x;
};
struct IntCoord {
  IntVec k;
};
struct CyclicCoord {
  long long r = 0;
};
/// Torus element in fundamental coordinates u in [0,1)^d, i.e. the point
/// D u of R^d modulo the lattice D Z^d.
struct TorusCoord {
  ScalarVec u;
};
/// Element (h, r) of a twisted cyclic extension, 0 <= r < m.
struct TwistedCoord {
  HPoint base;
  long long r = 0;
};

struct FactorCoord {
  std::variant<RealCoord, IntCoord, CyclicCoord, TorusCoord, TwistedCoord> v;
};

class InternalSpace;

struct RealFactor {
  int dim = 1;
};
struct IntegerFactor {
  int rank = 1;
};
struct CyclicFactor {
  long long q = 2;
};
/// R^d modulo the lattice spanned by the columns of `basis`.
struct TorusFactor {
  int dim = 1;
  Matrix basis;
  Matrix basis_inverse;
  Scalar volume;  // |det basis|
};
/// (base x Z_m, +) with carry: (h1,r1) + (h2,r2) = (h1+h2+b, r1+r2-m) when
/// r1+r2 >= m. Realises (base x Z) / <(b, -m)>.
struct TwistedFactor {
  std::shared_ptr<const InternalSpace> base;
  long long m = 1;
  HPoint twist;
};

struct Factor {
  std::variant<RealFactor, IntegerFactor, CyclicFactor, TorusFactor, TwistedFactor> v;
};

/// One coordinate axis of the flattened view used by windows.
struct Axis {
  enum class Kind { Line, Circle, Integer, Residue };
  Kind kind = Kind::Line;
  long long modulus = 0;     // Residue axes: q or m
  std::size_t factor = 0;    // index of the owning factor
  bool continuous() const { return kind == Kind::Line || kind == Kind::Circle; }
};

/// Coordinate on a flattened axis: `x` for continuous axes, `k` otherwise.
struct AxisValue {
  Scalar x;
  long long k = 0;
};
using FlatPoint = std::vector<AxisValue>;

/// Internal space H as a finite product of concrete factors.
class InternalSpace {
 public:
  InternalSpace() = default;
  explicit InternalSpace(std::vector<Factor> factors);

  static InternalSpace real(int dim = 1);
  static InternalSpace integers(int rank = 1);
  static InternalSpace cyclic(long long q);
  static InternalSpace torus(const Matrix& basis);
  static InternalSpace twisted(const InternalSpace& base, long long m, const HPoint& twist);
  /// Product space with the factors of *this followed by those of other.
  InternalSpace product(const InternalSpace& other) const;

  const std::vector<Factor>& factors() const noexcept { return factors_; }
  bool has_twist() const;
  bool has_torus() const;
  bool has_cyclic() const;

  HPoint zero() const;
  HPoint add(const HPoint& a, const HPoint& b) const;
  HPoint negate(const HPoint& a) const;
  HPoint subtract(const HPoint& a, const HPoint& b) const { return add(a, negate(b)); }
  HPoint scale(const HPoint& a, long long k) const;
  /// Brings residues and torus coordinates into canonical range.
  HPoint reduce(HPoint a) const;
  bool equal(const HPoint& a, const HPoint& b) const;
  /// Total order consistent with equal() in exact mode.
  int compare(const HPoint& a, const HPoint& b) const;
  /// Throws InvalidInput unless `a` has the shape of an element of this space.
  void check(const HPoint& a) const;
  bool is_zero(const HPoint& a) const { return equal(a, zero()); }

  /// Builds a torus coordinate from a vector of R^d (reduced mod the lattice).
  static TorusCoord torus_point(const TorusFactor& f, const ScalarVec& x);
  /// Canonical twisted element (h + floor(n/m) b, n mod m) for (h, n) in base x Z.
  static TwistedCoord twisted_point(const TwistedFactor& f, const HPoint& h, long long n);

  /// Number of real coordinates of the continuous linear part: Real
  /// dimensions plus integer ranks (a twisted factor contributes its base's).
  std::size_t linear_dim() const;
  /// Homomorphism to R^linear_dim(); the twisted residue enters as
  /// (h, r) -> L(h) + (r/m) L(b). Cyclic and torus parts are dropped.
  ScalarVec linearize(const HPoint& a) const;
  /// Size of the kernel of linearize() measured in Haar units:
  /// q for each cyclic factor, m for each twist, |det| for each torus.
  Scalar kernel_mass() const;

  const std::vector<Axis>& axes() const noexcept { return axes_; }
  FlatPoint flatten(const HPoint& a) const;
  HPoint unflatten(const FlatPoint& p) const;
  /// Haar mass of one unit of the flattened axes' product measure: the
  /// product of torus volumes (fundamental coordinates have unit range).
  Scalar measure_scale() const;

  std::string describe() const;
  std::string to_string(const HPoint& a) const;
  friend bool operator==(const InternalSpace& a, const InternalSpace& b);

 private:
  void build_axes();

  std::vector<Factor> factors_;
  std::vector<Axis> axes_;
};

}  // namespace cutproject
