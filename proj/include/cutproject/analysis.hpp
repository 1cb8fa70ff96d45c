#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cutproject/scheme.hpp"

namespace cutproject {

/// Direct-space components of generators of the annihilator of the lattice,
/// i.e. of the characters chi with <chi_G, g_i> + chi_H(h_i) in Z for every
/// generator: the rows of M^-1, plus one vector per cyclic factor. Keeps
/// the first `count` generators (0 keeps all). Throws InvalidInput for torus
/// and twisted factors.
std::vector<ScalarVec> annihilator_projection(const CutProjectScheme& scheme, std::size_t count = 0);

/// Point counts on A_n = [-n, n]^d against the density sandwich
/// dens(L) m(W°) - C/n <= count / (2n)^d <= dens(L) m(closure W) + C/n.
struct DensityReport {
  std::vector<long long> n;
  std::vector<std::size_t> counts;
  std::vector<double> empirical;
  Scalar lower;  ///< dens(L) * m(interior W)
  Scalar upper;  ///< dens(L) * m(closure W)
  double boundary_constant = 4.0;
  std::vector<bool> within;

  double correction(std::size_t i) const;
  bool all_within() const;
};

DensityReport empirical_density(const CutProjectScheme& scheme, const Window& w, const std::vector<long long>& n,
                                double boundary_constant = 4.0);

/// (1 / (2n)^d) sum over points of A_n of exp(-2 pi i <chi, x>).
std::complex<double> fourier_bohr(const CutProjectScheme& scheme, const Window& w, const ScalarVec& chi, long long n);
std::complex<double> fourier_bohr(const Patch& patch, const ScalarVec& chi, double volume);

/// Statistics of psi(Lambda_U) on the torus factor of an extended scheme.
struct EquidistributionReport {
  enum class Status { Pass, Inconclusive, Fail };
  Status status = Status::Fail;
  std::size_t points = 0;
  /// Largest |a_chi| over nonzero chi of the dual torus lattice with
  /// |chi| <= chi_bound, and where it occurs.
  double max_coefficient = 0;
  ScalarVec worst_character;
  std::size_t characters = 0;
  /// Cells of side 1/grid in fundamental coordinates hit by some image.
  std::size_t cells = 0;
  std::size_t cells_hit = 0;
  /// Star discrepancy estimate sup |count(box)/N - vol(box)| over grid boxes
  /// anchored at 0.
  double discrepancy = 0;
  double tolerance = 0.05;
};

std::string to_string(EquidistributionReport::Status s);

/// Status is Pass when every cell is hit and the coefficients are below the
/// tolerance, Inconclusive when some cell is empty but there are fewer than
/// min_points_per_cell points per cell, Fail otherwise.
EquidistributionReport equidistribution_check(const CutProjectScheme& scheme, const Window& u, double chi_bound,
                                              long long n, int grid = 8, double tolerance = 0.05,
                                              double min_points_per_cell = 8.0);

/// Outcome of a patch comparison with the first difference found.
struct PatchComparison {
  bool holds = false;
  std::optional<ScalarVec> witness;
  std::string detail;
};

/// A within B. Exact patches are compared exactly; float points match when
/// within eps (matching is injective).
PatchComparison verify_inclusion(const Patch& a, const Patch& b, double eps = 1e-9);
PatchComparison verify_equality(const Patch& a, const Patch& b, double eps = 1e-9);

struct RepetitivityReport {
  bool passed = false;
  std::size_t candidates = 0;
  std::size_t returns = 0;
  /// Centre of a ball of radius R without a return vector.
  std::optional<ScalarVec> witness_center;
};

/// Every closed R-ball centred in the probe box contains a return vector t,
/// i.e. (P - t) agrees with P on K. Candidates are point differences.
/// One-dimensional direct space.
RepetitivityReport repetitivity_check(const std::function<Patch(const Box&)>& source, const Box& k,
                                      const Scalar& radius, const Box& probe);

}  // namespace cutproject
