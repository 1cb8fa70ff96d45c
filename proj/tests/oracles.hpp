#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "cutproject/scheme.hpp"

// Independent reference computations shared by the tests and the acceptance
// binary. None of them goes through CutProjectScheme.

namespace oracles {

using cutproject::Box;
using cutproject::Scalar;
using cutproject::ScalarVec;

inline const Scalar& tau() {
  static const Scalar t = Scalar::parse("tau");
  return t;
}

inline Scalar tau_conj() { return Scalar(1) - tau(); }

/// shift + (a + b tau) over |a|, |b| <= n with the Galois conjugate a + b tau'
/// accepted by `keep`, restricted to the box.
inline std::vector<ScalarVec> fibonacci_points(const Box& box, const std::function<bool(const Scalar&)>& keep,
                                               long long n, const Scalar& shift = Scalar(0)) {
  std::vector<ScalarVec> out;
  for (long long a = -n; a <= n; ++a) {
    for (long long b = -n; b <= n; ++b) {
      const Scalar x = shift + Scalar(a) + Scalar(b) * tau();
      if (!box.contains(ScalarVec{x})) continue;
      if (keep(Scalar(a) + Scalar(b) * tau_conj())) out.push_back({x});
    }
  }
  cutproject::sort_points(out);
  return out;
}

/// Points a + b tau with |x| <= radius whose conjugate lies in a window
/// contained in [lo, hi]; `keep` decides membership exactly. Scans b and the
/// few a that can put the conjugate in [lo, hi].
inline std::vector<ScalarVec> fibonacci_strip(double radius, double lo, double hi,
                                              const std::function<bool(const Scalar&)>& keep) {
  const double tc = tau_conj().to_double();
  const long long bmax = static_cast<long long>((radius + std::max(std::fabs(lo), std::fabs(hi))) / std::sqrt(5.0)) + 2;
  const Scalar r(static_cast<long long>(std::floor(radius)));
  const bool integral = std::floor(radius) == radius;
  std::vector<ScalarVec> out;
  for (long long b = -bmax; b <= bmax; ++b) {
    const long long a0 = static_cast<long long>(std::floor(lo - b * tc)) - 1;
    const long long a1 = static_cast<long long>(std::ceil(hi - b * tc)) + 1;
    for (long long a = a0; a <= a1; ++a) {
      const Scalar x = Scalar(a) + Scalar(b) * tau();
      if (!keep(Scalar(a) + Scalar(b) * tau_conj())) continue;
      if (integral ? compare(x.abs(), r) > 0 : std::fabs(x.to_double()) > radius) continue;
      out.push_back({x});
    }
  }
  cutproject::sort_points(out);
  return out;
}

inline bool same_points(const std::vector<ScalarVec>& a, const std::vector<ScalarVec>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!cutproject::equal(a[i], b[i])) return false;
  return true;
}

}  // namespace oracles
