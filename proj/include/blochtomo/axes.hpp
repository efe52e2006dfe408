#pragma once

#include <blochtomo/axis_set.hpp>

#include <complex>
#include <map>
#include <utility>

namespace blochtomo {

/// Multipole moment of the weighted axis distribution,
/// s_kq = sum_n c_n * conj(Y_k^q(theta_n, phi_n)), for |q| <= k <= 8.
std::complex<double> multipole_moment(const AxisSet& axes, int k, int q);

/// All moments with 0 <= k <= k_max, |q| <= k.
std::map<std::pair<int, int>, std::complex<double>> moments(const AxisSet& axes,
                                                            int k_max);

struct UniformityReport {
  bool uniform = true;
  int max_even_k = 0;            // largest even multipole order checked
  double worst_abs_moment = 0.0; // largest |s_kq| over even k >= 2
  int worst_k = 0, worst_q = 0;
  std::vector<std::pair<int, double>> per_k;  // (k, max_q |s_kq|) for even k
};

/// An axis set samples spin-j expectation values without directional bias
/// iff every even multipole moment with 2 <= k <= 4j vanishes.
UniformityReport uniformity_check(const AxisSet& axes, double spin = 0.5,
                                  double tol = 1e-10);

/// Mean squared maximum-likelihood error at the maximally mixed state,
/// by exhaustive enumeration of every outcome with `shots` per axis.
/// Failed reconstructions are excluded with renormalization. Throws if the
/// outcome count (shots+1)^(number of axes) exceeds 10^6.
double mle_variance_at_origin(const AxisSet& axes, int shots);

}  // namespace blochtomo
