#pragma once

#include <blochtomo/data.hpp>
#include <blochtomo/estimators.hpp>
#include <blochtomo/priors.hpp>
#include <blochtomo/quadrature.hpp>

#include <array>
#include <functional>

namespace blochtomo {

/// Quadrature grid with everything that does not depend on the counts
/// precomputed: per-point log prior mass and the per-axis single-shot
/// log-probabilities. Building one is the expensive step; evaluating a
/// posterior against it is a cheap weighted sum, so reuse the grid across
/// count records.
struct PosteriorGrid {
  std::vector<Vec3> points;
  std::vector<double> log_mass;                 // log(prior density * quad weight)
  std::vector<std::array<double, 6>> axis_logs; // log((1 +- eta*r_i)/2), axis-major
  double eta = 1.0;

  PosteriorGrid(const Prior& prior, double eta, const QuadratureSpec& spec);

  double log_likelihood_unnormalized(std::size_t i, const CountRecord& c) const {
    const auto& a = axis_logs[i];
    return c.nx_up * a[0] + c.nx_down * a[1] + c.ny_up * a[2] + c.ny_down * a[3] +
           c.nz_up * a[4] + c.nz_down * a[5];
  }
};

struct Posterior {
  Vec3 mean = Vec3::Zero();
  Mat3 covariance = Mat3::Zero();
  double log_evidence = 0.0;  // log integral of prior * likelihood (with binomials)
};

Posterior posterior(const PosteriorGrid& grid, const CountRecord& counts);

struct FunctionalStats {
  double mean = 0.0;
  double variance = 0.0;
};

/// Posterior mean and variance of an arbitrary functional of the state.
FunctionalStats posterior_functional(const PosteriorGrid& grid,
                                     const CountRecord& counts,
                                     const std::function<double(const Vec3&)>& f);

/// Named functionals: "entropy", "purity", "qfi", "operator_expectation"
/// (expectation of the spin component along `axis`).
FunctionalStats functional_posterior(const CountRecord& counts, const Prior& prior,
                                     const QuadratureSpec& quad,
                                     const std::string& functional,
                                     const Vec3& axis = Vec3::UnitZ(),
                                     double eta = 1.0);

/// Bayesian mean estimate (always physical, never fails). The returned
/// vector is the platonic state; its covariance rides along.
Estimate bme(const CountRecord& counts, const Prior& prior, double eta = 1.0,
             const QuadratureSpec& spec = {});

}  // namespace blochtomo
