#pragma once

#include <blochtomo/axis_set.hpp>
#include <blochtomo/data.hpp>
#include <blochtomo/priors.hpp>

#include <optional>
#include <string>
#include <utility>

namespace blochtomo {

enum class EstimateStatus { ok, failed_not_unique, failed_no_solution };

std::string to_string(EstimateStatus s);

struct Estimate {
  Vec3 vector = Vec3::Zero();
  std::string method;
  std::optional<double> alpha;         // Lagrange multiplier, where applicable
  std::optional<Mat3> covariance;
  EstimateStatus status = EstimateStatus::ok;
  bool degenerate_tie = false;         // two posterior maxima within 1e-12

  bool ok() const { return status == EstimateStatus::ok; }
};

/// Component-wise sample means; can land outside the unit ball.
Estimate direct_inversion(const CountRecord& counts);

/// Direct inversion, radially projected back onto the ball if needed.
Estimate scaled_direct_inversion(const CountRecord& counts);

/// D_KL(r_d | r) = log P(r_d) - log P(r); +inf where r assigns zero
/// probability to an observed outcome.
double kl_divergence(const CountRecord& counts, const Vec3& r);

/// Quadratic approximation of the KL divergence with per-axis binomial errors.
double fisher_distance(const CountRecord& counts, const Vec3& r);

/// Component function of the constrained-likelihood ridge: the root of
/// u*x^3 - (1+u)*x + t = 0 that passes through x = t at u = 0.
double ridge_component(double t, double u);

/// Shell-constrained likelihood maximizer r_MLE(alpha); |r| decreases
/// monotonically with alpha, r_MLE(0) = r_d.
Vec3 mle_ridge(const CountRecord& counts, double alpha);

/// True when a component has zero sample mean while alpha/N < -1: the ridge
/// has a branch-cut discontinuity there and the shell maximum is not unique.
bool mle_ridge_ambiguous(const CountRecord& counts, double alpha);

/// Maximum-likelihood estimate under a radial prior; the search strategy
/// dispatches on the prior class. With eta < 1 the platonic state is
/// estimated: the likelihood uses eta*r and the constraint set |r| <= 1
/// becomes |eta*r| <= eta in measured coordinates.
Estimate mle(const CountRecord& counts, const Prior& prior, double eta = 1.0);

/// Minimum-Fisher-distance estimate. Axes with zero sample error pin their
/// component; if the pinned components alone exceed unit norm no estimate
/// exists.
Estimate fisher_minimizer(const CountRecord& counts, double eta = 1.0);

/// Flat-prior MLE for arbitrary measurement axes by projected gradient
/// ascent with deterministic multi-starts. Weights scale each axis's
/// log-likelihood contribution.
Estimate general_axes_mle(const AxisSet& axes,
                          const std::vector<std::pair<int, int>>& counts_per_axis);

}  // namespace blochtomo
