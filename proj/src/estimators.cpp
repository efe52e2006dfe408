#include <blochtomo/estimators.hpp>

#include <blochtomo/core.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace blochtomo {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Vec3 direct_vector(const CountRecord& c) {
  return {sample_mean(c.nx_up, c.nx_down), sample_mean(c.ny_up, c.ny_down),
          sample_mean(c.nz_up, c.nz_down)};
}

Vec3 error_vector(const CountRecord& c) {
  return {sample_error(c.nx_up, c.nx_down), sample_error(c.ny_up, c.ny_down),
          sample_error(c.nz_up, c.nz_down)};
}

// alpha = beta / (1 - |beta|) compactifies the real line onto (-1, 1)
double alpha_of_beta(double beta) { return beta / (1.0 - std::abs(beta)); }

constexpr double kBetaEdge = 1.0 - 1e-12;

}  // namespace

std::string to_string(EstimateStatus s) {
  switch (s) {
    case EstimateStatus::ok: return "ok";
    case EstimateStatus::failed_not_unique: return "failed_not_unique";
    case EstimateStatus::failed_no_solution: return "failed_no_solution";
  }
  return "?";
}

Estimate direct_inversion(const CountRecord& counts) {
  Estimate e;
  e.method = "direct";
  e.vector = direct_vector(counts);
  e.alpha = 0.0;
  return e;
}

Estimate scaled_direct_inversion(const CountRecord& counts) {
  Estimate e;
  e.method = "scaled";
  e.vector = direct_vector(counts);
  const double n = e.vector.norm();
  if (n > 1.0) e.vector /= n;
  return e;
}

double kl_divergence(const CountRecord& counts, const Vec3& r) {
  if (r.cwiseAbs().maxCoeff() > 1.0) return kInf;
  const Vec3 rd = direct_vector(counts);
  const double num = log_outcome_probability_unnormalized(counts, rd);
  const double den = log_outcome_probability_unnormalized(counts, r);
  if (den == -kInf) return kInf;
  return num - den;
}

double fisher_distance(const CountRecord& counts, const Vec3& r) {
  const Vec3 rd = direct_vector(counts);
  const Vec3 err = error_vector(counts);
  double d = 0.0;
  for (int i = 0; i < 3; ++i) {
    const double diff = r[i] - rd[i];
    if (err[i] == 0.0) {
      if (std::abs(diff) > 1e-14) return kInf;
      continue;
    }
    d += 0.5 * (diff / err[i]) * (diff / err[i]);
  }
  return d;
}

double ridge_component(double t, double u) {
  if (t == 0.0) return 0.0;
  const double s = t < 0.0 ? -1.0 : 1.0;
  const double a = std::abs(t);
  double x;
  if (std::abs(u) < 1e-8) {
    x = a * (1.0 - u * (1.0 - a * a));
  } else if (std::abs(u + 1.0) < 1e-8) {
    x = std::cbrt(a);
  } else if (u < -1.0) {
    const double c3 = (u + 1.0) * (u + 1.0) * (u + 1.0);
    const double z = 1.5 * a * std::sqrt(3.0 * u / c3);
    const double scale = 2.0 * std::sqrt((u + 1.0) / (3.0 * u));
    if (z <= 1.0)
      x = scale * std::cos(std::acos(z) / 3.0);
    else
      x = scale * std::cosh(std::acosh(z) / 3.0);
  } else if (u < 0.0) {
    const double c3 = (u + 1.0) * (u + 1.0) * (u + 1.0);
    const double z = 1.5 * a * std::sqrt(-3.0 * u / c3);
    x = 2.0 * std::sqrt((u + 1.0) / (-3.0 * u)) * std::sinh(std::asinh(z) / 3.0);
  } else {
    const double c3 = (u + 1.0) * (u + 1.0) * (u + 1.0);
    const double z = std::min(1.0, 1.5 * a * std::sqrt(3.0 * u / c3));
    x = 2.0 * std::sqrt((u + 1.0) / (3.0 * u)) * std::sin(std::asin(z) / 3.0);
  }
  // polish the cubic u x^3 - (1+u) x + a = 0
  for (int it = 0; it < 3; ++it) {
    const double f = u * x * x * x - (1.0 + u) * x + a;
    const double fp = 3.0 * u * x * x - (1.0 + u);
    if (fp == 0.0) break;
    const double step = f / fp;
    x -= step;
    if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(x))) break;
  }
  return s * x;
}

Vec3 mle_ridge(const CountRecord& counts, double alpha) {
  const Vec3 rd = direct_vector(counts);
  return {ridge_component(rd.x(), alpha / counts.nx()),
          ridge_component(rd.y(), alpha / counts.ny()),
          ridge_component(rd.z(), alpha / counts.nz())};
}

bool mle_ridge_ambiguous(const CountRecord& counts, double alpha) {
  const Vec3 rd = direct_vector(counts);
  const int n[3] = {counts.nx(), counts.ny(), counts.nz()};
  for (int i = 0; i < 3; ++i)
    if (rd[i] == 0.0 && alpha / n[i] < -1.0) return true;
  return false;
}

namespace {

// |r_MLE(alpha)| is monotone non-increasing in alpha; bisect for |r| = radius.
// Returns the alpha in compactified coordinates, or nullopt when the ridge
// stays below the shell for every alpha.
std::optional<double> solve_ridge_radius(const CountRecord& counts, double radius,
                                         double beta_lo, double beta_hi) {
  auto norm_at = [&](double beta) {
    return mle_ridge(counts, alpha_of_beta(beta)).norm();
  };
  if (norm_at(beta_lo) < radius) return std::nullopt;
  if (norm_at(beta_hi) > radius) return std::nullopt;  // can't happen for radius > 0
  double lo = beta_lo, hi = beta_hi;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double n = norm_at(mid);
    if (std::abs(n - radius) < 1e-10 && it > 40) return alpha_of_beta(mid);
    (n > radius ? lo : hi) = mid;
  }
  return alpha_of_beta(0.5 * (lo + hi));
}

struct RidgeObjective {
  const CountRecord& counts;
  const Prior& prior;
  double eta;

  double operator()(double beta) const {
    const Vec3 s = mle_ridge(counts, alpha_of_beta(beta));
    const double lw = prior.log_radial_weight(std::min(s.norm() / eta, 1.0));
    if (lw == -kInf) return -kInf;
    return log_outcome_probability_unnormalized(counts, s) + lw;
  }
};

// Golden-section refinement of a local maximum bracketed by [a, b].
template <typename F>
double golden_max(const F& f, double a, double b) {
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - gr * (b - a), d = a + gr * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 120 && (b - a) > 1e-14; ++it) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

// Bracketing scan over [beta_lo, beta_hi] followed by golden-section on each
// local maximum; ties within 1e-12 resolve to the smaller |r| (larger alpha).
template <typename F>
std::pair<double, bool> scan_maximize(const F& f, double beta_lo, double beta_hi) {
  constexpr int kScan = 256;
  std::vector<double> betas(kScan + 1), vals(kScan + 1);
  for (int i = 0; i <= kScan; ++i) {
    betas[i] = beta_lo + (beta_hi - beta_lo) * i / kScan;
    vals[i] = f(betas[i]);
  }
  std::vector<double> candidates;
  for (int i = 0; i <= kScan; ++i) {
    const double prev = i > 0 ? vals[i - 1] : -kInf;
    const double next = i < kScan ? vals[i + 1] : -kInf;
    if (vals[i] == -kInf || vals[i] < prev || vals[i] < next) continue;
    const double a = i > 0 ? betas[i - 1] : betas[i];
    const double b = i < kScan ? betas[i + 1] : betas[i];
    candidates.push_back(golden_max(f, a, b));
  }
  if (candidates.empty()) return {beta_lo, false};
  double best = candidates[0], best_val = f(best);
  bool tie = false;
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    const double v = f(candidates[i]);
    if (std::abs(v - best_val) < 1e-12 && std::abs(candidates[i] - best) > 1e-9) {
      tie = true;
      if (candidates[i] > best) best = candidates[i];  // larger alpha = smaller |r|
    } else if (v > best_val) {
      best = candidates[i];
      best_val = v;
      tie = false;
    }
  }
  return {best, tie};
}

// beta below which the ridge pokes out of the shell |r| = radius; the
// feasible set is [result, 1).
double feasible_beta_lo(const CountRecord& counts, double radius) {
  if (mle_ridge(counts, alpha_of_beta(-kBetaEdge)).norm() <= radius) return -kBetaEdge;
  double lo = -kBetaEdge, hi = kBetaEdge;
  for (int it = 0; it < 120; ++it) {
    const double mid = 0.5 * (lo + hi);
    (mle_ridge(counts, alpha_of_beta(mid)).norm() > radius ? lo : hi) = mid;
  }
  return hi;
}

}  // namespace

Estimate mle(const CountRecord& counts, const Prior& prior, double eta) {
  if (!(eta > 0.0 && eta <= 1.0)) throw std::domain_error("mle: eta must be in (0, 1]");
  Estimate e;
  e.method = "mle:" + prior.name();
  const Vec3 rd = direct_vector(counts);
  const double radius = eta;  // constraint |r| <= 1 in measured coordinates
  const int n_axis[3] = {counts.nx(), counts.ny(), counts.nz()};

  auto finish = [&](const Vec3& s, std::optional<double> alpha) {
    e.vector = s / eta;
    e.alpha = alpha;
  };

  switch (prior.cls()) {
    case PriorClass::pure_peaked: {
      int zeros = 0;
      for (int i = 0; i < 3; ++i)
        if (rd[i] == 0.0) ++zeros;
      if (zeros >= 2) {
        e.status = EstimateStatus::failed_not_unique;
        return e;
      }
      const auto alpha = solve_ridge_radius(counts, radius, -kBetaEdge, kBetaEdge);
      if (!alpha) {
        e.status = EstimateStatus::failed_no_solution;
        return e;
      }
      for (int i = 0; i < 3; ++i) {
        if (rd[i] == 0.0 && -*alpha > n_axis[i]) {
          e.status = EstimateStatus::failed_not_unique;
          return e;
        }
      }
      finish(mle_ridge(counts, *alpha), *alpha);
      return e;
    }
    case PriorClass::uniform: {
      if (rd.norm() <= radius) {
        finish(rd, 0.0);
        return e;
      }
      const auto alpha = solve_ridge_radius(counts, radius, 0.0, kBetaEdge);
      if (!alpha) {
        e.status = EstimateStatus::failed_no_solution;
        return e;
      }
      finish(mle_ridge(counts, *alpha), *alpha);
      return e;
    }
    case PriorClass::monotonic_pure_biased: {
      const double nd = rd.norm();
      if (nd > radius) {
        const auto alpha = solve_ridge_radius(counts, radius, 0.0, kBetaEdge);
        if (!alpha) {
          e.status = EstimateStatus::failed_no_solution;
          return e;
        }
        finish(mle_ridge(counts, *alpha), *alpha);
        return e;
      }
      if (nd == radius) {
        finish(rd, 0.0);
        return e;
      }
      const RidgeObjective f{counts, prior, eta};
      const auto [beta, tie] = scan_maximize(f, feasible_beta_lo(counts, radius), 0.0);
      e.degenerate_tie = tie;
      finish(mle_ridge(counts, alpha_of_beta(beta)), alpha_of_beta(beta));
      return e;
    }
    case PriorClass::monotonic_mixed_biased:
    case PriorClass::non_monotonic: {
      const RidgeObjective f{counts, prior, eta};
      double beta_lo = feasible_beta_lo(counts, radius);
      if (prior.cls() == PriorClass::monotonic_mixed_biased)
        beta_lo = std::max(beta_lo, 0.0);
      const auto [beta, tie] = scan_maximize(f, beta_lo, kBetaEdge);
      e.degenerate_tie = tie;
      finish(mle_ridge(counts, alpha_of_beta(beta)), alpha_of_beta(beta));
      return e;
    }
  }
  throw std::logic_error("mle: unreachable prior class");
}

Estimate fisher_minimizer(const CountRecord& counts, double eta) {
  if (!(eta > 0.0 && eta <= 1.0))
    throw std::domain_error("fisher_minimizer: eta must be in (0, 1]");
  Estimate e;
  e.method = "fisher";
  const Vec3 rd = direct_vector(counts);
  const Vec3 err = error_vector(counts);
  const double radius = eta;

  if (rd.norm() <= radius) {
    e.vector = rd / eta;
    e.alpha = 0.0;
    return e;
  }

  double pinned_sq = 0.0;
  for (int i = 0; i < 3; ++i)
    if (err[i] == 0.0) pinned_sq += rd[i] * rd[i];
  if (pinned_sq > radius * radius + 1e-12) {
    e.status = EstimateStatus::failed_no_solution;
    return e;
  }
  if (pinned_sq >= radius * radius - 1e-12) {
    // the ridge reaches the shell only as alpha -> inf: free axes go to zero
    Vec3 s = Vec3::Zero();
    for (int i = 0; i < 3; ++i)
      if (err[i] == 0.0) s[i] = rd[i];
    e.vector = s / eta;
    return e;
  }

  auto ridge_at = [&](double beta) {
    const double alpha = alpha_of_beta(beta);
    Vec3 s;
    for (int i = 0; i < 3; ++i) s[i] = rd[i] / (1.0 + alpha * err[i] * err[i]);
    return s;
  };
  double lo = 0.0, hi = kBetaEdge;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double n = ridge_at(mid).norm();
    if (std::abs(n - radius) < 1e-10 && it > 40) {
      lo = hi = mid;
      break;
    }
    (n > radius ? lo : hi) = mid;
  }
  const double beta = 0.5 * (lo + hi);
  e.vector = ridge_at(beta) / eta;
  e.alpha = alpha_of_beta(beta);
  return e;
}

namespace {

double axes_loglik(const AxisSet& axes, const std::vector<std::pair<int, int>>& counts,
                   const Vec3& r) {
  double f = 0.0;
  for (std::size_t i = 0; i < axes.size(); ++i) {
    const double m = axes.axes[i].dot(r);
    const auto [up, down] = counts[i];
    if (up > 0) {
      if (m <= -1.0) return -kInf;
      f += axes.weights[i] * up * std::log1p(m);
    }
    if (down > 0) {
      if (m >= 1.0) return -kInf;
      f += axes.weights[i] * down * std::log1p(-m);
    }
  }
  return f;
}

Vec3 axes_gradient(const AxisSet& axes, const std::vector<std::pair<int, int>>& counts,
                   const Vec3& r) {
  Vec3 g = Vec3::Zero();
  for (std::size_t i = 0; i < axes.size(); ++i) {
    const double m = axes.axes[i].dot(r);
    const auto [up, down] = counts[i];
    g += axes.weights[i] * (up / (1.0 + m) - down / (1.0 - m)) * axes.axes[i];
  }
  return g;
}

Vec3 project_ball(const Vec3& r) {
  const double n = r.norm();
  return n > 1.0 ? Vec3(r / n) : r;
}

}  // namespace

Estimate general_axes_mle(const AxisSet& axes,
                          const std::vector<std::pair<int, int>>& counts_per_axis) {
  if (axes.size() != counts_per_axis.size())
    throw std::invalid_argument("general_axes_mle: axes/counts size mismatch");
  if (axes.size() < 3) throw std::invalid_argument("general_axes_mle: need >= 3 axes");
  for (const auto& [up, down] : counts_per_axis)
    if (up + down < 1) throw std::domain_error("general_axes_mle: empty axis");

  Estimate e;
  e.method = "general_axes_mle";

  Mat3 gram = Mat3::Zero();
  for (std::size_t i = 0; i < axes.size(); ++i)
    gram += axes.weights[i] * axes.axes[i] * axes.axes[i].transpose();
  Eigen::SelfAdjointEigenSolver<Mat3> es(gram);
  if (es.eigenvalues().minCoeff() < 1e-10) {
    e.status = EstimateStatus::failed_no_solution;  // degenerate axis geometry
    return e;
  }

  // deterministic multi-start; the log-likelihood is concave on the open ball
  std::vector<Vec3> starts = {Vec3(0.05, 0.04, 0.03)};
  for (int i = 0; i < 3; ++i) {
    Vec3 v = Vec3::Zero();
    v[i] = 0.5;
    starts.push_back(v);
    starts.push_back(-v);
  }
  {
    // least-squares seed from the per-axis sample means
    Vec3 rhs = Vec3::Zero();
    for (std::size_t i = 0; i < axes.size(); ++i)
      rhs += axes.weights[i] * sample_mean(counts_per_axis[i].first,
                                           counts_per_axis[i].second) * axes.axes[i];
    starts.push_back(project_ball(gram.ldlt().solve(rhs)));
  }

  Vec3 best = Vec3::Zero();
  double best_f = -kInf;
  bool converged_any = false;
  for (const Vec3& s0 : starts) {
    Vec3 r = project_ball(s0);
    double f = axes_loglik(axes, counts_per_axis, r);
    if (f == -kInf) {
      r *= 1.0 - 1e-9;
      f = axes_loglik(axes, counts_per_axis, r);
    }
    double step = 0.5;
    bool converged = false;
    for (int it = 0; it < 2000; ++it) {
      const Vec3 g = axes_gradient(axes, counts_per_axis, r);
      Vec3 pg = g;
      const double n = r.norm();
      if (n >= 1.0 - 1e-12 && g.dot(r) > 0.0) pg = g - g.dot(r) / (n * n) * r;
      if (pg.norm() < 1e-10 * std::max(1.0, std::abs(f))) {
        converged = true;
        break;
      }
      bool moved = false;
      for (int h = 0; h < 60; ++h) {
        const Vec3 cand = project_ball(r + step * g);
        const double fc = axes_loglik(axes, counts_per_axis, cand);
        if (fc > f) {
          r = cand;
          f = fc;
          step *= 2.0;
          moved = true;
          break;
        }
        step *= 0.5;
      }
      if (!moved) {
        converged = true;  // no ascent direction left at float resolution
        break;
      }
    }
    converged_any = converged_any || converged;
    if (f > best_f) {
      best_f = f;
      best = r;
    }
  }
  if (!converged_any || best_f == -kInf) {
    e.status = EstimateStatus::failed_no_solution;
    return e;
  }
  e.vector = best;
  return e;
}

}  // namespace blochtomo
