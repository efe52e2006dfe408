#pragma once

#include <blochtomo/bme.hpp>
#include <blochtomo/estimators.hpp>
#include <blochtomo/priors.hpp>
#include <blochtomo/quadrature.hpp>

#include <optional>
#include <string>
#include <vector>

namespace blochtomo {

enum class MethodKind { direct, scaled, fisher, mle, bme };

struct MethodSpec {
  MethodKind method = MethodKind::bme;
  std::optional<Prior> prior;          // required for mle/bme, forbidden otherwise
  std::optional<QuadratureSpec> quad;  // bme only

  void validate() const;
  std::string name() const;  // "scaled", "mle:hs", "bme:bures+entropy", ...
  static MethodSpec parse(const std::string& method_name,
                          const std::string& prior_name = "");
};

/// Default quadrature for full-enumeration BME sweeps; coarser than the
/// single-estimate default to keep 29,791-outcome tables tractable.
inline QuadratureSpec reduced_bme_quadrature() { return {32, 32, 64}; }

/// Default state grid for prior-averaged accuracies.
inline QuadratureSpec default_state_grid() { return {24, 24, 48}; }

/// Runs a single estimate; bme uses spec.quad or the full default quadrature.
Estimate run_method(const MethodSpec& spec, const CountRecord& counts,
                    double eta = 1.0);

/// One estimate per enumerated outcome. The table depends only on the counts,
/// never on a hypothesized true state, so it is built once and reused by
/// every sweep. Sign-flip equivariance of all methods is exploited: only
/// canonical outcomes (n_up >= n_down per axis) are solved directly.
struct EstimatorTable {
  MethodSpec spec;
  int n_x = 0, n_y = 0, n_z = 0;
  double eta = 1.0;
  std::vector<Vec3> vectors;  // enumerate_outcomes order
  std::vector<char> failed;

  static EstimatorTable build(const MethodSpec& spec, int n_per_axis,
                              double eta = 1.0, int threads = 0);
  static EstimatorTable build_rect(const MethodSpec& spec, int n_x, int n_y, int n_z,
                                   double eta = 1.0, int threads = 0);
};

struct SweepResult {
  Vec3 mean = Vec3::Zero();
  Mat3 covariance = Mat3::Zero();
  double failure_probability = 0.0;
  double accuracy = 0.0;  // rms trace distance to the seed state
};

/// Probability of each enumerated outcome given the seed vector (product of
/// per-axis binomials). Valid whenever every |seed_i| <= 1, even for
/// unphysical |seed| > 1 as required by the non-parametric bootstrap.
std::vector<double> outcome_weights(const Vec3& seed, double eta, int n_x, int n_y,
                                    int n_z);

/// Exact expectation over all outcomes at the seed state: mean, covariance,
/// and accuracy over non-failed outcomes (weights renormalized), plus the
/// total probability mass of failed outcomes.
SweepResult sweep(const EstimatorTable& table, const Vec3& seed);

/// Bootstrap at a seed vector; parametric mode requires a physical seed,
/// non-parametric mode accepts componentwise-valid unphysical seeds.
SweepResult bootstrap(const Vec3& seed, const MethodSpec& spec, int n_per_axis,
                      double eta = 1.0, bool parametric = true, int threads = 0);

/// Weighted rms trace distance between the true state and the reconstruction.
double accuracy(const EstimatorTable& table, const Vec3& true_state);
double failure_probability(const EstimatorTable& table, const Vec3& true_state);

/// Prior-averaged accuracy over true states: sqrt of the prior-weighted
/// average of accuracy^2, by quadrature over the ball (or the sphere surface
/// for the pure prior).
double averaged_accuracy(const EstimatorTable& table, const Prior& averaging_prior,
                         const QuadratureSpec& state_grid = default_state_grid());

/// Probability that direct inversion lands outside the unit ball.
double unphysical_probability(const Vec3& r, int n_per_axis, double eta = 1.0);

/// 2-D histogram of reconstructed vectors projected into the xy plane,
/// weighted by outcome probability at the seed; out-of-range values land in
/// the edge bins.
struct Histogram2D {
  int bins = 31;
  double lo = -1.0, hi = 1.0;      // both axes
  std::vector<double> mass;        // row-major, x-major: mass[ix*bins + iy]
};
Histogram2D xy_histogram(const EstimatorTable& table, const Vec3& seed,
                         int bins = 31);

// --- golden-report plumbing -------------------------------------------------

struct CellCheck {
  std::string row, column;
  double reference = 0.0, computed = 0.0, tolerance = 0.0;
  bool pass = false;
};

struct ReproduceReport {
  std::string name;
  std::vector<CellCheck> cells;
  bool all_pass() const;
};

/// The published method rows. Table 1 merges the pure-peaked MLE priors into
/// a single row; table 2 lists them separately.
std::vector<MethodSpec> table1_methods();
std::vector<MethodSpec> table2_methods();
std::vector<Vec3> table2_states();

/// Side-by-side reference-vs-computed reports; `which` is one of
/// fig1, fig2, table1, table2, unphysical. `fast` restricts table2 to a
/// documented subset of rows (scaled, fisher, mle:hs, bme:bures).
ReproduceReport reproduce(const std::string& which, bool fast = false,
                          int threads = 0);

}  // namespace blochtomo
