#include <blochtomo/bme.hpp>

#include <blochtomo/core.hpp>

#include <cmath>
#include <limits>
#include <stdexcept>

namespace blochtomo {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double log_binomial_constant(const CountRecord& c) {
  return log_binomial(c.nx(), c.nx_up) + log_binomial(c.ny(), c.ny_up) +
         log_binomial(c.nz(), c.nz_up);
}

}  // namespace

PosteriorGrid::PosteriorGrid(const Prior& prior, double eta_,
                             const QuadratureSpec& spec)
    : eta(eta_) {
  if (!(eta > 0.0 && eta <= 1.0))
    throw std::domain_error("PosteriorGrid: eta must be in (0, 1]");
  spec.validate();

  if (prior.surface()) {
    SphereGrid grid(spec.polar_nodes, spec.azimuthal_nodes);
    points = std::move(grid.points);
    log_mass.reserve(points.size());
    const double log_density = -std::log(4.0 * M_PI);
    for (double w : grid.weights) log_mass.push_back(std::log(w) + log_density);
  } else {
    BallGrid grid(spec);
    points = std::move(grid.points);
    log_mass.reserve(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
      const double d = prior.radial_density(points[i].norm());
      log_mass.push_back(d > 0.0 ? std::log(grid.weights[i]) + std::log(d) : -kInf);
    }
  }

  axis_logs.resize(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (int ax = 0; ax < 3; ++ax) {
      const double m = eta * points[i][ax];
      axis_logs[i][2 * ax] = std::log1p(m) - std::log(2.0);
      axis_logs[i][2 * ax + 1] = std::log1p(-m) - std::log(2.0);
    }
  }
}

Posterior posterior(const PosteriorGrid& grid, const CountRecord& counts) {
  const std::size_t n = grid.points.size();
  double shift = -kInf;
  for (std::size_t i = 0; i < n; ++i) {
    if (grid.log_mass[i] == -kInf) continue;
    shift = std::max(shift, grid.log_mass[i] +
                                grid.log_likelihood_unnormalized(i, counts));
  }
  if (shift == -kInf)
    throw std::runtime_error("posterior: zero posterior mass on the grid");

  double z = 0.0;
  Vec3 m1 = Vec3::Zero();
  Mat3 m2 = Mat3::Zero();
  for (std::size_t i = 0; i < n; ++i) {
    if (grid.log_mass[i] == -kInf) continue;
    const double l =
        grid.log_mass[i] + grid.log_likelihood_unnormalized(i, counts) - shift;
    if (l < -745.0) continue;
    const double w = std::exp(l);
    z += w;
    m1 += w * grid.points[i];
    m2 += w * grid.points[i] * grid.points[i].transpose();
  }
  Posterior p;
  p.mean = m1 / z;
  p.covariance = m2 / z - p.mean * p.mean.transpose();
  p.log_evidence = shift + std::log(z) + log_binomial_constant(counts);
  return p;
}

FunctionalStats posterior_functional(const PosteriorGrid& grid,
                                     const CountRecord& counts,
                                     const std::function<double(const Vec3&)>& f) {
  const std::size_t n = grid.points.size();
  double shift = -kInf;
  for (std::size_t i = 0; i < n; ++i) {
    if (grid.log_mass[i] == -kInf) continue;
    shift = std::max(shift, grid.log_mass[i] +
                                grid.log_likelihood_unnormalized(i, counts));
  }
  double z = 0.0, s1 = 0.0, s2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (grid.log_mass[i] == -kInf) continue;
    const double l =
        grid.log_mass[i] + grid.log_likelihood_unnormalized(i, counts) - shift;
    if (l < -745.0) continue;
    const double w = std::exp(l);
    const double v = f(grid.points[i]);
    z += w;
    s1 += w * v;
    s2 += w * v * v;
  }
  FunctionalStats out;
  out.mean = s1 / z;
  out.variance = std::max(0.0, s2 / z - out.mean * out.mean);
  return out;
}

FunctionalStats functional_posterior(const CountRecord& counts, const Prior& prior,
                                     const QuadratureSpec& quad,
                                     const std::string& functional, const Vec3& axis,
                                     double eta) {
  const PosteriorGrid grid(prior, eta, quad);
  std::function<double(const Vec3&)> f;
  if (functional == "entropy")
    f = [](const Vec3& r) { return entropy(r); };
  else if (functional == "purity")
    f = [](const Vec3& r) { return purity(r); };
  else if (functional == "qfi")
    f = [](const Vec3& r) { return quantum_fisher_information(r); };
  else if (functional == "operator_expectation") {
    if (std::abs(axis.norm() - 1.0) > 1e-9)
      throw std::domain_error("functional_posterior: axis must be a unit vector");
    f = [axis](const Vec3& r) { return axis.dot(r); };
  } else {
    throw std::invalid_argument("functional_posterior: unknown functional " +
                                functional);
  }
  return posterior_functional(grid, counts, f);
}

Estimate bme(const CountRecord& counts, const Prior& prior, double eta,
             const QuadratureSpec& spec) {
  const PosteriorGrid grid(prior, eta, spec);
  const Posterior p = posterior(grid, counts);
  Estimate e;
  e.method = "bme:" + prior.name();
  e.vector = p.mean;
  e.covariance = p.covariance;
  return e;
}

}  // namespace blochtomo
