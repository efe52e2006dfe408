#include <blochtomo/core.hpp>

#include <cmath>
#include <stdexcept>

namespace blochtomo {

bool is_physical(const Vec3& r, double tol) { return r.squaredNorm() <= 1.0 + tol; }

double trace_distance(const Vec3& a, const Vec3& b) { return 0.5 * (a - b).norm(); }

double schatten_distance(const Vec3& a, const Vec3& b, double p) {
  if (!(p >= 1.0)) throw std::domain_error("schatten_distance: p must be >= 1");
  return std::pow(2.0, 1.0 / p) * 0.5 * (a - b).norm();
}

double entropy_radial(double rnorm) {
  if (!(rnorm >= 0.0) || rnorm > 1.0 + kPhysicalTol)
    throw std::domain_error("entropy: |r| must be in [0, 1]");
  const double r = std::min(rnorm, 1.0);
  const double p = 0.5 * (1.0 + r);
  const double q = 0.5 * (1.0 - r);
  double s = 0.0;
  if (p > 0.0) s -= p * std::log(p);
  if (q > 0.0) s -= q * std::log(q);
  return s;
}

double entropy(const Vec3& r) { return entropy_radial(r.norm()); }

double purity(const Vec3& r) {
  const double n2 = r.squaredNorm();
  if (n2 > 1.0 + kPhysicalTol) throw std::domain_error("purity: unphysical state");
  return 0.5 * (1.0 + std::min(n2, 1.0));
}

double quantum_fisher_information(const Vec3& r) {
  const double n2 = r.squaredNorm();
  if (n2 > 1.0 + kPhysicalTol)
    throw std::domain_error("quantum_fisher_information: unphysical state");
  return std::min(n2, 1.0);
}

double wigner(const Vec3& r, double theta, double phi) {
  const Vec3 n(std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
               std::cos(theta));
  return (1.0 + std::sqrt(3.0) * n.dot(r)) / std::sqrt(8.0 * M_PI);
}

double log_binomial(int n, int k) {
  if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

namespace {

// n_up * log((1+c)/2) + n_down * log((1-c)/2), with 0 * log(0) = 0.
double axis_log_term(int n_up, int n_down, double c) {
  double s = 0.0;
  if (n_up > 0) {
    const double p = 0.5 * (1.0 + c);
    if (p <= 0.0) return -std::numeric_limits<double>::infinity();
    s += n_up * std::log(p);
  }
  if (n_down > 0) {
    const double q = 0.5 * (1.0 - c);
    if (q <= 0.0) return -std::numeric_limits<double>::infinity();
    s += n_down * std::log(q);
  }
  return s;
}

}  // namespace

double log_outcome_probability_unnormalized(const CountRecord& c, const Vec3& r,
                                            double eta) {
  return axis_log_term(c.nx_up, c.nx_down, eta * r.x()) +
         axis_log_term(c.ny_up, c.ny_down, eta * r.y()) +
         axis_log_term(c.nz_up, c.nz_down, eta * r.z());
}

double log_outcome_probability(const CountRecord& c, const Vec3& r, double eta) {
  if (!is_physical(r)) throw std::domain_error("outcome_probability: unphysical state");
  if (!(eta >= 0.0 && eta <= 1.0))
    throw std::domain_error("outcome_probability: eta must be in [0, 1]");
  return log_binomial(c.nx(), c.nx_up) + log_binomial(c.ny(), c.ny_up) +
         log_binomial(c.nz(), c.nz_up) + log_outcome_probability_unnormalized(c, r, eta);
}

double outcome_probability(const CountRecord& c, const Vec3& r, double eta) {
  return std::exp(log_outcome_probability(c, r, eta));
}

}  // namespace blochtomo
