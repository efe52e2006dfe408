#include <blochtomo/axes.hpp>

#include <blochtomo/core.hpp>
#include <blochtomo/estimators.hpp>

#include <json.hpp>

#include <cmath>
#include <stdexcept>

namespace blochtomo {

AxisSet AxisSet::from_angles(
    const std::vector<std::array<double, 3>>& theta_phi_weight) {
  AxisSet s;
  double total = 0.0;
  for (const auto& [theta, phi, weight] : theta_phi_weight) {
    if (!(weight > 0.0)) throw std::domain_error("AxisSet: weights must be positive");
    s.axes.emplace_back(std::sin(theta) * std::cos(phi),
                        std::sin(theta) * std::sin(phi), std::cos(theta));
    s.weights.push_back(weight);
    total += weight;
  }
  for (double& w : s.weights) w /= total;
  return s;
}

AxisSet AxisSet::cartesian() {
  AxisSet s;
  s.axes = {Vec3::UnitX(), Vec3::UnitY(), Vec3::UnitZ()};
  s.weights = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
  return s;
}

AxisSet AxisSet::tetrahedron() {
  AxisSet s;
  const double c = 1.0 / std::sqrt(3.0);
  s.axes = {Vec3(c, c, c), Vec3(c, -c, -c), Vec3(-c, c, -c), Vec3(-c, -c, c)};
  s.weights = {0.25, 0.25, 0.25, 0.25};
  return s;
}

void AxisSet::validate(double tol) const {
  if (axes.empty() || axes.size() != weights.size())
    throw std::invalid_argument("AxisSet: empty or mismatched axes/weights");
  double total = 0.0;
  for (std::size_t i = 0; i < axes.size(); ++i) {
    if (std::abs(axes[i].norm() - 1.0) > tol)
      throw std::invalid_argument("AxisSet: axis is not a unit vector");
    if (!(weights[i] > 0.0))
      throw std::invalid_argument("AxisSet: weights must be positive");
    total += weights[i];
  }
  if (std::abs(total - 1.0) > tol)
    throw std::invalid_argument("AxisSet: weights must sum to 1");
}

AxisSet axis_set_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  if (!j.is_array() || j.empty())
    throw std::invalid_argument("axis set JSON must be a non-empty array");
  std::vector<std::array<double, 3>> rows;
  for (const auto& item : j) {
    rows.push_back({item.at("theta").get<double>(), item.at("phi").get<double>(),
                    item.value("weight", 1.0)});
  }
  AxisSet s = AxisSet::from_angles(rows);
  s.validate();
  return s;
}

std::complex<double> multipole_moment(const AxisSet& axes, int k, int q) {
  if (k < 0 || k > 8 || std::abs(q) > k)
    throw std::domain_error("multipole_moment: need |q| <= k <= 8");
  if (q < 0) {
    // Y_k^{-q} = (-1)^q conj(Y_k^q)
    const std::complex<double> s = multipole_moment(axes, k, -q);
    return (q % 2 == 0 ? 1.0 : -1.0) * std::conj(s);
  }
  std::complex<double> s = 0.0;
  for (std::size_t n = 0; n < axes.size(); ++n) {
    const Vec3& a = axes.axes[n];
    const double theta = std::acos(std::clamp(a.z(), -1.0, 1.0));
    const double phi = std::atan2(a.y(), a.x());
    const double ylm = std::sph_legendre(static_cast<unsigned>(k),
                                         static_cast<unsigned>(q), theta);
    s += axes.weights[n] * ylm * std::polar(1.0, -q * phi);
  }
  return s;
}

std::map<std::pair<int, int>, std::complex<double>> moments(const AxisSet& axes,
                                                            int k_max) {
  if (k_max < 0 || k_max > 8) throw std::domain_error("moments: need 0 <= k_max <= 8");
  std::map<std::pair<int, int>, std::complex<double>> m;
  for (int k = 0; k <= k_max; ++k)
    for (int q = -k; q <= k; ++q) m[{k, q}] = multipole_moment(axes, k, q);
  return m;
}

UniformityReport uniformity_check(const AxisSet& axes, double spin, double tol) {
  axes.validate();
  if (!(spin > 0.0)) throw std::domain_error("uniformity_check: spin must be positive");
  UniformityReport rep;
  const int k_max = std::min(8, static_cast<int>(std::floor(4.0 * spin + 1e-9)));
  rep.max_even_k = k_max - k_max % 2;
  for (int k = 2; k <= rep.max_even_k; k += 2) {
    double k_worst = 0.0;
    for (int q = 0; q <= k; ++q) {
      const double m = std::abs(multipole_moment(axes, k, q));
      k_worst = std::max(k_worst, m);
      if (m > rep.worst_abs_moment) {
        rep.worst_abs_moment = m;
        rep.worst_k = k;
        rep.worst_q = q;
      }
    }
    rep.per_k.emplace_back(k, k_worst);
  }
  rep.uniform = rep.worst_abs_moment <= tol;
  return rep;
}

double mle_variance_at_origin(const AxisSet& axes, int shots) {
  axes.validate();
  if (shots < 1) throw std::domain_error("mle_variance_at_origin: shots must be >= 1");
  const std::size_t m = axes.size();
  double n_outcomes = std::pow(shots + 1.0, static_cast<double>(m));
  if (n_outcomes > 1e6)
    throw std::domain_error("mle_variance_at_origin: outcome count exceeds 10^6");

  // per-axis binomial pmf at the maximally mixed state
  std::vector<double> pmf(shots + 1);
  for (int n = 0; n <= shots; ++n)
    pmf[n] = std::exp(log_binomial(shots, n) - shots * std::log(2.0));

  std::vector<int> ups(m, 0);
  std::vector<std::pair<int, int>> counts(m);
  double var = 0.0, mass = 0.0;
  for (;;) {
    double p = 1.0;
    for (std::size_t i = 0; i < m; ++i) {
      p *= pmf[ups[i]];
      counts[i] = {ups[i], shots - ups[i]};
    }
    const Estimate e = general_axes_mle(axes, counts);
    if (e.ok()) {
      mass += p;
      var += p * e.vector.squaredNorm();
    }
    std::size_t i = 0;
    while (i < m && ++ups[i] > shots) ups[i++] = 0;
    if (i == m) break;
  }
  if (mass <= 0.0)
    throw std::runtime_error("mle_variance_at_origin: all outcomes failed");
  return var / mass;
}

}  // namespace blochtomo
