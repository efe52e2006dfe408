#include <blochtomo/priors.hpp>

#include <blochtomo/core.hpp>
#include <blochtomo/quadrature.hpp>

#include <cmath>
#include <limits>
#include <stdexcept>

namespace blochtomo {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// ((1-r^2)^(-1/2) - 1) / r^2, stable down to r = 0.
double chernoff_shape(double r) {
  const double r2 = r * r;
  if (r2 < 1e-8) return 0.5 + 0.375 * r2;
  return std::expm1(-0.5 * std::log1p(-r2)) / r2;
}

PriorClass classify(PriorFamily family, double k, bool entropy_weighted) {
  if (entropy_weighted) return PriorClass::non_monotonic;
  switch (family) {
    case PriorFamily::pure:
    case PriorFamily::chernoff:
      return PriorClass::pure_peaked;
    case PriorFamily::gaussian:
      return PriorClass::monotonic_mixed_biased;
    case PriorFamily::ancilla:
      if (k < 2.0) return PriorClass::pure_peaked;
      if (k == 2.0) return PriorClass::uniform;
      return PriorClass::monotonic_mixed_biased;
  }
  throw std::logic_error("classify: unreachable");
}

}  // namespace

Prior::Prior(PriorFamily family, double k, bool entropy_weighted)
    : family_(family),
      k_(k),
      entropy_weighted_(entropy_weighted),
      class_(classify(family, k, entropy_weighted)) {
  if (family_ == PriorFamily::ancilla && !(k_ > 1.0))
    throw std::domain_error("Prior: ancilla family requires k > 1 (use pure for k = 1)");
  if (family_ == PriorFamily::gaussian && !(k_ > 1.0))
    throw std::domain_error("Prior: gaussian family requires k > 1");
  if (family_ == PriorFamily::pure && entropy_weighted_)
    throw std::domain_error("Prior: entropy weight vanishes identically on pure states");

  if (family_ == PriorFamily::pure) {
    log_norm_ = -std::log(4.0 * M_PI);  // surface density
    return;
  }
  if (!entropy_weighted_) {
    if (family_ == PriorFamily::ancilla) {
      log_norm_ = std::lgamma(k_ + 0.5) - 1.5 * std::log(M_PI) - std::lgamma(k_ - 1.0);
      return;
    }
    if (family_ == PriorFamily::chernoff) {
      log_norm_ = -std::log(2.0 * M_PI * (M_PI - 2.0));
      return;
    }
  }
  // gaussian (ball-truncated) and all entropy-weighted composites
  const double z = tanh_sinh(
      [this](double r) {
        return 4.0 * M_PI * r * r * std::exp(log_radial_weight_unsafe(r));
      },
      0.0, 1.0);
  log_norm_ = -std::log(z);
}

// log shape without the pure-family special case; only valid on (0, 1)
double Prior::log_radial_weight(double rnorm) const {
  if (family_ == PriorFamily::pure)
    return std::abs(rnorm - 1.0) <= 1e-9 ? 0.0 : -kInf;
  if (rnorm > 1.0) return -kInf;
  return log_radial_weight_unsafe(rnorm);
}

double Prior::log_radial_weight_unsafe(double rnorm) const {
  double lw;
  switch (family_) {
    case PriorFamily::ancilla:
      lw = (k_ - 2.0) * std::log1p(-rnorm * rnorm);
      break;
    case PriorFamily::chernoff: {
      const double s = chernoff_shape(rnorm);
      lw = s > 0.0 ? std::log(s) : -kInf;
      break;
    }
    case PriorFamily::gaussian:
      lw = -(k_ + 0.5) * rnorm * rnorm;
      break;
    default:
      throw std::logic_error("log_radial_weight: unreachable");
  }
  if (entropy_weighted_) {
    const double s = entropy_radial(std::min(rnorm, 1.0));
    lw += s > 0.0 ? std::log(s) : -kInf;
  }
  return lw;
}

double Prior::radial_density(double rnorm) const {
  if (family_ == PriorFamily::pure)
    return std::abs(rnorm - 1.0) <= 1e-9 ? 0.25 / M_PI : 0.0;
  if (rnorm >= 1.0) return 0.0;
  return std::exp(log_radial_weight_unsafe(rnorm) + log_norm_);
}

double Prior::mean_squared_radius() const {
  if (entropy_weighted_) return mean_squared_radius_quadrature();
  switch (family_) {
    case PriorFamily::pure:
      return 1.0;
    case PriorFamily::ancilla:
      return 3.0 / (2.0 * k_ + 1.0);
    default:
      return mean_squared_radius_quadrature();
  }
}

double Prior::mean_squared_radius_quadrature() const {
  if (family_ == PriorFamily::pure) return 1.0;
  return tanh_sinh(
      [this](double r) { return 4.0 * M_PI * r * r * r * r * radial_density(r); }, 0.0,
      1.0);
}

Prior Prior::ancilla(double k) { return Prior(PriorFamily::ancilla, k, false); }
Prior Prior::hilbert_schmidt() { return Prior(PriorFamily::ancilla, 2.0, false); }
Prior Prior::bures() { return Prior(PriorFamily::ancilla, 1.5, false); }
Prior Prior::pure() { return Prior(PriorFamily::pure, 1.0, false); }
Prior Prior::chernoff() { return Prior(PriorFamily::chernoff, 0.0, false); }
Prior Prior::gaussian(double k) { return Prior(PriorFamily::gaussian, k, false); }

Prior Prior::with_entropy() const { return Prior(family_, k_, true); }

Prior Prior::parse(const std::string& name) {
  std::string base = name;
  bool ent = false;
  const std::string suffix = "+entropy";
  if (base.size() > suffix.size() &&
      base.compare(base.size() - suffix.size(), suffix.size(), suffix) == 0) {
    ent = true;
    base.resize(base.size() - suffix.size());
  }
  Prior p = [&base]() {
    if (base == "hs") return hilbert_schmidt();
    if (base == "bures") return bures();
    if (base == "pure") return pure();
    if (base == "chernoff") return chernoff();
    if (base.rfind("ancilla:", 0) == 0) return ancilla(std::stod(base.substr(8)));
    if (base.rfind("gaussian:", 0) == 0) return gaussian(std::stod(base.substr(9)));
    throw std::invalid_argument("unknown prior name: " + base);
  }();
  return ent ? p.with_entropy() : p;
}

std::string Prior::name() const {
  std::string base;
  switch (family_) {
    case PriorFamily::pure:
      base = "pure";
      break;
    case PriorFamily::chernoff:
      base = "chernoff";
      break;
    case PriorFamily::gaussian:
      base = "gaussian:" + std::to_string(k_);
      break;
    case PriorFamily::ancilla:
      if (k_ == 2.0) base = "hs";
      else if (k_ == 1.5) base = "bures";
      else base = "ancilla:" + std::to_string(k_);
      break;
  }
  return entropy_weighted_ ? base + "+entropy" : base;
}

double bures_s_coordinate(double rnorm) {
  if (!(rnorm >= 0.0 && rnorm <= 1.0))
    throw std::domain_error("bures_s_coordinate: r must be in [0, 1]");
  const double v = std::asin(rnorm) - rnorm * std::sqrt(1.0 - rnorm * rnorm);
  return std::cbrt(2.0 / M_PI * v);
}

}  // namespace blochtomo
