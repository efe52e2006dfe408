#pragma once

#include <blochtomo/data.hpp>

#include <string>

namespace blochtomo {

enum class PriorFamily { ancilla, pure, chernoff, gaussian };

/// How the maximum-likelihood search must treat the prior along the
/// constrained-maximum ridge.
enum class PriorClass {
  pure_peaked,
  monotonic_pure_biased,
  uniform,
  monotonic_mixed_biased,
  non_monotonic,
};

/// Spherically symmetric prior density on the Bloch ball. Immutable; the
/// normalization constant is computed once at construction with
/// singularity-adapted (tanh-sinh) quadrature.
class Prior {
 public:
  static Prior ancilla(double k);  // purification measure C_k, k > 1
  static Prior hilbert_schmidt();  // k = 2, flat in Bloch coordinates
  static Prior bures();            // k = 3/2, Jeffreys prior
  static Prior pure();             // k -> 1+, surface measure on |r| = 1
  static Prior chernoff();
  static Prior gaussian(double k);  // large-k Gaussian approximation of C_k

  /// Composes an entropy weight, C(r) ∝ C(r) * S(r), renormalized.
  Prior with_entropy() const;

  /// CLI names: hs, bures, pure, chernoff, ancilla:<k>, gaussian:<k>;
  /// suffix "+entropy" composes the entropy weight.
  static Prior parse(const std::string& name);
  std::string name() const;

  PriorFamily family() const { return family_; }
  double k() const { return k_; }
  bool entropy_weighted() const { return entropy_weighted_; }
  PriorClass cls() const { return class_; }
  bool surface() const { return family_ == PriorFamily::pure; }

  /// Normalized density in d^3r (surface density for the pure family,
  /// nonzero only on the sphere). Zero outside the ball.
  double density(const Vec3& r) const { return radial_density(r.norm()); }
  double radial_density(double rnorm) const;

  /// log of the unnormalized radial shape; -inf where the density vanishes.
  /// This is what likelihood maximizers need.
  double log_radial_weight(double rnorm) const;

  /// log of the constant completing log_radial_weight to the normalized density.
  double log_normalization() const { return log_norm_; }

  /// <|r|^2> under the prior; analytic 3/(2k+1) for ancilla/pure families,
  /// quadrature otherwise.
  double mean_squared_radius() const;
  double mean_squared_radius_quadrature() const;

 private:
  Prior(PriorFamily family, double k, bool entropy_weighted);
  double log_radial_weight_unsafe(double rnorm) const;

  PriorFamily family_;
  double k_ = 0.0;
  bool entropy_weighted_ = false;
  PriorClass class_;
  double log_norm_ = 0.0;
};

/// Transformed radial coordinate in which the Bures measure is homogeneous.
double bures_s_coordinate(double rnorm);

}  // namespace blochtomo
