#pragma once

#include <blochtomo/data.hpp>

#include <functional>
#include <vector>

namespace blochtomo {

struct QuadratureSpec {
  int radial_nodes = 64;
  int polar_nodes = 64;
  int azimuthal_nodes = 128;
  bool sine_substitution = true;  // r = sin(psi); plain Gauss-Legendre in r when off

  void validate() const;
  QuadratureSpec doubled() const {
    return {2 * radial_nodes, 2 * polar_nodes, 2 * azimuthal_nodes, sine_substitution};
  }
};

/// Gauss-Legendre nodes/weights on (-1, 1).
struct GaussLegendre {
  std::vector<double> nodes, weights;
};
const GaussLegendre& gauss_legendre(int n);

/// Tanh-sinh quadrature of f over (a, b); handles integrable endpoint
/// singularities. Refines until two successive levels agree to rel_tol.
double tanh_sinh(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-13);

/// Product grid over the unit ball: Gauss-Legendre in psi after r = sin(psi)
/// (the Jacobian soaks up (1-r^2)^(-1/2) boundary singularities),
/// Gauss-Legendre in cos(theta), trapezoid in phi. Point weights carry the
/// full d^3 r measure. The node set is invariant under sign flips of any
/// Cartesian coordinate when azimuthal_nodes is a multiple of 4.
struct BallGrid {
  std::vector<Vec3> points;
  std::vector<double> weights;  // sums to 4*pi/3 up to quadrature error

  explicit BallGrid(const QuadratureSpec& spec);
};

/// Angular grid on the unit sphere surface; weights carry the surface measure.
struct SphereGrid {
  std::vector<Vec3> points;
  std::vector<double> weights;  // sums to 4*pi

  SphereGrid(int polar_nodes, int azimuthal_nodes);
};

}  // namespace blochtomo
