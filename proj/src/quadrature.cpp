#include <blochtomo/quadrature.hpp>

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace blochtomo {

void QuadratureSpec::validate() const {
  if (radial_nodes < 4 || polar_nodes < 4 || azimuthal_nodes < 4)
    throw std::domain_error("QuadratureSpec: all node counts must be >= 4");
}

namespace {

GaussLegendre compute_gauss_legendre(int n) {
  GaussLegendre gl;
  gl.nodes.resize(n);
  gl.weights.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Newton from the Chebyshev-like initial guess
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    gl.nodes[i] = -x;
    gl.nodes[n - 1 - i] = x;
    gl.weights[i] = gl.weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * pp * pp);
  }
  return gl;
}

}  // namespace

const GaussLegendre& gauss_legendre(int n) {
  if (n < 1) throw std::domain_error("gauss_legendre: n must be >= 1");
  static std::map<int, GaussLegendre> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_gauss_legendre(n)).first;
  return it->second;
}

double tanh_sinh(const std::function<double(double)>& f, double a, double b,
                 double rel_tol) {
  // map (a,b) -> (-1,1), abscissa x = tanh(pi/2 sinh(t))
  const double c = 0.5 * (b - a);
  auto level_sum = [&](double h, int stride_only_odd) {
    double s = 0.0;
    const int jmax = int(std::ceil(6.0 / h));
    for (int j = -jmax; j <= jmax; ++j) {
      if (stride_only_odd && (j % 2 == 0)) continue;
      const double t = j * h;
      const double u = 0.5 * M_PI * std::sinh(t);
      const double w = 0.5 * M_PI * std::cosh(t) / std::pow(std::cosh(u), 2);
      // distance of the abscissa from the nearer endpoint, computed without
      // cancellation: 1 - |tanh(u)| = 2 e^{-2|u|} / (1 + e^{-2|u|})
      const double em = std::exp(-2.0 * std::abs(u));
      const double dist = c * 2.0 * em / (1.0 + em);
      if (dist <= 0.0) continue;
      const double xx = u >= 0.0 ? b - dist : a + dist;
      const double fv = f(xx);
      if (std::isfinite(fv)) s += w * fv;
    }
    return s;
  };
  double h = 0.5;
  double sum = level_sum(h, 0);
  double result = c * h * sum;
  for (int level = 0; level < 10; ++level) {
    h *= 0.5;
    sum += level_sum(h, 1);
    const double next = c * h * sum;
    if (std::abs(next - result) <= rel_tol * (std::abs(next) + 1e-300) && level > 1) {
      return next;
    }
    result = next;
  }
  return result;
}

BallGrid::BallGrid(const QuadratureSpec& spec) {
  spec.validate();
  const auto& glr = gauss_legendre(spec.radial_nodes);
  const auto& glp = gauss_legendre(spec.polar_nodes);
  const int naz = spec.azimuthal_nodes;
  points.reserve(std::size_t(spec.radial_nodes) * spec.polar_nodes * naz);
  weights.reserve(points.capacity());
  for (int i = 0; i < spec.radial_nodes; ++i) {
    double r, wr;
    if (spec.sine_substitution) {
      const double psi = 0.25 * M_PI * (glr.nodes[i] + 1.0);
      r = std::sin(psi);
      // r^2 dr = sin^2(psi) cos(psi) dpsi
      wr = 0.25 * M_PI * glr.weights[i] * r * r * std::cos(psi);
    } else {
      r = 0.5 * (glr.nodes[i] + 1.0);
      wr = 0.5 * glr.weights[i] * r * r;
    }
    for (int j = 0; j < spec.polar_nodes; ++j) {
      const double ct = glp.nodes[j];
      const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
      const double wt = glp.weights[j];
      for (int l = 0; l < naz; ++l) {
        const double phi = 2.0 * M_PI * l / naz;
        points.emplace_back(r * st * std::cos(phi), r * st * std::sin(phi), r * ct);
        weights.push_back(wr * wt * 2.0 * M_PI / naz);
      }
    }
  }
}

SphereGrid::SphereGrid(int polar_nodes, int azimuthal_nodes) {
  if (polar_nodes < 4 || azimuthal_nodes < 4)
    throw std::domain_error("SphereGrid: node counts must be >= 4");
  const auto& glp = gauss_legendre(polar_nodes);
  points.reserve(std::size_t(polar_nodes) * azimuthal_nodes);
  weights.reserve(points.capacity());
  for (int j = 0; j < polar_nodes; ++j) {
    const double ct = glp.nodes[j];
    const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
    for (int l = 0; l < azimuthal_nodes; ++l) {
      const double phi = 2.0 * M_PI * l / azimuthal_nodes;
      points.emplace_back(st * std::cos(phi), st * std::sin(phi), ct);
      weights.push_back(glp.weights[j] * 2.0 * M_PI / azimuthal_nodes);
    }
  }
}

}  // namespace blochtomo
