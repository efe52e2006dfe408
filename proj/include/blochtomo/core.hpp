#pragma once

#include <blochtomo/data.hpp>

namespace blochtomo {

inline constexpr double kPhysicalTol = 1e-12;

/// A Bloch vector represents a positive semi-definite state iff |r| <= 1;
/// a tolerance absorbs rounding from solvers that land exactly on the sphere.
bool is_physical(const Vec3& r, double tol = kPhysicalTol);

/// Trace distance between the two qubit states, (1/2)|a - b|.
double trace_distance(const Vec3& a, const Vec3& b);

/// Schatten p-distance between the density matrices, 2^(1/p) * (1/2)|a - b|.
double schatten_distance(const Vec3& a, const Vec3& b, double p);

/// Von Neumann entropy, in [0, ln 2]; the pure-state limit is 0.
double entropy(const Vec3& r);
double entropy_radial(double rnorm);

/// Purity Tr(rho^2) = (1 + r^2)/2.
double purity(const Vec3& r);

/// Quantum Fisher information r^2.
double quantum_fisher_information(const Vec3& r);

/// Spherical Wigner function at direction (theta, phi).
double wigner(const Vec3& r, double theta, double phi);

/// log C(n, k) via lgamma.
double log_binomial(int n, int k);

/// Log-probability of a count record given state r through a depolarizing
/// channel of fidelity eta: three binomials with success rates (1+eta*r_i)/2.
/// Returns -inf for impossible outcomes.
double log_outcome_probability(const CountRecord& c, const Vec3& r, double eta = 1.0);
double outcome_probability(const CountRecord& c, const Vec3& r, double eta = 1.0);

/// Same without the binomial-coefficient constants (enough for maximization).
double log_outcome_probability_unnormalized(const CountRecord& c, const Vec3& r,
                                            double eta = 1.0);

}  // namespace blochtomo
