#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <blochtomo/core.hpp>

#include <cmath>
#include <limits>

using namespace blochtomo;

TEST_CASE("physicality of bloch vectors") {
  CHECK(is_physical(Vec3(0, 0, 0)));
  CHECK(is_physical(Vec3(0, 0, 1)));
  CHECK(is_physical(Vec3(1, 0, 0).normalized()));
  CHECK(is_physical(Vec3(0.6, 0.0, 0.8)));
  CHECK_FALSE(is_physical(Vec3(0.8, 0.8, 0.0)));
  CHECK_FALSE(is_physical(Vec3(0, 0, 1.001)));
  // points a hair over the sphere are absorbed by the tolerance
  CHECK(is_physical(Vec3(0, 0, 1.0 + 1e-13)));
}

TEST_CASE("trace distance is half the euclidean distance") {
  const Vec3 a(0.1, -0.2, 0.3), b(-0.4, 0.0, 0.5);
  CHECK(trace_distance(a, b) == doctest::Approx(0.5 * (a - b).norm()).epsilon(1e-14));
  CHECK(trace_distance(a, a) == 0.0);
  CHECK(trace_distance(Vec3(0, 0, 1), Vec3(0, 0, -1)) == doctest::Approx(1.0));
}

TEST_CASE("schatten distances") {
  const Vec3 a(0.1, -0.2, 0.3), b(-0.4, 0.0, 0.5);
  const double d = 0.5 * (a - b).norm();
  CHECK(schatten_distance(a, b, 1.0) == doctest::Approx(2.0 * d).epsilon(1e-14));
  CHECK(schatten_distance(a, b, 2.0) ==
        doctest::Approx(std::sqrt(2.0) * d).epsilon(1e-14));
  CHECK(schatten_distance(a, b, 4.0) ==
        doctest::Approx(std::pow(2.0, 0.25) * d).epsilon(1e-14));
}

TEST_CASE("entropy") {
  CHECK(entropy(Vec3(0, 0, 0)) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
  CHECK(entropy(Vec3(0, 0, 1)) == 0.0);
  CHECK(entropy(Vec3(0.6, 0, 0)) ==
        doctest::Approx(0.5004024235381879).epsilon(1e-14));
  CHECK(entropy_radial(0.6) == doctest::Approx(0.5004024235381879).epsilon(1e-14));
  // depends only on the radius
  CHECK(entropy(Vec3(0, 0.6, 0)) == doctest::Approx(entropy(Vec3(0.6, 0, 0))));
}

TEST_CASE("purity and fisher information") {
  CHECK(purity(Vec3(0, 0, 0)) == doctest::Approx(0.5));
  CHECK(purity(Vec3(0, 0, 1)) == doctest::Approx(1.0));
  CHECK(purity(Vec3(0.3, 0.4, 0.0)) == doctest::Approx(0.625).epsilon(1e-14));
  CHECK(quantum_fisher_information(Vec3(0.3, 0.4, 0.0)) ==
        doctest::Approx(0.25).epsilon(1e-14));
  CHECK(quantum_fisher_information(Vec3(0, 0, 1)) == doctest::Approx(1.0));
}

TEST_CASE("wigner function") {
  CHECK(wigner(Vec3(0.2, 0.3, 0.4), 1.0, 2.0) ==
        doctest::Approx(0.3292491231286375).epsilon(1e-14));
  // integrates to 1/sqrt(2 pi) * sqrt(pi/2) ... sanity: at the origin it is
  // isotropic with value 1/sqrt(8 pi)
  CHECK(wigner(Vec3(0, 0, 0), 0.3, 0.7) ==
        doctest::Approx(1.0 / std::sqrt(8.0 * M_PI)).epsilon(1e-14));
}

TEST_CASE("log binomial") {
  CHECK(log_binomial(30, 15) ==
        doctest::Approx(std::log(155117520.0)).epsilon(1e-12));
  CHECK(log_binomial(5, 0) == doctest::Approx(0.0));
  CHECK(log_binomial(5, 5) == doctest::Approx(0.0));
  CHECK(log_binomial(4, 2) == doctest::Approx(std::log(6.0)).epsilon(1e-14));
  // out-of-range k means an impossible outcome, not an error
  CHECK(log_binomial(5, 6) == -std::numeric_limits<double>::infinity());
  CHECK(log_binomial(5, -1) == -std::numeric_limits<double>::infinity());
}

TEST_CASE("outcome probability: balanced counts at the origin") {
  const CountRecord c{15, 15, 15, 15, 15, 15};
  CHECK(outcome_probability(c, Vec3(0, 0, 0)) ==
        doctest::Approx(0.0030149696748394661).epsilon(1e-12));
}

TEST_CASE("log outcome probability oracles") {
  const CountRecord c1{29, 1, 25, 5, 15, 15};
  CHECK(log_outcome_probability(c1, Vec3(0.8, 0.5, 0.0)) ==
        doctest::Approx(-6.147948734885222).epsilon(1e-12));
  CHECK(log_outcome_probability(c1, Vec3(0.7, 0.4, 0.1), 0.9) ==
        doctest::Approx(-9.746960516015283).epsilon(1e-12));
}

TEST_CASE("depolarizing channel folds into the state") {
  const CountRecord c{20, 10, 12, 18, 25, 5};
  const Vec3 r(0.4, -0.3, 0.6);
  const double eta = 0.85;
  CHECK(log_outcome_probability(c, r, eta) ==
        doctest::Approx(log_outcome_probability(c, eta * r, 1.0)).epsilon(1e-14));
}

TEST_CASE("impossible outcomes have zero probability") {
  const CountRecord c{30, 0, 15, 15, 15, 15};
  // nx_down = 0 is fine at r_x = 1, but nx_down > 0 is impossible
  CHECK(std::isfinite(log_outcome_probability(c, Vec3(1, 0, 0))));
  const CountRecord bad{29, 1, 15, 15, 15, 15};
  CHECK(log_outcome_probability(bad, Vec3(1, 0, 0)) ==
        -std::numeric_limits<double>::infinity());
  CHECK(outcome_probability(bad, Vec3(1, 0, 0)) == 0.0);
}

TEST_CASE("unnormalized log probability differs by the binomial constant") {
  const CountRecord c{20, 10, 12, 18, 25, 5};
  const Vec3 r(0.2, 0.1, -0.3);
  const double lc = log_binomial(30, 20) + log_binomial(30, 12) + log_binomial(30, 25);
  CHECK(log_outcome_probability(c, r) ==
        doctest::Approx(log_outcome_probability_unnormalized(c, r) + lc)
            .epsilon(1e-12));
}

TEST_CASE("outcome probabilities sum to one over the full enumeration") {
  const Vec3 r(0.3, -0.5, 0.7);
  for (double eta : {1.0, 0.8}) {
    double total = 0.0;
    for (const auto& c : enumerate_outcomes(30, 30, 30))
      total += outcome_probability(c, r, eta);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("domain errors") {
  const CountRecord c{15, 15, 15, 15, 15, 15};
  CHECK_THROWS_AS((void)log_outcome_probability(c, Vec3(1.5, 0, 0)),
                  std::domain_error);
  CHECK_THROWS_AS((void)log_outcome_probability(c, Vec3(0, 0, 0), -0.1),
                  std::domain_error);
  CHECK_THROWS_AS((void)log_outcome_probability(c, Vec3(0, 0, 0), 1.1),
                  std::domain_error);
  CHECK_THROWS_AS((void)schatten_distance(Vec3(0, 0, 0), Vec3(0, 0, 1), 0.5),
                  std::domain_error);
  CHECK_THROWS_AS((void)entropy(Vec3(0, 0, 1.5)), std::domain_error);
  CHECK_THROWS_AS((void)purity(Vec3(0, 0, 1.5)), std::domain_error);
}
