#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <blochtomo/estimators.hpp>

#include <cmath>
#include <stdexcept>

using namespace blochtomo;

namespace {
const CountRecord c1{29, 1, 25, 5, 15, 15};
}

TEST_CASE("status names") {
  CHECK(to_string(EstimateStatus::ok) == "ok");
  CHECK(to_string(EstimateStatus::failed_not_unique) == "failed_not_unique");
  CHECK(to_string(EstimateStatus::failed_no_solution) == "failed_no_solution");
}

TEST_CASE("direct inversion") {
  const auto e = direct_inversion(c1);
  CHECK(e.ok());
  CHECK(e.vector.x() == doctest::Approx(28.0 / 30.0).epsilon(1e-15));
  CHECK(e.vector.y() == doctest::Approx(20.0 / 30.0).epsilon(1e-15));
  CHECK(e.vector.z() == 0.0);
  CHECK(e.vector.norm() > 1.0);  // c1 is an unphysical outcome
}

TEST_CASE("scaled direct inversion projects radially") {
  const auto e = scaled_direct_inversion(c1);
  CHECK(e.ok());
  CHECK(e.vector.norm() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(e.vector.x() == doctest::Approx(0.813733471207).epsilon(1e-10));
  CHECK(e.vector.y() == doctest::Approx(0.581238193719).epsilon(1e-10));
  // physical outcomes pass through unchanged
  const CountRecord in{20, 10, 16, 14, 15, 15};
  CHECK((scaled_direct_inversion(in).vector - direct_inversion(in).vector).norm() ==
        doctest::Approx(0.0));
}

TEST_CASE("kl divergence") {
  const Vec3 rd = direct_inversion(c1).vector;
  // vanishes only where the model reproduces the sample means (when physical)
  const CountRecord in{20, 10, 16, 14, 15, 15};
  CHECK(kl_divergence(in, direct_inversion(in).vector) == doctest::Approx(0.0));
  CHECK(kl_divergence(in, Vec3(0.1, 0.1, 0.1)) > 0.0);
  // infinite where an observed outcome has zero probability
  CHECK(std::isinf(kl_divergence(c1, Vec3(-1.0, 0, 0))));
  (void)rd;
}

TEST_CASE("fisher distance") {
  const CountRecord in{20, 10, 16, 14, 15, 15};
  CHECK(fisher_distance(in, direct_inversion(in).vector) == doctest::Approx(0.0));
  CHECK(fisher_distance(in, Vec3(0, 0, 0)) > 0.0);
  // an axis with zero sample error pins its component
  const CountRecord pin{30, 0, 15, 15, 15, 15};
  CHECK(std::isfinite(fisher_distance(pin, Vec3(1.0, 0.1, 0.0))));
  CHECK(std::isinf(fisher_distance(pin, Vec3(0.9, 0.1, 0.0))));
}

TEST_CASE("ridge component oracle values") {
  CHECK(ridge_component(0.9, 0.5) == doctest::Approx(0.7292992756568323).epsilon(1e-12));
  CHECK(ridge_component(0.9, -0.5) == doctest::Approx(0.9480077399790978).epsilon(1e-12));
  CHECK(ridge_component(14.0 / 15.0, 10.751100718755147 / 30.0) ==
        doctest::Approx(0.8479481676094135).epsilon(1e-12));
  CHECK(ridge_component(0.5, -0.9) == doctest::Approx(0.7770649115761646).epsilon(1e-12));
  CHECK(ridge_component(0.9, 31.4) == doctest::Approx(0.02779859646043623).epsilon(1e-10));
  CHECK(ridge_component(0.3, 1e-6) == doctest::Approx(0.2999997270001993).epsilon(1e-13));
  CHECK(ridge_component(0.3, -1.0) == doctest::Approx(0.6694329500821695).epsilon(1e-12));
  CHECK(ridge_component(0.95, -0.999999) ==
        doctest::Approx(0.9830475610924857).epsilon(1e-12));
  CHECK(ridge_component(0.5, -2.3) == doctest::Approx(0.898434317058252).epsilon(1e-12));
  CHECK(ridge_component(0.9, -4.0) == doctest::Approx(0.9887198717411113).epsilon(1e-12));
}

TEST_CASE("ridge component symmetry and limits") {
  CHECK(ridge_component(0.0, 3.0) == 0.0);
  CHECK(ridge_component(0.0, -0.5) == 0.0);
  CHECK(ridge_component(-0.9, 0.5) == doctest::Approx(-ridge_component(0.9, 0.5)));
  CHECK(ridge_component(0.7, 0.0) == doctest::Approx(0.7));
  // continuity across the series/cbrt thresholds
  CHECK(ridge_component(0.4, 1e-9) == doctest::Approx(ridge_component(0.4, 1e-7))
                                          .epsilon(1e-6));
  CHECK(ridge_component(0.4, -1.0 + 1e-9) ==
        doctest::Approx(ridge_component(0.4, -1.0 - 1e-9)).epsilon(1e-6));
  // large alpha pushes the component to zero
  CHECK(std::abs(ridge_component(0.9, 1e6)) < 1e-5);
}

TEST_CASE("ridge norm is monotone in alpha") {
  double prev = mle_ridge(c1, 0.0).norm();
  CHECK(prev == doctest::Approx(direct_inversion(c1).vector.norm()).epsilon(1e-12));
  for (double a : {1.0, 5.0, 10.0, 30.0, 100.0, 1000.0}) {
    const double cur = mle_ridge(c1, a).norm();
    CHECK(cur <= prev + 1e-12);
    prev = cur;
  }
  CHECK(prev < 0.05);
}

TEST_CASE("ridge ambiguity flag") {
  // c1 has a balanced z axis: the branch is ambiguous once alpha/N < -1
  CHECK_FALSE(mle_ridge_ambiguous(c1, 0.0));
  CHECK_FALSE(mle_ridge_ambiguous(c1, -29.9));
  CHECK(mle_ridge_ambiguous(c1, -30.1));
  const CountRecord nobal{29, 1, 25, 5, 16, 14};
  CHECK_FALSE(mle_ridge_ambiguous(nobal, -30.1));
}

TEST_CASE("constrained mle under the flat prior") {
  const auto e = mle(c1, Prior::hilbert_schmidt());
  CHECK(e.ok());
  CHECK(e.vector.x() == doctest::Approx(0.84794816761).epsilon(1e-9));
  CHECK(e.vector.y() == doctest::Approx(0.530079149794).epsilon(1e-9));
  CHECK(e.vector.z() == doctest::Approx(0.0));
  CHECK(e.vector.norm() == doctest::Approx(1.0).epsilon(1e-9));
  REQUIRE(e.alpha.has_value());
  CHECK(*e.alpha == doctest::Approx(10.7511007188).epsilon(1e-8));
}

TEST_CASE("pure-peaked priors share the spherical-shell solution") {
  const auto hs = mle(c1, Prior::hilbert_schmidt());
  for (const auto& p : {Prior::pure(), Prior::bures(), Prior::chernoff()}) {
    CAPTURE(p.name());
    const auto e = mle(c1, p);
    CHECK(e.ok());
    CHECK((e.vector - hs.vector).norm() < 1e-9);
  }
}

TEST_CASE("flat-prior mle keeps interior outcomes at the sample means") {
  const CountRecord in{26, 4, 23, 7, 15, 15};
  const Vec3 rd = direct_inversion(in).vector;
  REQUIRE(rd.norm() < 1.0);
  for (const auto& m : {mle(in, Prior::hilbert_schmidt()),
                        fisher_minimizer(in), scaled_direct_inversion(in)}) {
    CHECK(m.ok());
    CHECK((m.vector - rd).norm() < 1e-10);
  }
}

TEST_CASE("entropy-weighted mle oracle values") {
  const auto hse = mle(c1, Prior::hilbert_schmidt().with_entropy());
  CHECK(hse.ok());
  CHECK(hse.vector.x() == doctest::Approx(0.80040439).epsilon(1e-6));
  CHECK(hse.vector.y() == doctest::Approx(0.4940677).epsilon(1e-6));
  CHECK(*hse.alpha == doctest::Approx(13.8647).epsilon(1e-3));

  const auto be = mle(c1, Prior::bures().with_entropy());
  CHECK(be.vector.x() == doctest::Approx(0.82711433).epsilon(1e-6));
  CHECK(be.vector.y() == doctest::Approx(0.51299428).epsilon(1e-6));

  const auto ce = mle(c1, Prior::chernoff().with_entropy());
  CHECK(ce.vector.x() == doctest::Approx(0.83186977).epsilon(1e-6));
  CHECK(ce.vector.y() == doctest::Approx(0.51667613).epsilon(1e-6));
}

TEST_CASE("mixed-biased mle shrinks towards the origin") {
  const auto g = mle(c1, Prior::gaussian(6.0));
  CHECK(g.ok());
  CHECK(g.vector.norm() < 1.0);
  CHECK(g.alpha.value() > 0.0);
  // stronger concentration near the origin shrinks more
  const auto g2 = mle(c1, Prior::gaussian(20.0));
  CHECK(g2.vector.norm() < g.vector.norm());
}

TEST_CASE("pure-prior mle failures") {
  // two balanced axes: the shell maximum is a full circle
  const CountRecord two_bal{20, 10, 15, 15, 15, 15};
  CHECK(mle(two_bal, Prior::pure()).status == EstimateStatus::failed_not_unique);
  // nearly-balanced record: reaching the shell needs alpha < -N on the
  // balanced axis, where the branch choice is ambiguous
  const CountRecord near_bal{15, 15, 16, 14, 16, 14};
  CHECK(mle(near_bal, Prior::pure()).status == EstimateStatus::failed_not_unique);
}

TEST_CASE("fisher minimizer") {
  const auto e = fisher_minimizer(c1);
  CHECK(e.ok());
  CHECK(e.vector.x() == doctest::Approx(0.866192517441).epsilon(1e-9));
  CHECK(e.vector.y() == doctest::Approx(0.499710438885).epsilon(1e-9));
  CHECK(e.vector.z() == doctest::Approx(0.0));
  CHECK(e.vector.norm() == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(*e.alpha == doctest::Approx(18.0417209622).epsilon(1e-8));
}

TEST_CASE("fisher minimizer with pinned components") {
  // one pinned axis: the remaining components relax to zero in the limit
  const auto lim = fisher_minimizer({30, 0, 25, 5, 15, 15});
  CHECK(lim.ok());
  CHECK(lim.vector.x() == doctest::Approx(1.0));
  CHECK(std::abs(lim.vector.y()) < 1e-10);
  CHECK(std::abs(lim.vector.z()) < 1e-10);
  // two pinned axes exceed the unit norm: no physical minimizer exists
  CHECK(fisher_minimizer({30, 0, 30, 0, 15, 15}).status ==
        EstimateStatus::failed_no_solution);
}

TEST_CASE("noisy-channel estimates report the platonic state") {
  const double eta = 0.9;
  // interior case: the platonic estimate is the rescaled sample mean
  const CountRecord in{20, 10, 16, 14, 15, 15};
  const Vec3 rd = direct_inversion(in).vector;
  REQUIRE((rd / eta).norm() < 1.0);
  const auto e = mle(in, Prior::hilbert_schmidt(), eta);
  CHECK(e.ok());
  CHECK((e.vector - rd / eta).norm() < 1e-10);
  const auto f = fisher_minimizer(in, eta);
  CHECK((f.vector - rd / eta).norm() < 1e-10);
  // boundary case: the measured-coordinate solution lives on the eta-sphere
  const auto b = mle(c1, Prior::hilbert_schmidt(), eta);
  CHECK(b.ok());
  CHECK(b.vector.norm() == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("general-axes mle agrees with the cartesian solver") {
  const AxisSet cart = AxisSet::cartesian();
  const std::vector<std::pair<int, int>> counts = {{29, 1}, {25, 5}, {15, 15}};
  const auto g = general_axes_mle(cart, counts);
  CHECK(g.ok());
  const auto ref = mle(c1, Prior::hilbert_schmidt());
  CHECK((g.vector - ref.vector).norm() < 1e-4);

  const std::vector<std::pair<int, int>> inner = {{26, 4}, {23, 7}, {15, 15}};
  const auto gi = general_axes_mle(cart, inner);
  const CountRecord in{26, 4, 23, 7, 15, 15};
  CHECK((gi.vector - direct_inversion(in).vector).norm() < 1e-8);
}

TEST_CASE("general-axes mle on the tetrahedron") {
  const auto e = general_axes_mle(AxisSet::tetrahedron(),
                                  {{9, 3}, {5, 7}, {8, 4}, {2, 10}});
  CHECK(e.ok());
  CHECK(e.vector.x() == doctest::Approx(0.28867513).epsilon(1e-5));
  CHECK(e.vector.y() == doctest::Approx(0.72168783).epsilon(1e-5));
  CHECK(e.vector.z() == doctest::Approx(-0.14433757).epsilon(1e-5));
}

TEST_CASE("general-axes mle rejects rank-deficient axis sets") {
  // three coplanar axes never pin the out-of-plane component
  const AxisSet degenerate = AxisSet::from_angles(
      {{M_PI / 2, 0.0, 1.0}, {M_PI / 2, M_PI / 2, 1.0}, {M_PI / 2, M_PI / 4, 1.0}});
  const auto e = general_axes_mle(degenerate, {{7, 3}, {3, 7}, {5, 5}});
  CHECK(e.status == EstimateStatus::failed_no_solution);
}
