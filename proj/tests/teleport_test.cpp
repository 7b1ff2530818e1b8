#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include <Eigen/LU>

#include "ht/channels.hpp"
#include "ht/dilaton.hpp"
#include "ht/errors.hpp"
#include "ht/teleport.hpp"
#include "test_support.hpp"

namespace ht {
namespace {

using testing::Rng;

const XState kBell{0.0, 0.5, 0.5, 0.0, 0.0, 0.5};

XState second_figure_state() {
  const double s = std::sqrt(2.0);
  return make_x_state(s - 1.0, 0.5, (3.0 - 2.0 * s) / 2.0, 0.0, 0.0, (s - 1.0) / 2.0);
}

DilatonParams at(double alpha) { return DilatonParams::make(1.0, alpha, 1.0); }

TEST(Su2, AnglesGiveUnitaries) {
  Rng rng(51);
  for (int k = 0; k < 50; ++k) {
    const SuAngles a{testing::uniform(rng, -4, 4), testing::uniform(rng, -4, 4),
                     testing::uniform(rng, -4, 4)};
    const Eigen::Matrix2cd u = su2_from_angles(a);
    EXPECT_LE((u.adjoint() * u - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_NEAR(std::abs(u.determinant() - Complex(1.0)), 0.0, 1e-14);
    const Eigen::Vector4cd phi = maximally_entangled_state(a);
    EXPECT_NEAR(phi.squaredNorm(), 1.0, 1e-14);
    // Maximal entanglement: the reduced state of either side is I/2.
    Eigen::Matrix2cd coeffs;
    coeffs << phi(0), phi(1), phi(2), phi(3);
    EXPECT_LE((coeffs * coeffs.adjoint() - Eigen::Matrix2cd::Identity() / 2.0)
                  .cwiseAbs()
                  .maxCoeff(),
              1e-14);
  }
}

TEST(Su2, BellAnglesHitBellStates) {
  const auto& b = bell_angles();
  const double h = std::numbers::sqrt2 / 2.0;
  const Eigen::Vector4cd phi_plus = maximally_entangled_state(b[0]);
  EXPECT_NEAR(std::abs(phi_plus(0)), h, 1e-15);
  EXPECT_NEAR(std::abs(phi_plus(3)), h, 1e-15);
  const Eigen::Vector4cd psi_minus = maximally_entangled_state(b[3]);
  EXPECT_NEAR(std::abs(psi_minus(1)), h, 1e-15);
  EXPECT_NEAR(std::abs(psi_minus(2)), h, 1e-15);
  EXPECT_NEAR(std::abs(psi_minus(1) + psi_minus(2)), 0.0, 1e-15);
}

TEST(FefClosed, BellStateIsOne) {
  const FefResult r = fef_x_closed(kBell);
  EXPECT_DOUBLE_EQ(r.f, 1.0);
  EXPECT_EQ(r.method, FefMethod::closed_form);
  const Eigen::Vector4cd phi = maximally_entangled_state(r.achiever);
  EXPECT_NEAR(std::norm(phi.dot(x_to_matrix(kBell).matrix() * phi)), 1.0, 1e-14);
}

TEST(FefClosed, MaximallyMixedIsOutsideClosedFormDomain) {
  // r23 = 0 < (1 - r22 - r33) / 2 = 1/4, so the closed form does not apply.
  const XState mixed{0.25, 0.25, 0.25, 0.25, 0.0, 0.0};
  EXPECT_FALSE(closed_form_applies(mixed));
  try {
    fef_x_closed(mixed);
    FAIL() << "expected ConditionError";
  } catch (const ConditionError& e) {
    EXPECT_NEAR(e.fallback().f, 0.25, 1e-15);
  }
}

TEST(FefClosed, BoundaryOfDomainIsInclusive) {
  EXPECT_TRUE(closed_form_applies(XState{0.25, 0.25, 0.25, 0.25, 0.0, 0.25}));
  EXPECT_DOUBLE_EQ(fef_x_closed(XState{0.25, 0.25, 0.25, 0.25, 0.0, 0.25}).f, 0.5);
}

TEST(FefClosed, ConditionErrorCarriesNumericFallback) {
  const XState product{1.0, 0.0, 0.0, 0.0, 0.0, 0.0};
  try {
    fef_x_closed(product);
    FAIL() << "expected ConditionError";
  } catch (const ConditionError& e) {
    EXPECT_EQ(e.fallback().method, FefMethod::numeric);
    EXPECT_NEAR(e.fallback().f, 0.5, 1e-12);
  }
}

TEST(FefClosed, AchieverAttainsValue) {
  Rng rng(52);
  for (int k = 0; k < 50; ++k) {
    const XState x = testing::random_closed_form_x_state(rng);
    const FefResult r = fef_x_closed(x);
    const Eigen::Vector4cd phi = maximally_entangled_state(r.achiever);
    EXPECT_NEAR(phi.dot(x_to_matrix(x).matrix() * phi).real(), r.f, 1e-14);
  }
}

TEST(FefNumeric, TrivialCases) {
  ComplexMatrix bell = ComplexMatrix::Zero(4, 4);
  bell(0, 0) = bell(0, 3) = bell(3, 0) = bell(3, 3) = 0.5;
  EXPECT_NEAR(fef_numeric(DensityMatrix(bell)).f, 1.0, 1e-12);
  EXPECT_NEAR(fef_numeric(DensityMatrix::identity_mixed(4)).f, 0.25, 1e-15);
}

TEST(FefNumeric, AgreesWithClosedFormWhereItApplies) {
  Rng rng(53);
  for (int k = 0; k < 200; ++k) {
    const XState x = testing::random_closed_form_x_state(rng);
    ASSERT_TRUE(closed_form_applies(x));
    const double closed = fef_x_closed(x).f;
    const FefResult numeric = fef_numeric(x_to_matrix(x), 20, 1000 + k, 1e-14);
    EXPECT_NEAR(numeric.f, closed, 1e-6) << k;
    EXPECT_EQ(numeric.method, FefMethod::numeric);
  }
}

TEST(FefNumeric, MatchesMagicBasisOnRandomStates) {
  Rng rng(54);
  for (int k = 0; k < 100; ++k) {
    const DensityMatrix rho = testing::random_density_matrix(rng, 4);
    EXPECT_NEAR(fef_numeric(rho).f, testing::fef_magic_basis(rho), 1e-9) << k;
  }
}

TEST(FefNumeric, MatchesMagicBasisOnRandomXStates) {
  Rng rng(55);
  for (int k = 0; k < 200; ++k) {
    const DensityMatrix rho = x_to_matrix(testing::random_x_state(rng));
    EXPECT_NEAR(fef_numeric(rho).f, testing::fef_magic_basis(rho), 1e-12) << k;
  }
}

TEST(FefNumeric, DominatesBellOverlapsAndQuarter) {
  Rng rng(56);
  for (int k = 0; k < 100; ++k) {
    const DensityMatrix rho = testing::random_density_matrix(rng, 4);
    const auto overlaps = bell_overlaps(rho);
    double sum = 0.0;
    double best = 0.0;
    for (double o : overlaps) {
      sum += o;
      best = std::max(best, o);
    }
    EXPECT_NEAR(sum, 1.0, 1e-14);
    const double f = fef_numeric(rho).f;
    EXPECT_GE(f, best - 1e-15);
    EXPECT_GE(f, 0.25 - 1e-15);
  }
}

TEST(FefNumeric, DeterministicForFixedSeed) {
  Rng rng(57);
  const DensityMatrix rho = testing::random_density_matrix(rng, 4);
  const FefResult a = fef_numeric(rho, 20, 7, 1e-14);
  const FefResult b = fef_numeric(rho, 20, 7, 1e-14);
  EXPECT_EQ(a.f, b.f);
  EXPECT_EQ(a.achiever.phi, b.achiever.phi);
  EXPECT_EQ(a.achiever.theta, b.achiever.theta);
  EXPECT_EQ(a.achiever.psi, b.achiever.psi);
}

TEST(TeleportFidelity, Values) {
  EXPECT_DOUBLE_EQ(teleport_fidelity(1.0).fidelity, 1.0);
  EXPECT_DOUBLE_EQ(teleport_fidelity(0.5).fidelity, 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(teleport_fidelity(0.25).fidelity, 0.5);
  EXPECT_EQ(teleport_fidelity(0.25).d, 2);
  EXPECT_THROW(teleport_fidelity(1.1), DomainError);
  EXPECT_THROW(teleport_fidelity(-0.1), DomainError);
}

TEST(FefAfterHorizon, ReferenceValues) {
  EXPECT_NEAR(fef_after_horizon(kBell, at(0.9), UnruhMode(1.0), 0.0).f, 0.96217, 5e-6);
  EXPECT_NEAR(fef_after_horizon(kBell, at(0.9), UnruhMode(1.0), 0.0).f,
              0.96216884963559735, 1e-13);
}

TEST(FefAfterHorizon, MatchesBruteForcePipelineAndNumericSearch) {
  const ModeCoefficients mc = mode_coefficients(at(0.9));
  const XState brute = combined_state_bruteforce(kBell, mc, UnruhMode(1.0), 0.0);
  const double expected = fef_numeric(x_to_matrix(brute)).f;
  EXPECT_NEAR(fef_after_horizon(kBell, at(0.9), UnruhMode(1.0), 0.0).f, expected, 1e-10);
}

TEST(FefAfterHorizon, FlatNoiselessLimit) {
  // Smallest admissible alpha gives cos r = 1 to machine precision at large omega.
  const auto dp = DilatonParams::make(1.0, 0.0, 10.0);
  EXPECT_EQ(mode_coefficients(dp).cos_r, 1.0);
  EXPECT_DOUBLE_EQ(fef_after_horizon(kBell, dp, UnruhMode(1.0), 0.0).f, 1.0);
}

TEST(FefAfterHorizon, SecondFigureStateFallsBackToNumeric) {
  const XState x = second_figure_state();
  EXPECT_THROW(fef_after_horizon(x, at(0.9), UnruhMode(1.0), 0.4), ConditionError);
  const FilteredFefResult r = evaluate_point(x, at(0.9), UnruhMode(1.0), 0.4, std::nullopt);
  EXPECT_EQ(r.fef.method, FefMethod::numeric);
  EXPECT_NEAR(r.fef.f, 0.44490888629967007, 1e-12);
  const XState shared = combined_state(x, mode_coefficients(at(0.9)), UnruhMode(1.0), 0.4);
  EXPECT_NEAR(r.fef.f, testing::fef_magic_basis(x_to_matrix(shared)), 1e-12);
}

TEST(FefAfterHorizon, ClassicalRegionAtZeroDilaton) {
  const FilteredFefResult r =
      evaluate_point(second_figure_state(), at(0.0), UnruhMode(1.0), 0.4, std::nullopt);
  EXPECT_NEAR(r.fef.f, 0.43616015417393517, 1e-12);
  EXPECT_NEAR(r.fef.f, 0.43617, 2e-5);
  EXPECT_LT(r.fef.f, 0.5);
}

TEST(FefAfterHorizon, DirectFormEqualsComposedForm) {
  Rng rng(58);
  int checked = 0;
  for (int k = 0; k < 2000 && checked < 200; ++k) {
    const XState x = testing::random_closed_form_x_state(rng);
    const auto dp = at(testing::uniform(rng, 0.0, 0.99));
    const UnruhMode um(testing::uniform(rng, 0.8, 1.0));
    const double p = testing::uniform(rng, 0.0, 0.5);
    const XState shared = combined_state(x, mode_coefficients(dp), um, p);
    if (!closed_form_applies(shared)) {
      EXPECT_THROW(fef_after_horizon(x, dp, um, p), ConditionError);
      continue;
    }
    ++checked;
    EXPECT_NEAR(fef_after_horizon(x, dp, um, p).f, fef_x_closed(shared).f, 1e-12);
  }
  EXPECT_GE(checked, 100);
}

TEST(FefAfterFilter, ReferenceValues) {
  const FilteredFefResult r =
      fef_after_filter(second_figure_state(), at(0.9), UnruhMode(1.0), 0.4, 0.9);
  EXPECT_EQ(r.fef.method, FefMethod::closed_form);
  EXPECT_NEAR(r.fef.f, 0.66863489478149674, 1e-12);
  EXPECT_NEAR(r.success_probability, 0.14117749006091432, 1e-14);
  EXPECT_NEAR(r.fef.f, 0.66863, 1e-5);
  EXPECT_NEAR(r.success_probability, 0.14118, 1e-5);
}

TEST(FefAfterFilter, HalfStrengthEqualsUnfiltered) {
  Rng rng(59);
  for (int k = 0; k < 200; ++k) {
    const XState x = testing::random_closed_form_x_state(rng);
    const auto dp = at(testing::uniform(rng, 0.0, 0.99));
    const UnruhMode um(testing::uniform(rng, 0.9, 1.0));
    const double p = testing::uniform(rng, 0.0, 0.2);
    const XState shared = combined_state(x, mode_coefficients(dp), um, p);
    if (!closed_form_applies(shared)) continue;
    EXPECT_NEAR(fef_after_filter(x, dp, um, p, 0.5).fef.f,
                fef_after_horizon(x, dp, um, p).f, 1e-12);
  }
}

TEST(FefAfterFilter, DirectFormEqualsComposedForm) {
  Rng rng(60);
  int checked = 0;
  for (int k = 0; k < 2000 && checked < 200; ++k) {
    const XState x = testing::random_closed_form_x_state(rng);
    const auto dp = at(testing::uniform(rng, 0.0, 0.99));
    const UnruhMode um(testing::uniform(rng, 0.8, 1.0));
    const double p = testing::uniform(rng, 0.0, 0.5);
    const double ft = testing::uniform(rng, 0.01, 0.99);
    const FilteredState filtered = local_filter(combined_state(x, mode_coefficients(dp), um, p), {ft});
    if (!closed_form_applies(filtered.state)) {
      EXPECT_THROW(fef_after_filter(x, dp, um, p, ft), ConditionError);
      continue;
    }
    ++checked;
    const FilteredFefResult r = fef_after_filter(x, dp, um, p, ft);
    EXPECT_NEAR(r.fef.f, fef_x_closed(filtered.state).f, 1e-12);
    EXPECT_NEAR(r.success_probability, filtered.success_probability, 1e-12);
  }
  EXPECT_GE(checked, 100);
}

TEST(FefAfterFilter, ZeroProbability) {
  const XState ground{1.0, 0.0, 0.0, 0.0, 0.0, 0.0};
  EXPECT_THROW(fef_after_filter(ground, at(0.5), UnruhMode(1.0), 0.0, 1.0),
               ZeroProbabilityError);
}

TEST(FefAfterFilter, ImprovesBellStateUnderDamping) {
  for (double alpha : {0.0, 0.3, 0.6, 0.9}) {
    const double filtered =
        evaluate_point(kBell, at(alpha), UnruhMode(1.0), 0.4, 0.7).fef.f;
    const double unfiltered =
        evaluate_point(kBell, at(alpha), UnruhMode(1.0), 0.4, std::nullopt).fef.f;
    EXPECT_GT(filtered, unfiltered) << alpha;
  }
}

TEST(EvaluatePoint, PolicyControlsFallback) {
  FallbackPolicy strict;
  strict.numeric_fallback = false;
  EXPECT_THROW(
      evaluate_point(second_figure_state(), at(0.9), UnruhMode(1.0), 0.4, std::nullopt, strict),
      ConditionError);
  const FilteredFefResult r =
      evaluate_point(kBell, at(0.9), UnruhMode(1.0), 0.0, std::nullopt, strict);
  EXPECT_EQ(r.fef.method, FefMethod::closed_form);
  EXPECT_EQ(r.success_probability, 1.0);
}

TEST(DeltaAlpha, SignPattern) {
  EXPECT_GT(delta_alpha(kBell, 1.0, 1.0, UnruhMode(1.0), 0.9, std::nullopt, 0.9).delta, 0.0);
  EXPECT_LT(delta_alpha(kBell, 1.0, 1.0, UnruhMode(1.0), 0.4, std::nullopt, 0.9).delta, 0.0);
  EXPECT_LT(delta_alpha(kBell, 1.0, 1.0, UnruhMode(1.0), 0.0, std::nullopt, 0.9).delta, 0.0);
}

TEST(DeltaAlpha, ZeroAtOrigin) {
  Rng rng(61);
  for (int k = 0; k < 20; ++k) {
    const XState x = testing::random_x_state(rng);
    EXPECT_EQ(delta_alpha(x, 1.0, 1.0, UnruhMode(0.9), 0.3, std::nullopt, 0.0).delta, 0.0);
  }
}

TEST(DeltaAlpha, MatchesExpandedExpression) {
  Rng rng(62);
  int checked = 0;
  for (int k = 0; k < 4000 && checked < 100; ++k) {
    const XState x = testing::random_x_state(rng);
    const double q = testing::uniform(rng, 0.0, 1.0);
    const double p = testing::uniform(rng, 0.0, 1.0);
    const double alpha0 = testing::uniform(rng, 0.0, 0.99);
    const double omega = testing::uniform(rng, 0.05, 0.5);
    const auto shared_at = [&](double a) {
      return combined_state(x, mode_coefficients(DilatonParams::make(1.0, a, omega)),
                            UnruhMode(q), p);
    };
    if (!closed_form_applies(shared_at(alpha0)) || !closed_form_applies(shared_at(0.0))) continue;
    ++checked;
    FallbackPolicy strict;
    strict.numeric_fallback = false;
    const double d =
        delta_alpha(x, 1.0, omega, UnruhMode(q), p, std::nullopt, alpha0, strict).delta;
    EXPECT_NEAR(d, testing::expanded_delta_alpha(x, 1.0, omega, q, p, alpha0), 1e-12);
  }
  EXPECT_GE(checked, 50);
}

TEST(OptimizeFilter, BellStateIsOptimalUnfiltered) {
  const auto dp = DilatonParams::make(1.0, 0.0, 10.0);
  const FilterOptimum best = optimize_filter(kBell, dp, UnruhMode(1.0), 0.0, 64, 1e-8);
  EXPECT_NEAR(best.f_star, 1.0, 1e-12);
  EXPECT_NEAR(best.z1_star, 0.5, 1e-6);
}

TEST(OptimizeFilter, DominatesHandPickedStrength) {
  const XState x = second_figure_state();
  const FilterOptimum best = optimize_filter(x, at(0.9), UnruhMode(1.0), 0.4, 64, 1e-8);
  const double hand = fef_after_filter(x, at(0.9), UnruhMode(1.0), 0.4, 0.9).fef.f;
  EXPECT_GE(best.f_star, hand);
  EXPECT_GT(best.ft_star, 0.0);
  EXPECT_LT(best.ft_star, 1.0);
  const FilterOptimum again = optimize_filter(x, at(0.9), UnruhMode(1.0), 0.4, 64, 1e-8);
  EXPECT_EQ(best.ft_star, again.ft_star);
  EXPECT_EQ(best.f_star, again.f_star);
  EXPECT_EQ(best.z1_star, again.z1_star);
}

TEST(OptimizeFilter, RejectsCoarseGrid) {
  EXPECT_THROW(optimize_filter(kBell, at(0.5), UnruhMode(1.0), 0.0, 8, 1e-8), RangeError);
}

}  // namespace
}  // namespace ht
