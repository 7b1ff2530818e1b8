#pragma once

#include <Eigen/Core>

#include "ht/qstate.hpp"

namespace ht {

struct DampingParams {
  double p = 0.0;
};

struct FilterParams {
  double ft = 0.5;
};

// Post-selected state together with the probability that the filter succeeds.
struct FilteredState {
  XState state;
  double success_probability = 1.0;
};

// Smallest success probability for which a filtered state is reported.
inline constexpr double kMinSuccessProbability = 1e-12;

// Amplitude damping on Alice's qubit: |1>_A decays to |0>_A with probability p.
XState amplitude_damp(const XState& x, const DampingParams& dp);

// Stinespring isometry of the damping channel, C^2 -> C^2 (x) C^2 with Alice
// as the most significant factor and the environment second.
Eigen::Matrix<Complex, 4, 2> damping_isometry(const DampingParams& dp);

Eigen::Matrix2d filter_operator(const FilterParams& fp);

// Applies diag(sqrt(1-ft), sqrt(ft)) to Alice and renormalizes. Throws
// ZeroProbabilityError when the unnormalized trace is at or below
// kMinSuccessProbability.
FilteredState local_filter(const XState& x, const FilterParams& fp);

}  // namespace ht
