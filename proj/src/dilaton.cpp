#include "ht/dilaton.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "ht/channels.hpp"
#include "ht/errors.hpp"

namespace ht {

namespace {

void check_params(const DilatonParams& dp) {
  if (!(dp.mass > 0.0) || !std::isfinite(dp.mass)) {
    throw DomainError("black-hole mass must be positive and finite");
  }
  if (!(dp.dilaton >= 0.0)) throw DomainError("dilaton must be nonnegative");
  if (!(dp.dilaton < dp.mass)) {
    std::ostringstream msg;
    msg << "dilaton " << dp.dilaton << " must be below the mass " << dp.mass;
    throw DomainError(msg.str());
  }
  if (!(dp.frequency > 0.0) || !std::isfinite(dp.frequency)) {
    throw DomainError("mode frequency must be positive and finite");
  }
}

void check_damping(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw DomainError("decoherence strength p must lie in [0, 1]");
  }
}

Eigen::Matrix<Complex, 16, 1> to_column(const FockVector16& v) {
  Eigen::Matrix<Complex, 16, 1> col;
  for (int i = 0; i < 16; ++i) col(i) = v[i];
  return col;
}

// Isometry C^2 -> C^16 sending Bob's |0> and |1> to the Kruskal vacuum and
// first excited state.
Eigen::Matrix<Complex, 16, 2> kruskal_isometry(const ModeCoefficients& mc,
                                               const UnruhMode& um) {
  Eigen::Matrix<Complex, 16, 2> v;
  v.col(0) = to_column(kruskal_vacuum(mc));
  v.col(1) = to_column(kruskal_one(mc, um));
  return v;
}

}  // namespace

DilatonParams DilatonParams::make(double mass, double dilaton,
                                  double frequency) {
  DilatonParams dp{mass, dilaton, frequency};
  check_params(dp);
  return dp;
}

double DilatonParams::charge() const { return std::sqrt(2.0 * mass * dilaton); }

ModeCoefficients ModeCoefficients::from_cos_r(double cos_r) {
  if (!(cos_r >= std::numbers::sqrt2 / 2.0 - 1e-15 && cos_r <= 1.0)) {
    throw DomainError("cos r must lie in [1/sqrt(2), 1]");
  }
  return ModeCoefficients{cos_r, std::sqrt(std::max(0.0, 1.0 - cos_r * cos_r))};
}

UnruhMode::UnruhMode(double q_r) : q_r_(q_r) {
  if (!(q_r >= 0.0 && q_r <= 1.0)) {
    throw DomainError("Unruh weight q_R must lie in [0, 1]");
  }
}

double UnruhMode::q_l() const {
  return std::sqrt(std::max(0.0, 1.0 - q_r_ * q_r_));
}

ModeCoefficients mode_coefficients(const DilatonParams& dp) {
  check_params(dp);
  // x = omega / T >= 0, so exp(-x) lies in (0, 1] and never overflows.
  const double x = 8.0 * std::numbers::pi * dp.frequency * (dp.mass - dp.dilaton);
  const double boltzmann = std::exp(-x);
  const double denom = 1.0 + boltzmann;
  ModeCoefficients mc;
  mc.cos_r = 1.0 / std::sqrt(denom);
  mc.sin_r = std::exp(-0.5 * x) / std::sqrt(denom);
  return mc;
}

double hawking_temperature(const DilatonParams& dp) {
  check_params(dp);
  return 1.0 / (8.0 * std::numbers::pi * (dp.mass - dp.dilaton));
}

FockVector16 kruskal_vacuum(const ModeCoefficients& mc) {
  const double c = mc.cos_r;
  const double s = mc.sin_r;
  FockVector16 v{};
  v[fock_index(0, 0, 0, 0)] = c * c;
  v[fock_index(0, 0, 1, 1)] = -s * c;
  v[fock_index(1, 1, 0, 0)] = s * c;
  v[fock_index(1, 1, 1, 1)] = -s * s;
  return v;
}

FockVector16 kruskal_one(const ModeCoefficients& mc, const UnruhMode& um) {
  const double c = mc.cos_r;
  const double s = mc.sin_r;
  FockVector16 v{};
  v[fock_index(1, 0, 0, 0)] = um.q_r() * c;
  v[fock_index(1, 0, 1, 1)] = -um.q_r() * s;
  v[fock_index(1, 1, 0, 1)] = um.q_l() * s;
  v[fock_index(0, 0, 0, 1)] = um.q_l() * c;
  return v;
}

XState bob_horizon_transform(const XState& x, const ModeCoefficients& mc,
                             const UnruhMode& um) {
  return combined_state(x, mc, um, 0.0);
}

XState combined_state(const XState& x, const ModeCoefficients& mc,
                      const UnruhMode& um, double p) {
  check_damping(p);
  const double c2 = mc.cos2();
  const double s2 = mc.sin2();
  const double qr2 = um.q_r() * um.q_r();
  const double ql2 = 1.0 - qr2;
  // Bob's |1><1| keeps weight q_L^2 cos^2 r on the exterior vacuum.
  const double one_to_zero = c2 * ql2;
  const double one_to_one = c2 * qr2 + s2;
  const double coherence = std::sqrt(1.0 - p) * mc.cos_r * um.q_r();

  XState out;
  out.r11 = c2 * x.r11 + one_to_zero * x.r22 + p * (c2 * x.r33 + one_to_zero * x.r44);
  out.r22 = s2 * x.r11 + one_to_one * x.r22 + p * (s2 * x.r33 + one_to_one * x.r44);
  out.r33 = (1.0 - p) * (c2 * x.r33 + one_to_zero * x.r44);
  out.r44 = (1.0 - p) * (s2 * x.r33 + one_to_one * x.r44);
  out.r14 = coherence * x.r14;
  out.r23 = coherence * x.r23;
  return out;
}

DensityMatrix embed_bob_in_kruskal_modes(const DensityMatrix& two_qubit,
                                         const ModeCoefficients& mc,
                                         const UnruhMode& um) {
  if (two_qubit.dim() != 4) throw DimensionError("expected a two-qubit state");
  const auto bob = kruskal_isometry(mc, um);
  ComplexMatrix lift = ComplexMatrix::Zero(32, 4);
  // Alice is the most significant factor.
  lift.block(0, 0, 16, 2) = bob;
  lift.block(16, 2, 16, 2) = bob;
  return DensityMatrix(lift * two_qubit.matrix() * lift.adjoint());
}

XState bob_horizon_transform_bruteforce(const XState& x,
                                        const ModeCoefficients& mc,
                                        const UnruhMode& um) {
  const DensityMatrix full = embed_bob_in_kruskal_modes(x_to_matrix(x), mc, um);
  const std::array<int, 5> dims{2, 2, 2, 2, 2};
  // Alice, particle-out, antiparticle-in, antiparticle-out, particle-in.
  const std::array<int, 2> keep{0, 1};
  return matrix_to_x(partial_trace(full, dims, keep));
}

XState combined_state_bruteforce(const XState& x, const ModeCoefficients& mc,
                                 const UnruhMode& um, double p) {
  check_damping(p);
  const DensityMatrix bob_lifted =
      embed_bob_in_kruskal_modes(x_to_matrix(x), mc, um);
  // Alice -> Alice (x) Environment, identity on the 16 Fock dimensions.
  const ComplexMatrix alice_env = damping_isometry(DampingParams{p});
  ComplexMatrix lift = ComplexMatrix::Zero(64, 32);
  for (int out = 0; out < 4; ++out) {
    for (int in = 0; in < 2; ++in) {
      const Complex w = alice_env(out, in);
      if (w == Complex(0.0)) continue;
      lift.block(16 * out, 16 * in, 16, 16) =
          w * ComplexMatrix::Identity(16, 16);
    }
  }
  const DensityMatrix full(lift * bob_lifted.matrix() * lift.adjoint());
  const std::array<int, 6> dims{2, 2, 2, 2, 2, 2};
  const std::array<int, 2> keep{oracle_space::kAlice,
                                oracle_space::kParticleOut};
  return matrix_to_x(partial_trace(full, dims, keep));
}

}  // namespace ht
