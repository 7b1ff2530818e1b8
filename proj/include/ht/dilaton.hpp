#pragma once

#include <array>

#include "ht/qstate.hpp"

namespace ht {

// GHS dilaton black-hole inputs in geometric units (G = c = hbar = k_B = 1).
struct DilatonParams {
  double mass = 1.0;
  double dilaton = 0.0;
  double frequency = 1.0;

  // Throws DomainError unless mass > 0, 0 <= dilaton < mass, frequency > 0.
  static DilatonParams make(double mass, double dilaton, double frequency);

  double charge() const;
};

// Bogoliubov weights of the Kruskal-to-Schwarzschild mode mixing.
struct ModeCoefficients {
  double cos_r = 1.0;
  double sin_r = 0.0;

  // Builds a consistent pair from cos r in [1/sqrt(2), 1]; used for the
  // flat-space and symmetric limits.
  static ModeCoefficients from_cos_r(double cos_r);

  double cos2() const { return cos_r * cos_r; }
  double sin2() const { return sin_r * sin_r; }
};

// Unruh-mode weights. q_L is derived from q_R and never stored.
class UnruhMode {
 public:
  explicit UnruhMode(double q_r);

  double q_r() const { return q_r_; }
  double q_l() const;

 private:
  double q_r_;
};

// Amplitudes over |m n m' n'> = |m>+out |n>-in |m'>-out |n'>+in, flat index
// 8m + 4n + 2m' + n'.
using FockVector16 = std::array<Complex, 16>;

constexpr int fock_index(int m, int n, int m_prime, int n_prime) {
  return 8 * m + 4 * n + 2 * m_prime + n_prime;
}

ModeCoefficients mode_coefficients(const DilatonParams& dp);
double hawking_temperature(const DilatonParams& dp);

FockVector16 kruskal_vacuum(const ModeCoefficients& mc);
FockVector16 kruskal_one(const ModeCoefficients& mc, const UnruhMode& um);

// Closed-form reduced state of Alice and the exterior particle mode after
// Bob's qubit is re-expressed in Kruskal modes and the inaccessible modes are
// traced out.
XState bob_horizon_transform(const XState& x, const ModeCoefficients& mc,
                             const UnruhMode& um);

// Same map computed by building the full 32-dimensional Alice (x) Fock state
// and partial-tracing the interior and antiparticle modes.
XState bob_horizon_transform_bruteforce(const XState& x,
                                        const ModeCoefficients& mc,
                                        const UnruhMode& um);

// Horizon transform on Bob plus amplitude damping of strength p on Alice, in
// closed form. Throws DomainError for p outside [0, 1].
XState combined_state(const XState& x, const ModeCoefficients& mc,
                      const UnruhMode& um, double p);

// Full dilation pipeline for combined_state: the 64-dimensional
// Alice (x) Environment (x) Fock space, followed by partial traces over the
// environment and the inaccessible Fock modes.
XState combined_state_bruteforce(const XState& x, const ModeCoefficients& mc,
                                 const UnruhMode& um, double p);

// Factor layout of the brute-force spaces.
namespace oracle_space {
inline constexpr int kAlice = 0;
inline constexpr int kEnvironment = 1;
inline constexpr int kParticleOut = 2;
inline constexpr int kAntiparticleIn = 3;
inline constexpr int kAntiparticleOut = 4;
inline constexpr int kParticleIn = 5;
}  // namespace oracle_space

// Alice (x) Fock16 embedding of a two-qubit state (32 x 32).
DensityMatrix embed_bob_in_kruskal_modes(const DensityMatrix& two_qubit,
                                         const ModeCoefficients& mc,
                                         const UnruhMode& um);

}  // namespace ht
