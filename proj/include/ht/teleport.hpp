#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include <Eigen/Core>

#include "ht/channels.hpp"
#include "ht/dilaton.hpp"
#include "ht/errors.hpp"
#include "ht/qstate.hpp"

namespace ht {

// Euler angles of U = Rz(phi) Ry(theta) Rz(psi) in SU(2). The maximally
// entangled state they label is (U (x) I)|Phi+>.
struct SuAngles {
  double phi = 0.0;
  double theta = 0.0;
  double psi = 0.0;
};

Eigen::Matrix2cd su2_from_angles(const SuAngles& angles);
Eigen::Vector4cd maximally_entangled_state(const SuAngles& angles);

// Warm starts for the numeric search: |Phi+>, |Phi->, |Psi+>, |Psi->.
const std::array<SuAngles, 4>& bell_angles();

enum class FefMethod { closed_form, numeric };

struct FefResult {
  double f = 0.0;
  SuAngles achiever;
  FefMethod method = FefMethod::closed_form;
};

struct NumericSearch {
  int restarts = 20;
  std::uint64_t seed = 0x5eedULL;
  double tol = 1e-14;
};

// Raised when the X-state closed form is outside its domain of validity.
// Carries the numerically maximized fully entangled fraction so callers can
// fall back without recomputing.
class ConditionError : public Error {
 public:
  ConditionError(const std::string& what, FefResult fallback)
      : Error(what), fallback_(fallback) {}

  const FefResult& fallback() const { return fallback_; }

 private:
  FefResult fallback_;
};

// r22 + r33 >= 1/2 and r23 >= (1 - r22 - r33) / 2, up to tol::kAlgebraic.
bool closed_form_applies(const XState& x);

// f = (r22 + r33 + 2 r23) / 2, maximized by the singlet. Throws ConditionError
// when closed_form_applies() is false.
FefResult fef_x_closed(const XState& x);

// Multi-start coordinate ascent over SU(2) Euler angles. The four Bell states
// are always among the starting points; the remaining restarts - 4 are drawn
// from a generator seeded with `seed`. Each start is iterated until one full
// sweep improves the overlap by less than `tol`.
FefResult fef_numeric(const DensityMatrix& m, int restarts, std::uint64_t seed,
                      double tol);
FefResult fef_numeric(const DensityMatrix& m, const NumericSearch& search = {});

// Overlaps of m with |Phi+>, |Phi->, |Psi+>, |Psi->.
std::array<double, 4> bell_overlaps(const DensityMatrix& m);

struct FidelityResult {
  double fidelity = 0.0;
  double f = 0.0;
  int d = 2;
};

// F = (2 f + 1) / 3. Throws DomainError for f outside [0, 1].
FidelityResult teleport_fidelity(double f);

// Fully entangled fraction of the state shared after Alice's damping and
// Bob's horizon transform, evaluated directly from the original X-state
// elements.
FefResult fef_after_horizon(const XState& x, const DilatonParams& dp,
                            const UnruhMode& um, double p,
                            const NumericSearch& fallback_search = {});

struct FilteredFefResult {
  FefResult fef;
  double success_probability = 1.0;
};

// As fef_after_horizon with Alice's local filter of strength ft applied last.
FilteredFefResult fef_after_filter(const XState& x, const DilatonParams& dp,
                                   const UnruhMode& um, double p, double ft,
                                   const NumericSearch& fallback_search = {});

struct FallbackPolicy {
  bool numeric_fallback = true;
  NumericSearch search;
};

// One grid point: fef_after_horizon, or fef_after_filter when ft is set.
// With numeric_fallback enabled a ConditionError is absorbed and its fallback
// value returned (method == numeric).
FilteredFefResult evaluate_point(const XState& x, const DilatonParams& dp,
                                 const UnruhMode& um, double p,
                                 std::optional<double> ft,
                                 const FallbackPolicy& policy = {});

struct DeltaAlphaResult {
  double alpha0 = 0.0;
  double delta = 0.0;
};

// f(alpha0) - f(0) at fixed mass and frequency.
DeltaAlphaResult delta_alpha(const XState& x, double mass, double frequency,
                             const UnruhMode& um, double p,
                             std::optional<double> ft, double alpha0,
                             const FallbackPolicy& policy = {});

struct FilterOptimum {
  double ft_star = 0.0;
  double f_star = 0.0;
  double z1_star = 0.0;
};

// Coarse scan of ft over [0.01, 0.99] with `grid` points, then golden-section
// refinement around the best grid point until the bracket is below
// refine_tol. Points where the filter annihilates the state are skipped.
FilterOptimum optimize_filter(const XState& x, const DilatonParams& dp,
                              const UnruhMode& um, double p, int grid,
                              double refine_tol,
                              const FallbackPolicy& policy = {});

std::string to_string(FefMethod method);

}  // namespace ht
