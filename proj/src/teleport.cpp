#include "ht/teleport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

namespace ht {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kMaxSweeps = 10000;

// <phi|m|phi> for phi = (U (x) I)|Phi+>, i.e. phi_{ab} = U_{ab} / sqrt(2).
double overlap(const Eigen::Matrix4cd& m, const SuAngles& angles) {
  const Eigen::Vector4cd phi = maximally_entangled_state(angles);
  return (phi.adjoint() * m * phi)(0, 0).real();
}

double& coordinate(SuAngles& a, int k) {
  switch (k) {
    case 0:
      return a.phi;
    case 1:
      return a.theta;
    default:
      return a.psi;
  }
}

// Along any single Euler angle the overlap is A + B cos t + C sin t, so each
// coordinate step is an exact one-dimensional maximization.
double maximize_coordinate(const Eigen::Matrix4cd& m, SuAngles& a, int k) {
  double& t = coordinate(a, k);
  t = 0.0;
  const double at_zero = overlap(m, a);
  t = kPi;
  const double at_pi = overlap(m, a);
  t = 0.5 * kPi;
  const double at_half = overlap(m, a);
  const double mean = 0.5 * (at_zero + at_pi);
  const double b = 0.5 * (at_zero - at_pi);
  const double c = at_half - mean;
  t = std::atan2(c, b);
  return mean + std::hypot(b, c);
}

FefResult ascend(const Eigen::Matrix4cd& m, SuAngles start, double tol) {
  FefResult result;
  result.method = FefMethod::numeric;
  result.achiever = start;
  result.f = overlap(m, start);
  SuAngles current = start;
  double value = result.f;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    const double before = value;
    for (int k = 0; k < 3; ++k) value = maximize_coordinate(m, current, k);
    if (value > result.f) {
      result.f = value;
      result.achiever = current;
    }
    if (value - before <= tol) break;
  }
  return result;
}

// The overlap after horizon transform and damping, as a function of the
// original elements (population part of r22' + r33' plus the coherence).
struct HorizonTerms {
  double singlet_populations = 0.0;  // r22' + r33' before any filter
  double r22_part = 0.0;             // r22'
  double r33_part = 0.0;             // r33'
  double coherence = 0.0;            // r23'
};

HorizonTerms horizon_terms(const XState& x, const ModeCoefficients& mc,
                           const UnruhMode& um, double p) {
  const double c2 = mc.cos2();
  const double s2 = mc.sin2();
  const double qr2 = um.q_r() * um.q_r();
  const double ql2 = um.q_l() * um.q_l();
  HorizonTerms t;
  t.r22_part = s2 * x.r11 + c2 * qr2 * x.r22 + s2 * x.r22 +
               p * (s2 * x.r33 + c2 * qr2 * x.r44 + s2 * x.r44);
  t.r33_part = (1.0 - p) * (c2 * x.r33 + c2 * ql2 * x.r44);
  t.coherence = std::sqrt(1.0 - p) * mc.cos_r * um.q_r() * x.r23;
  t.singlet_populations = t.r22_part + t.r33_part;
  return t;
}

void check_p(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw DomainError("decoherence strength p must lie in [0, 1]");
  }
}

[[noreturn]] void throw_condition(const XState& shared,
                                  const NumericSearch& search) {
  std::ostringstream msg;
  msg << "closed-form fully entangled fraction does not apply (r22+r33 = "
      << shared.r22 + shared.r33 << ", r23 = " << shared.r23 << ")";
  throw ConditionError(msg.str(), fef_numeric(x_to_matrix(shared), search));
}

const SuAngles kSingletAngles{0.0, -kPi, 0.0};

double teleport_fidelity_for_dim(double f, int d) {
  return (f * d + 1.0) / (d + 1.0);
}

}  // namespace

Eigen::Matrix2cd su2_from_angles(const SuAngles& a) {
  const Complex i(0.0, 1.0);
  Eigen::Matrix2cd rz_phi = Eigen::Matrix2cd::Zero();
  rz_phi(0, 0) = std::exp(-i * (0.5 * a.phi));
  rz_phi(1, 1) = std::exp(i * (0.5 * a.phi));
  Eigen::Matrix2cd ry;
  const double c = std::cos(0.5 * a.theta);
  const double s = std::sin(0.5 * a.theta);
  ry << c, -s, s, c;
  Eigen::Matrix2cd rz_psi = Eigen::Matrix2cd::Zero();
  rz_psi(0, 0) = std::exp(-i * (0.5 * a.psi));
  rz_psi(1, 1) = std::exp(i * (0.5 * a.psi));
  return rz_phi * ry * rz_psi;
}

Eigen::Vector4cd maximally_entangled_state(const SuAngles& angles) {
  const Eigen::Matrix2cd u = su2_from_angles(angles);
  Eigen::Vector4cd phi;
  const double norm = std::numbers::sqrt2 / 2.0;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) phi(2 * a + b) = u(a, b) * norm;
  }
  return phi;
}

const std::array<SuAngles, 4>& bell_angles() {
  static const std::array<SuAngles, 4> angles{
      SuAngles{0.0, 0.0, 0.0},              // Phi+
      SuAngles{kPi, 0.0, 0.0},              // Phi-: U ~ Z
      SuAngles{0.5 * kPi, kPi, -0.5 * kPi}, // Psi+: U ~ X
      kSingletAngles,                       // Psi-: U = iY
  };
  return angles;
}

std::array<double, 4> bell_overlaps(const DensityMatrix& m) {
  if (m.dim() != 4) throw DimensionError("expected a two-qubit state");
  const auto& a = m.matrix();
  auto pair = [&](int i, int j, double sign) {
    return 0.5 * (a(i, i).real() + a(j, j).real() +
                  sign * (a(i, j).real() + a(j, i).real()));
  };
  return {pair(0, 3, 1.0), pair(0, 3, -1.0), pair(1, 2, 1.0), pair(1, 2, -1.0)};
}

bool closed_form_applies(const XState& x) {
  const double singlet = x.r22 + x.r33;
  return singlet >= 0.5 - tol::kAlgebraic &&
         x.r23 >= 0.5 * (1.0 - singlet) - tol::kAlgebraic;
}

FefResult fef_x_closed(const XState& x) {
  if (!closed_form_applies(x)) throw_condition(x, NumericSearch{});
  FefResult r;
  r.f = 0.5 * (x.r22 + x.r33 + 2.0 * x.r23);
  r.achiever = kSingletAngles;
  r.method = FefMethod::closed_form;
  return r;
}

FefResult fef_numeric(const DensityMatrix& m, int restarts, std::uint64_t seed,
                      double tol) {
  if (m.dim() != 4) throw DimensionError("expected a two-qubit state");
  const Eigen::Matrix4cd rho = m.matrix();

  FefResult best;
  best.method = FefMethod::numeric;
  best.f = -std::numeric_limits<double>::infinity();
  auto consider = [&](const FefResult& candidate) {
    if (candidate.f > best.f) best = candidate;
  };

  for (const SuAngles& start : bell_angles()) consider(ascend(rho, start, tol));

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
  for (int k = 4; k < restarts; ++k) {
    SuAngles start;
    start.phi = angle(rng);
    start.theta = angle(rng);
    start.psi = angle(rng);
    consider(ascend(rho, start, tol));
  }

  // Certified lower bound: never report less than the best Bell overlap.
  const auto bell = bell_overlaps(m);
  for (int k = 0; k < 4; ++k) {
    if (bell[k] > best.f) {
      best.f = bell[k];
      best.achiever = bell_angles()[k];
    }
  }
  return best;
}

FefResult fef_numeric(const DensityMatrix& m, const NumericSearch& search) {
  return fef_numeric(m, search.restarts, search.seed, search.tol);
}

FidelityResult teleport_fidelity(double f) {
  if (!(f >= -tol::kAlgebraic && f <= 1.0 + tol::kAlgebraic)) {
    std::ostringstream msg;
    msg << "fully entangled fraction " << f << " outside [0, 1]";
    throw DomainError(msg.str());
  }
  f = std::clamp(f, 0.0, 1.0);
  return FidelityResult{teleport_fidelity_for_dim(f, 2), f, 2};
}

FefResult fef_after_horizon(const XState& x, const DilatonParams& dp,
                            const UnruhMode& um, double p,
                            const NumericSearch& fallback_search) {
  check_p(p);
  const ModeCoefficients mc = mode_coefficients(dp);
  const XState shared = combined_state(x, mc, um, p);
  if (!closed_form_applies(shared)) throw_condition(shared, fallback_search);
  const HorizonTerms t = horizon_terms(x, mc, um, p);
  FefResult r;
  r.f = 0.5 * (t.singlet_populations + 2.0 * t.coherence);
  r.achiever = kSingletAngles;
  r.method = FefMethod::closed_form;
  return r;
}

FilteredFefResult fef_after_filter(const XState& x, const DilatonParams& dp,
                                   const UnruhMode& um, double p, double ft,
                                   const NumericSearch& fallback_search) {
  check_p(p);
  const ModeCoefficients mc = mode_coefficients(dp);
  const FilteredState filtered =
      local_filter(combined_state(x, mc, um, p), FilterParams{ft});
  if (!closed_form_applies(filtered.state)) {
    throw_condition(filtered.state, fallback_search);
  }
  // Success probability and overlap in terms of the original elements.
  const double z1 = ft * (1.0 - p) * (x.r33 + x.r44) -
                    (ft - 1.0) * (x.r11 + x.r22 + p * x.r33 + p * x.r44);
  const HorizonTerms t = horizon_terms(x, mc, um, p);
  FilteredFefResult r;
  r.success_probability = z1;
  r.fef.f = ((1.0 - ft) * t.r22_part + ft * t.r33_part +
             2.0 * std::sqrt((1.0 - ft) * ft) * t.coherence) /
            (2.0 * z1);
  r.fef.achiever = kSingletAngles;
  r.fef.method = FefMethod::closed_form;
  return r;
}

FilteredFefResult evaluate_point(const XState& x, const DilatonParams& dp,
                                 const UnruhMode& um, double p,
                                 std::optional<double> ft,
                                 const FallbackPolicy& policy) {
  try {
    if (ft) return fef_after_filter(x, dp, um, p, *ft, policy.search);
    return FilteredFefResult{fef_after_horizon(x, dp, um, p, policy.search), 1.0};
  } catch (const ConditionError& e) {
    if (!policy.numeric_fallback) throw;
    FilteredFefResult r;
    r.fef = e.fallback();
    if (ft) {
      r.success_probability =
          local_filter(combined_state(x, mode_coefficients(dp), um, p),
                       FilterParams{*ft})
              .success_probability;
    }
    return r;
  }
}

DeltaAlphaResult delta_alpha(const XState& x, double mass, double frequency,
                             const UnruhMode& um, double p,
                             std::optional<double> ft, double alpha0,
                             const FallbackPolicy& policy) {
  const DilatonParams at_alpha = DilatonParams::make(mass, alpha0, frequency);
  const DilatonParams at_zero = DilatonParams::make(mass, 0.0, frequency);
  const double f_alpha = evaluate_point(x, at_alpha, um, p, ft, policy).fef.f;
  const double f_zero = evaluate_point(x, at_zero, um, p, ft, policy).fef.f;
  return DeltaAlphaResult{alpha0, f_alpha - f_zero};
}

FilterOptimum optimize_filter(const XState& x, const DilatonParams& dp,
                              const UnruhMode& um, double p, int grid,
                              double refine_tol, const FallbackPolicy& policy) {
  if (grid < 16) throw RangeError("optimize_filter needs at least 16 grid points");
  if (!(refine_tol > 0.0)) throw RangeError("refine_tol must be positive");
  constexpr double kLo = 0.01;
  constexpr double kHi = 0.99;

  struct Sample {
    double ft;
    double f;
    double z1;
  };
  auto sample = [&](double ft) -> std::optional<Sample> {
    try {
      const FilteredFefResult r = evaluate_point(x, dp, um, p, ft, policy);
      return Sample{ft, r.fef.f, r.success_probability};
    } catch (const ZeroProbabilityError&) {
      return std::nullopt;
    }
  };

  std::optional<Sample> best;
  int best_index = -1;
  const double step = (kHi - kLo) / (grid - 1);
  for (int k = 0; k < grid; ++k) {
    const auto s = sample(kLo + k * step);
    if (s && (!best || s->f > best->f)) {
      best = s;
      best_index = k;
    }
  }
  if (!best) {
    throw ZeroProbabilityError("local filter annihilates the state at every ft");
  }

  auto value = [&](double ft) {
    const auto s = sample(ft);
    return s ? s->f : -std::numeric_limits<double>::infinity();
  };
  double lo = std::max(kLo, kLo + (best_index - 1) * step);
  double hi = std::min(kHi, kLo + (best_index + 1) * step);
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = hi - inv_phi * (hi - lo);
  double b = lo + inv_phi * (hi - lo);
  double fa = value(a);
  double fb = value(b);
  while (hi - lo > refine_tol) {
    if (fa >= fb) {
      hi = b;
      b = a;
      fb = fa;
      a = hi - inv_phi * (hi - lo);
      fa = value(a);
    } else {
      lo = a;
      a = b;
      fa = fb;
      b = lo + inv_phi * (hi - lo);
      fb = value(b);
    }
  }
  const auto refined = sample(0.5 * (lo + hi));
  if (refined && refined->f > best->f) best = refined;
  return FilterOptimum{best->ft, best->f, best->z1};
}

std::string to_string(FefMethod method) {
  return method == FefMethod::closed_form ? "closed_form" : "numeric";
}

}  // namespace ht
