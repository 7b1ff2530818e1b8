#include "ht/channels.hpp"

#include <cmath>
#include <sstream>

#include "ht/errors.hpp"

namespace ht {

namespace {

void check_unit_interval(double v, const char* what) {
  if (!(v >= 0.0 && v <= 1.0)) {
    std::ostringstream msg;
    msg << what << " = " << v << " must lie in [0, 1]";
    throw DomainError(msg.str());
  }
}

}  // namespace

XState amplitude_damp(const XState& x, const DampingParams& dp) {
  check_unit_interval(dp.p, "decoherence strength p");
  const double p = dp.p;
  const double keep = std::sqrt(1.0 - p);
  XState out;
  out.r11 = x.r11 + p * x.r33;
  out.r22 = x.r22 + p * x.r44;
  out.r33 = (1.0 - p) * x.r33;
  out.r44 = (1.0 - p) * x.r44;
  out.r14 = keep * x.r14;
  out.r23 = keep * x.r23;
  return out;
}

Eigen::Matrix<Complex, 4, 2> damping_isometry(const DampingParams& dp) {
  check_unit_interval(dp.p, "decoherence strength p");
  // Rows |a e>: 00, 01, 10, 11. Columns: Alice's input |0>, |1>.
  Eigen::Matrix<Complex, 4, 2> w = Eigen::Matrix<Complex, 4, 2>::Zero();
  w(0, 0) = 1.0;
  w(2, 1) = std::sqrt(1.0 - dp.p);
  w(1, 1) = std::sqrt(dp.p);
  return w;
}

Eigen::Matrix2d filter_operator(const FilterParams& fp) {
  check_unit_interval(fp.ft, "filter strength ft");
  Eigen::Matrix2d m = Eigen::Matrix2d::Zero();
  m(0, 0) = std::sqrt(1.0 - fp.ft);
  m(1, 1) = std::sqrt(fp.ft);
  return m;
}

FilteredState local_filter(const XState& x, const FilterParams& fp) {
  check_unit_interval(fp.ft, "filter strength ft");
  const double ft = fp.ft;
  const double z1 = (1.0 - ft) * (x.r11 + x.r22) + ft * (x.r33 + x.r44);
  if (!(z1 > kMinSuccessProbability)) {
    std::ostringstream msg;
    msg << "filter with ft = " << ft << " succeeds with probability " << z1;
    throw ZeroProbabilityError(msg.str());
  }
  const double coherence = std::sqrt(ft * (1.0 - ft));
  FilteredState out;
  out.success_probability = z1;
  out.state.r11 = (1.0 - ft) * x.r11 / z1;
  out.state.r22 = (1.0 - ft) * x.r22 / z1;
  out.state.r33 = ft * x.r33 / z1;
  out.state.r44 = ft * x.r44 / z1;
  out.state.r14 = coherence * x.r14 / z1;
  out.state.r23 = coherence * x.r23 / z1;
  return out;
}

}  // namespace ht
