#include "ht/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <sstream>
#include <thread>

#include "ht/dilaton.hpp"
#include "ht/errors.hpp"
#include "ht/teleport.hpp"

namespace ht {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

XState fig1_state() { return make_x_state(0.0, 0.5, 0.5, 0.0, 0.0, 0.5); }

XState fig2_state() {
  const double s = std::numbers::sqrt2;
  return make_x_state(s - 1.0, 0.5, (3.0 - 2.0 * s) / 2.0, 0.0, 0.0,
                      (s - 1.0) / 2.0);
}

XState fig3_state() {
  const double s = std::numbers::sqrt2;
  return make_x_state((s - 1.0) / 2.0, s / 2.0, (3.0 - 2.0 * s) / 2.0, 0.0, 0.0,
                      (s - 1.0) / 4.0);
}

struct GridPoint {
  double q_r;
  double p;
  std::optional<double> ft;
  double alpha;
};

// No filter sorts before any ft value.
bool ft_less(const std::optional<double>& a, const std::optional<double>& b) {
  if (!a) return b.has_value();
  if (!b) return false;
  return *a < *b;
}

bool same_group(const GridPoint& a, const GridPoint& b) {
  return a.q_r == b.q_r && a.p == b.p && a.ft == b.ft;
}

ResultRow evaluate(const SweepSpec& spec, const GridPoint& pt) {
  ResultRow row;
  row.alpha = pt.alpha;
  row.p = pt.p;
  row.q_r = pt.q_r;
  row.ft = pt.ft;
  const DilatonParams dp =
      DilatonParams::make(spec.mass, pt.alpha, spec.frequency);
  row.cos2_r = mode_coefficients(dp).cos2();
  FallbackPolicy policy;
  policy.numeric_fallback = spec.numeric_fallback;
  policy.search = NumericSearch{spec.restarts, spec.seed, NumericSearch{}.tol};
  try {
    const FilteredFefResult r =
        evaluate_point(spec.x_state, dp, UnruhMode(pt.q_r), pt.p, pt.ft, policy);
    row.f = r.fef.f;
    row.fidelity = teleport_fidelity(r.fef.f).fidelity;
    row.z1 = r.success_probability;
    row.status = r.fef.method == FefMethod::closed_form
                     ? RowStatus::closed_form
                     : RowStatus::numeric_fallback;
  } catch (const ZeroProbabilityError&) {
    row.f = row.fidelity = row.z1 = row.delta_alpha = kNaN;
    row.status = RowStatus::zero_probability;
  } catch (const ConditionError&) {
    row.f = row.fidelity = row.z1 = row.delta_alpha = kNaN;
    row.status = RowStatus::condition_failed;
  }
  return row;
}

}  // namespace

std::vector<double> AlphaGrid::points() const {
  std::vector<double> out;
  if (steps < 1) return out;
  if (steps == 1) return {start};
  out.reserve(steps);
  const double step = (stop - start) / (steps - 1);
  for (int k = 0; k < steps; ++k) out.push_back(start + k * step);
  out.back() = stop;
  return out;
}

const std::vector<std::optional<double>>& SweepSpec::ft_values_for(
    double q_r) const {
  for (const FilterGroup& g : filter_groups) {
    if (g.q_r == q_r) return g.ft_list;
  }
  return ft_list;
}

std::string to_string(RowStatus status) {
  switch (status) {
    case RowStatus::closed_form:
      return "closed_form";
    case RowStatus::numeric_fallback:
      return "numeric_fallback";
    case RowStatus::zero_probability:
      return "error:zero_probability";
    case RowStatus::condition_failed:
      return "error:condition";
  }
  return "unknown";
}

RowStatus row_status_from_string(const std::string& name) {
  for (RowStatus s : {RowStatus::closed_form, RowStatus::numeric_fallback,
                      RowStatus::zero_probability, RowStatus::condition_failed}) {
    if (to_string(s) == name) return s;
  }
  throw ConfigError("unknown method marker '" + name + "'");
}

void validate_spec(const SweepSpec& spec) {
  const XState& x = spec.x_state;
  make_x_state(x.r11, x.r22, x.r33, x.r44, x.r14, x.r23);
  if (!(spec.mass > 0.0)) throw DomainError("mass must be positive");
  if (!(spec.frequency > 0.0)) throw DomainError("frequency must be positive");
  const AlphaGrid& g = spec.alpha_grid;
  if (g.steps < 1) throw ConfigError("alpha_grid.steps must be at least 1");
  if (g.steps > 1 && !(g.stop > g.start)) {
    throw ConfigError("alpha_grid.stop must exceed alpha_grid.start");
  }
  if (!(g.start >= 0.0)) throw DomainError("alpha_grid.start must be >= 0");
  if (!(g.stop < spec.mass)) {
    std::ostringstream msg;
    msg << "alpha_grid.stop = " << g.stop << " must be below the mass "
        << spec.mass;
    throw DomainError(msg.str());
  }
  if (spec.q_r_list.empty() || spec.p_list.empty() || spec.ft_list.empty()) {
    throw ConfigError("q_R_list, p_list and ft_list must be non-empty");
  }
  for (double q : spec.q_r_list) {
    if (!(q >= 0.0 && q <= 1.0)) throw ConfigError("q_R values must lie in [0, 1]");
  }
  for (double p : spec.p_list) {
    if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("p values must lie in [0, 1]");
  }
  auto check_ft = [](const std::vector<std::optional<double>>& list) {
    if (list.empty()) throw ConfigError("ft lists must be non-empty");
    for (const auto& ft : list) {
      if (ft && !(*ft >= 0.0 && *ft <= 1.0)) {
        throw ConfigError("ft values must lie in [0, 1]");
      }
    }
  };
  check_ft(spec.ft_list);
  for (const FilterGroup& group : spec.filter_groups) check_ft(group.ft_list);
  if (spec.restarts < 4) throw ConfigError("restarts must be at least 4");
}

SweepSpec figure_preset(int n) {
  if (n < 1 || n > 6) {
    throw RangeError("figure preset must be in 1..6, got " + std::to_string(n));
  }
  SweepSpec spec;
  spec.q_r_list = {1.0, 0.8};
  spec.outputs = OutputFlags{true, false, false};
  spec.numeric_fallback = true;
  switch (n) {
    case 1:
    case 2:
    case 3:
      spec.x_state = n == 1 ? fig1_state() : n == 2 ? fig2_state() : fig3_state();
      spec.p_list = {0.0, 0.4, 0.9};
      spec.ft_list = {std::nullopt};
      break;
    case 4:
      spec.x_state = fig1_state();
      spec.p_list = {0.4};
      spec.filter_groups = {FilterGroup{1.0, {std::nullopt, 0.7}},
                            FilterGroup{0.8, {std::nullopt, 0.75}}};
      break;
    case 5:
      spec.x_state = fig2_state();
      spec.p_list = {0.4};
      spec.ft_list = {std::nullopt, 0.9};
      break;
    case 6:
      spec.x_state = fig3_state();
      spec.p_list = {0.4};
      spec.filter_groups = {FilterGroup{1.0, {std::nullopt, 0.9}},
                            FilterGroup{0.8, {std::nullopt, 0.98}}};
      break;
  }
  return spec;
}

int sweep_thread_count() {
  if (const char* env = std::getenv("HT_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<int>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

std::vector<ResultRow> run_sweep(const SweepSpec& spec, int threads) {
  validate_spec(spec);
  const std::vector<double> alphas = spec.alpha_grid.points();

  // Each (q_R, p, ft) group also needs its alpha = 0 reference for
  // delta_alpha; those are evaluated alongside the grid.
  std::vector<GridPoint> points;
  std::vector<GridPoint> references;
  for (double q_r : spec.q_r_list) {
    for (double p : spec.p_list) {
      for (const auto& ft : spec.ft_values_for(q_r)) {
        references.push_back(GridPoint{q_r, p, ft, 0.0});
        for (double alpha : alphas) points.push_back(GridPoint{q_r, p, ft, alpha});
      }
    }
  }

  std::vector<GridPoint> all = points;
  all.insert(all.end(), references.begin(), references.end());
  std::vector<ResultRow> results(all.size());

  if (threads <= 0) threads = sweep_thread_count();
  threads = std::max(1, std::min<int>(threads, static_cast<int>(all.size())));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < all.size(); i = next++) {
      results[i] = evaluate(spec, all[i]);
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  std::vector<ResultRow> rows(results.begin(),
                              results.begin() + static_cast<long>(points.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t r = 0; r < references.size(); ++r) {
      if (!same_group(points[i], references[r])) continue;
      const ResultRow& ref = results[points.size() + r];
      if (rows[i].ok()) {
        rows[i].delta_alpha = ref.ok() ? rows[i].f - ref.f : kNaN;
      }
      break;
    }
  }

  std::stable_sort(rows.begin(), rows.end(),
                   [](const ResultRow& a, const ResultRow& b) {
                     if (a.q_r != b.q_r) return a.q_r > b.q_r;
                     if (a.p != b.p) return a.p < b.p;
                     if (a.ft != b.ft) return ft_less(a.ft, b.ft);
                     return a.alpha < b.alpha;
                   });
  return rows;
}

}  // namespace ht
