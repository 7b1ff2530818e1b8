#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ht/qstate.hpp"

namespace ht {

// Inclusive, linearly spaced.
struct AlphaGrid {
  double start = 0.0;
  double stop = 0.99;
  int steps = 100;

  std::vector<double> points() const;
};

struct OutputFlags {
  bool csv = true;
  bool json = false;
  bool svg = false;
};

// Filter settings for one q_R value, overriding SweepSpec::ft_list. An empty
// optional means "no filter", which is not the same as a filter with ft = 0.
struct FilterGroup {
  double q_r = 1.0;
  std::vector<std::optional<double>> ft_list;
};

struct SweepSpec {
  XState x_state;
  double mass = 1.0;
  double frequency = 1.0;
  AlphaGrid alpha_grid;
  std::vector<double> q_r_list{1.0};
  std::vector<double> p_list{0.0};
  std::vector<std::optional<double>> ft_list{std::nullopt};
  std::vector<FilterGroup> filter_groups;
  std::uint64_t seed = 0x5eedULL;
  int restarts = 20;
  bool numeric_fallback = true;
  OutputFlags outputs;

  // ft values evaluated for a given q_R.
  const std::vector<std::optional<double>>& ft_values_for(double q_r) const;
};

enum class RowStatus {
  closed_form,
  numeric_fallback,
  zero_probability,  // filter annihilated the state
  condition_failed,  // closed form invalid and fallback disabled
};

std::string to_string(RowStatus status);
RowStatus row_status_from_string(const std::string& name);

// Numeric fields are NaN when status is an error marker.
struct ResultRow {
  double alpha = 0.0;
  double p = 0.0;
  double q_r = 1.0;
  std::optional<double> ft;
  double cos2_r = 1.0;
  double f = 0.0;
  double fidelity = 0.0;
  double z1 = 1.0;
  double delta_alpha = 0.0;
  RowStatus status = RowStatus::closed_form;

  bool ok() const {
    return status == RowStatus::closed_form ||
           status == RowStatus::numeric_fallback;
  }
};

// Throws ConfigError for malformed specs and DomainError for alpha >= M or
// an invalid initial state.
void validate_spec(const SweepSpec& spec);

// Throws RangeError outside 1..6.
SweepSpec figure_preset(int n);

// Number of worker threads used by run_sweep: HT_THREADS when set to a
// positive integer, otherwise the hardware concurrency.
int sweep_thread_count();

// Evaluates the Cartesian product of the grids. Rows are sorted by
// (q_R desc, p asc, ft asc with "no filter" first, alpha asc).
std::vector<ResultRow> run_sweep(const SweepSpec& spec, int threads = 0);

}  // namespace ht
