#pragma once

#include <string>
#include <vector>

#include "ht/errors.hpp"
#include "ht/sweep.hpp"

namespace ht {

enum class RowField { alpha, p, q_r, ft, cos2_r, f, fidelity, z1, delta_alpha };

RowField row_field_from_string(const std::string& name);
std::string to_string(RowField field);

class EmptyInputError : public Error {
 public:
  using Error::Error;
};

struct PlotOptions {
  std::vector<RowField> group_by{RowField::p, RowField::q_r, RowField::ft};
  RowField y = RowField::f;
  std::string title;
};

// Standalone SVG of `y` against alpha, one polyline per group. Groups without
// a filter (or, when no group is filtered, groups below the largest q_R) are
// dashed. For y = f the vertical range always covers [0.4, 1.0] and a
// reference line marks the classical bound f = 1/2.
std::string emit_plot(const std::vector<ResultRow>& rows,
                      const PlotOptions& options = {});

}  // namespace ht
