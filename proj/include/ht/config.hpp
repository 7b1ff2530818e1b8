#pragma once

#include <istream>
#include <string>

#include "ht/sweep.hpp"

namespace ht {

// Sweep configuration as a JSON document, one key per SweepSpec field:
//
//   {
//     "x_state": [r11, r22, r33, r44, r14, r23],
//     "M": 1, "omega": 1,
//     "alpha_grid": {"start": 0, "stop": 0.99, "steps": 100},
//     "q_R_list": [1, 0.8],
//     "p_list": [0, 0.4, 0.9],
//     "ft_list": [null, 0.9],
//     "filter_groups": [{"q_R": 0.8, "ft_list": [null, 0.98]}],
//     "seed": 24301, "restarts": 20,
//     "numeric_fallback": true,
//     "outputs": {"csv": true, "json": false, "svg": false}
//   }
//
// `null` in an ft list means "no filter". Only "x_state" is required. Unknown
// keys and type mismatches raise ConfigError; physical range violations are
// reported by validate_spec.
SweepSpec parse_sweep_spec(const std::string& json_text);
SweepSpec parse_sweep_spec(std::istream& in);

std::string sweep_spec_to_json(const SweepSpec& spec);

}  // namespace ht
