#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ht/sweep.hpp"

namespace ht {

inline constexpr const char* kCsvHeader =
    "alpha,p,q_R,ft,cos2_r,f,F,z1,delta_alpha,method";

// One header line plus one line per row; numbers use 17 significant digits,
// `ft` is empty for unfiltered rows and numeric fields are empty for error
// rows. Throws ConfigError for an empty row list and IoError if the stream
// fails.
void write_csv(const std::vector<ResultRow>& rows, std::ostream& out);

// Inverse of write_csv; throws ConfigError on malformed input.
std::vector<ResultRow> read_csv(std::istream& in);

void write_json(const std::vector<ResultRow>& rows, std::ostream& out);

// Shortest-to-type formatting used by the CSV writer ("%.17g").
std::string format_double(double v);

}  // namespace ht
