#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace terabridge::units {

enum class Dimension { frequency, length, temperature, dimensionless };

const char* to_string(Dimension d);

/// Suffixes accepted for a dimension with their SI scale factors.
const std::vector<std::pair<std::string, double>>& suffix_table(Dimension d);

/// Parses "<number>[ ]<suffix>" into SI base units (Hz, m, K). A bare number
/// is taken as already in SI base units. Throws std::invalid_argument on
/// unknown suffixes or malformed numbers.
double parse_quantity(std::string_view text, Dimension dim);

/// Ordinary frequency text ("8GHz") to angular frequency in rad/s.
double parse_angular_frequency(std::string_view text);

}  // namespace terabridge::units
