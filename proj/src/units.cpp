#include "terabridge/units.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <stdexcept>

#include "terabridge/constants.hpp"

namespace terabridge::units {

const char* to_string(Dimension d) {
  switch (d) {
    case Dimension::frequency: return "frequency";
    case Dimension::length: return "length";
    case Dimension::temperature: return "temperature";
    default: return "dimensionless";
  }
}

const std::vector<std::pair<std::string, double>>& suffix_table(Dimension d) {
  static const std::vector<std::pair<std::string, double>> frequency = {
      {"Hz", 1.0}, {"kHz", 1e3}, {"MHz", 1e6}, {"GHz", 1e9}, {"THz", 1e12}};
  static const std::vector<std::pair<std::string, double>> length = {
      {"m", 1.0},   {"cm", 1e-2},     {"mm", 1e-3},  {"um", 1e-6},
      {"\xC2\xB5m", 1e-6}, {"nm", 1e-9}, {"pm", 1e-12}};
  static const std::vector<std::pair<std::string, double>> temperature = {
      {"K", 1.0}, {"mK", 1e-3}, {"uK", 1e-6}, {"\xC2\xB5K", 1e-6}, {"nK", 1e-9}};
  static const std::vector<std::pair<std::string, double>> none = {};
  switch (d) {
    case Dimension::frequency: return frequency;
    case Dimension::length: return length;
    case Dimension::temperature: return temperature;
    default: return none;
  }
}

double parse_quantity(std::string_view text, Dimension dim) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  const std::string_view s = trim(text);
  if (s.empty()) throw std::invalid_argument("empty quantity");
  double value = 0.0;
  const char* begin = s.data();
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr == begin)
    throw std::invalid_argument("malformed number in '" + std::string(text) + "'");
  if (!std::isfinite(value))
    throw std::invalid_argument("non-finite quantity '" + std::string(text) + "'");
  const std::string_view suffix = trim(std::string_view(ptr, static_cast<std::size_t>(end - ptr)));
  if (suffix.empty()) return value;
  for (const auto& [name, scale] : suffix_table(dim))
    if (suffix == name) return value * scale;
  throw std::invalid_argument("unknown " + std::string(to_string(dim)) + " unit '" +
                              std::string(suffix) + "' in '" + std::string(text) + "'");
}

double parse_angular_frequency(std::string_view text) {
  return angular(parse_quantity(text, Dimension::frequency));
}

}  // namespace terabridge::units
