#include "terabridge/table.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "json.hpp"

namespace terabridge {

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) throw std::runtime_error("format_double: conversion failed");
  return std::string(buf, ptr);
}

std::size_t Table::column(const std::string& name) const {
  auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) throw std::out_of_range("no column '" + name + "'");
  return static_cast<std::size_t>(it - columns.begin());
}

bool Table::has_column(const std::string& name) const {
  return std::find(columns.begin(), columns.end(), name) != columns.end();
}

double Table::number(std::size_t row, const std::string& name) const {
  return std::get<double>(rows.at(row).at(column(name)));
}

const std::string& Table::text(std::size_t row, const std::string& name) const {
  return std::get<std::string>(rows.at(row).at(column(name)));
}

namespace {

std::string cell_text(const Cell& c) {
  if (const double* d = std::get_if<double>(&c)) return format_double(*d);
  return std::get<std::string>(c);
}

Cell parse_cell(const std::string& s) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec == std::errc() && ptr == s.data() + s.size() && !s.empty()) return v;
  return s;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

void Table::write_csv(std::ostream& out) const {
  for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << cell_text(row[i]);
    out << '\n';
  }
}

void Table::write_jsonl(std::ostream& out) const {
  for (const auto& row : rows) {
    nlohmann::ordered_json obj;
    for (std::size_t i = 0; i < columns.size(); ++i) {
      if (const double* d = std::get_if<double>(&row[i]))
        obj[columns[i]] = *d;
      else
        obj[columns[i]] = std::get<std::string>(row[i]);
    }
    out << obj.dump() << '\n';
  }
}

Table Table::read_csv(std::istream& in) {
  Table t;
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("read_csv: missing header");
  t.columns = split(line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto fields = split(line);
    if (fields.size() != t.columns.size())
      throw std::runtime_error("read_csv: row has " + std::to_string(fields.size()) +
                               " fields, header has " + std::to_string(t.columns.size()));
    std::vector<Cell> row;
    row.reserve(fields.size());
    for (const auto& f : fields) row.push_back(parse_cell(f));
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table Table::read_jsonl(std::istream& in) {
  Table t;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto obj = nlohmann::ordered_json::parse(line);
    if (t.columns.empty())
      for (const auto& [k, _] : obj.items()) t.columns.push_back(k);
    std::vector<Cell> row;
    for (const auto& name : t.columns) {
      const auto& v = obj.at(name);
      if (v.is_number())
        row.emplace_back(v.get<double>());
      else
        row.emplace_back(v.get<std::string>());
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace terabridge
