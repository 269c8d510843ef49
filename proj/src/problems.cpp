#include "lsgp/problems.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace lsgp {

FitnessCaseTable make_parity(ParitySpec spec) {
  if (spec.k < 1 || spec.k > 20)
    throw std::invalid_argument("make_parity: k must be in [1, 20], got " + std::to_string(spec.k));
  const int k = spec.k;
  const std::uint32_t rows = 1u << k;

  FitnessCaseTable table;
  table.n = k;
  table.m = static_cast<int>(rows);
  table.algebra = Algebra::boolean;
  table.inputs.reserve(static_cast<std::size_t>(rows) * k);
  table.targets.reserve(rows);
  for (std::uint32_t r = 0; r < rows; ++r) {
    for (int j = 0; j < k; ++j)
      table.inputs.push_back(static_cast<Value>((r >> (k - 1 - j)) & 1u));
    table.targets.push_back(std::popcount(r) % 2 == 0 ? 1.0 : 0.0);
  }
  return table;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

bool parse_value(std::string_view field, Value& out) {
  field = trim(field);
  if (field.empty()) return false;
  const char* begin = field.data();
  const char* end = begin + field.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc{} && ptr == end;
}

}  // namespace

FitnessCaseTable load_regression_csv(const std::filesystem::path& path, int n_inputs) {
  if (n_inputs < 1) throw std::invalid_argument("load_regression_csv: need at least one input column");
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_regression_csv: cannot open " + path.string());

  FitnessCaseTable table;
  table.n = n_inputs;
  table.algebra = Algebra::arithmetic;

  std::string line;
  int line_no = 0;
  bool saw_first = false;
  std::vector<Value> row;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;

    row.clear();
    bool ok = true;
    std::string_view rest = line;
    for (;;) {
      const std::size_t comma = rest.find(',');
      const std::string_view field = rest.substr(0, comma);
      Value v;
      if (!parse_value(field, v)) {
        ok = false;
        break;
      }
      row.push_back(v);
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }

    if (!saw_first && !ok) {
      saw_first = true;  // header line
      continue;
    }
    saw_first = true;
    if (!ok)
      throw std::runtime_error("load_regression_csv: row " + std::to_string(line_no) +
                               ": unparseable value");
    if (row.size() != static_cast<std::size_t>(n_inputs) + 1)
      throw std::runtime_error("load_regression_csv: row " + std::to_string(line_no) + ": expected " +
                               std::to_string(n_inputs + 1) + " fields, got " +
                               std::to_string(row.size()));
    for (Value v : row)
      if (!std::isfinite(v))
        throw std::runtime_error("load_regression_csv: row " + std::to_string(line_no) +
                                 ": non-finite value");
    table.inputs.insert(table.inputs.end(), row.begin(), row.end() - 1);
    table.targets.push_back(row.back());
  }

  table.m = static_cast<int>(table.targets.size());
  if (table.m == 0) throw std::runtime_error("load_regression_csv: no fitness cases in " + path.string());
  return table;
}

FitnessCaseTable make_quartic(int points, Rng& rng) {
  if (points < 1) throw std::invalid_argument("make_quartic: need at least one point");
  FitnessCaseTable table;
  table.n = 1;
  table.m = points;
  table.algebra = Algebra::arithmetic;
  table.inputs.reserve(points);
  table.targets.reserve(points);
  for (int i = 0; i < points; ++i) {
    const Value x = rng.range(-1.0, 1.0);
    table.inputs.push_back(x);
    table.targets.push_back(quartic_poly(x));
  }
  return table;
}

}  // namespace lsgp
