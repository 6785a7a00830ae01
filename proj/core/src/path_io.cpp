#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "bor/error.hpp"
#include "bor/numeric.hpp"
#include "bor/path_gen.hpp"

namespace bor {
namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
    while (!cell.empty() && cell.front() == ' ') cell.erase(cell.begin());
    out.push_back(cell);
  }
  return out;
}

double parse_double(const std::string& s, std::size_t line_no) {
  const char* begin = s.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (s.empty() || end != begin + s.size() || !std::isfinite(v)) {
    throw FormatError("line " + std::to_string(line_no) + ": cannot parse number '" + s + "'");
  }
  return v;
}

}  // namespace

SampledPath load_path(std::istream& in, std::vector<std::string>* warnings) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line != "\r") break;
  }
  if (line_no == 0 || line.empty()) throw FormatError("path CSV is empty");
  const auto header = split_csv(line);
  if (header.size() < 2 || header[0] != "t") throw FormatError("path CSV header must be 't,x1,...,xn'");
  const std::size_t dim = header.size() - 1;
  for (std::size_t c = 0; c < dim; ++c) {
    if (header[c + 1] != "x" + std::to_string(c + 1)) {
      throw FormatError("path CSV header column " + std::to_string(c + 2) + " must be 'x" + std::to_string(c + 1) + "'");
    }
  }

  std::vector<double> times;
  std::vector<double> values;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto cells = split_csv(line);
    if (cells.size() != dim + 1) {
      throw FormatError("line " + std::to_string(line_no) + ": expected " + std::to_string(dim + 1) + " columns, got " +
                        std::to_string(cells.size()));
    }
    times.push_back(parse_double(cells[0], line_no));
    for (std::size_t c = 0; c < dim; ++c) values.push_back(parse_double(cells[c + 1], line_no));
  }
  if (times.size() < 2) throw FormatError("path CSV needs at least two rows");
  if (times.front() != 0.0) throw FormatError("path CSV must start at t = 0");
  const std::size_t n = times.size() - 1;
  const double horizon = times.back();
  if (!(horizon > 0.0)) throw FormatError("path CSV times must be strictly increasing");
  const double step = horizon / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double gap = times[i + 1] - times[i];
    if (!(gap > 0.0)) throw FormatError("path CSV times must be strictly increasing (row " + std::to_string(i + 2) + ")");
    if (std::abs(gap - step) > 1e-9 * step) {
      throw FormatError("path CSV grid is not uniform: step " + std::to_string(gap) + " at row " +
                        std::to_string(i + 2) + " differs from " + std::to_string(step));
    }
  }
  if (warnings && !is_power_of_two(n)) {
    warnings->push_back("N = " + std::to_string(n) + " is not a power of two; dyadic estimators will reject this path");
  }
  return SampledPath(horizon, dim, std::move(values));
}

SampledPath load_path_file(const std::string& file, std::vector<std::string>* warnings) {
  std::ifstream in(file);
  if (!in) throw std::ios_base::failure("cannot open path file '" + file + "'");
  return load_path(in, warnings);
}

void save_path(std::ostream& out, const SampledPath& path) {
  out << "t";
  for (std::size_t c = 0; c < path.dim(); ++c) out << ",x" << (c + 1);
  out << '\n';
  char buf[32];
  for (std::size_t i = 0; i < path.points(); ++i) {
    std::snprintf(buf, sizeof buf, "%.16e", path.time(i));
    out << buf;
    for (std::size_t c = 0; c < path.dim(); ++c) {
      std::snprintf(buf, sizeof buf, "%.16e", path.at(i, c));
      out << ',' << buf;
    }
    out << '\n';
  }
}

}  // namespace bor
