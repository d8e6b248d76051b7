#include "kfsd/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <utility>

#include "kfsd/error.hpp"

namespace kfsd {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '"')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r' || s.back() == '"')) {
    s.remove_suffix(1);
  }
  return s;
}

bool is_missing(std::string_view cell) { return cell.empty() || cell == "NA" || cell == "na" || cell == "NaN"; }

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(',', start);
    cells.push_back(trim(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return cells;
}

double parse_cell(std::string_view cell, std::size_t line_no, std::size_t col) {
  if (is_missing(cell)) return std::numeric_limits<double>::quiet_NaN();
  double v = 0.0;
  const auto* first = cell.data();
  const auto* last = cell.data() + cell.size();
  if (!cell.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) {
    throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ", column " + std::to_string(col + 1) +
                                           ": cannot parse '" + std::string(cell) + "'");
  }
  return v;
}

bool is_number(std::string_view cell) {
  double v = 0.0;
  const auto* first = cell.data();
  const auto* last = cell.data() + cell.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  return ec == std::errc() && ptr == last;
}

bool looks_like_grid(const std::vector<double>& row) {
  if (row.size() < 2) return false;
  for (double v : row) {
    if (!std::isfinite(v)) return false;
  }
  try {
    Grid g(row);
  } catch (const Error&) {
    return false;
  }
  return true;
}

}  // namespace

CurveTable parse_curve_csv(std::istream& in, HeaderMode header) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  std::size_t width = 0;
  bool named_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    const auto trimmed = trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    const auto cells = split(line);
    if (width == 0) {
      width = cells.size();
      // a first row of column names carries no abscissae
      if (header != HeaderMode::Absent && std::none_of(cells.begin(), cells.end(), [](std::string_view c) {
            return is_missing(c) || is_number(c);
          })) {
        named_header = true;
        continue;
      }
    } else if (cells.size() != width) {
      throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": expected " + std::to_string(width) +
                                             " columns, found " + std::to_string(cells.size()));
    }
    std::vector<double> row(cells.size());
    for (std::size_t c = 0; c < cells.size(); ++c) row[c] = parse_cell(cells[c], line_no, c);
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw Error(ErrorCode::ParseError, "no data rows");

  CurveTable table;
  std::size_t first = 0;
  const bool take_header =
      !named_header && (header == HeaderMode::Present ||
                        (header == HeaderMode::Auto && rows.size() > 1 && looks_like_grid(rows.front())));
  if (take_header) {
    table.abscissae = rows.front();
    first = 1;
  }
  if (rows.size() <= first) throw Error(ErrorCode::ParseError, "header present but no data rows");
  table.values.resize(static_cast<Eigen::Index>(rows.size() - first), static_cast<Eigen::Index>(width));
  for (std::size_t r = first; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < width; ++c) {
      table.values(static_cast<Eigen::Index>(r - first), static_cast<Eigen::Index>(c)) = rows[r][c];
    }
  }
  return table;
}

CurveTable read_curve_csv(const std::filesystem::path& path, HeaderMode header) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  return parse_curve_csv(in, header);
}

LoadedSample to_sample(const CurveTable& table, bool drop_incomplete) {
  const auto m = static_cast<std::size_t>(table.values.cols());
  GridPtr grid;
  if (table.abscissae) {
    grid = std::make_shared<const Grid>(*table.abscissae);
  } else {
    grid = std::make_shared<const Grid>(Grid::equidistant(0.0, static_cast<double>(m) - 1.0, m));
  }
  std::vector<std::size_t> keep;
  std::vector<std::size_t> dropped;
  for (Eigen::Index i = 0; i < table.values.rows(); ++i) {
    if (table.values.row(i).allFinite()) {
      keep.push_back(static_cast<std::size_t>(i));
    } else if (drop_incomplete) {
      dropped.push_back(static_cast<std::size_t>(i));
    } else {
      throw Error(ErrorCode::NonFiniteValue,
                  "data row " + std::to_string(i + 1) + " has a missing or non-finite value");
    }
  }
  RowMatrix kept(static_cast<Eigen::Index>(keep.size()), table.values.cols());
  for (std::size_t r = 0; r < keep.size(); ++r) {
    kept.row(static_cast<Eigen::Index>(r)) = table.values.row(static_cast<Eigen::Index>(keep[r]));
  }
  return LoadedSample{build_sample(kept, grid), std::move(keep), std::move(dropped)};
}

std::string format_double(double v) {
  if (std::isnan(v)) return "NA";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);  // shortest round-trip form
  return std::string(buf, res.ptr);
}

void write_curve_csv(std::ostream& out, const FunctionalSample& sample) {
  const auto pts = sample.grid()->points();
  for (std::size_t k = 0; k < pts.size(); ++k) out << (k ? "," : "") << format_double(pts[k]);
  out << '\n';
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const auto row = sample.row(i);
    for (std::size_t k = 0; k < row.size(); ++k) out << (k ? "," : "") << format_double(row[k]);
    out << '\n';
  }
}

void write_curve_csv(const std::filesystem::path& path, const FunctionalSample& sample) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  write_curve_csv(out, sample);
}

void write_labels_csv(std::ostream& out, const std::vector<Label>& labels) {
  out << "curve_index,label\n";
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const char* name = labels[i] == Label::Outlier ? "outlier" : labels[i] == Label::Normal ? "normal" : "unknown";
    out << i << ',' << name << '\n';
  }
}

std::vector<Label> read_labels_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  std::vector<Label> labels;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    const auto trimmed = trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    if (std::exchange(header, false)) continue;
    const auto cells = split(line);
    if (cells.size() != 2) throw Error(ErrorCode::ParseError, "labels file needs 2 columns");
    if (cells[1] == "outlier") {
      labels.push_back(Label::Outlier);
    } else if (cells[1] == "normal") {
      labels.push_back(Label::Normal);
    } else {
      labels.push_back(Label::Unknown);
    }
  }
  return labels;
}

}  // namespace kfsd
