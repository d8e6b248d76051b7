#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "kfsd/fdata.hpp"

namespace kfsd {

enum class HeaderMode { Auto, Present, Absent };

/// Raw curve matrix as read from disk; missing cells ("" or "NA") are NaN.
struct CurveTable {
  std::optional<std::vector<double>> abscissae;
  RowMatrix values;
};

/// One curve per row, comma separated. With HeaderMode::Auto the first row is
/// taken as grid abscissae when it is complete, strictly increasing and
/// equidistant and at least one more row follows.
CurveTable parse_curve_csv(std::istream& in, HeaderMode header = HeaderMode::Auto);
CurveTable read_curve_csv(const std::filesystem::path& path, HeaderMode header = HeaderMode::Auto);

struct LoadedSample {
  FunctionalSample sample;
  std::vector<std::size_t> source_rows;  // 0-based data-row index of each kept curve
  std::vector<std::size_t> dropped_rows;
};

/// Builds a sample from a table. Without abscissae the grid is 0, 1, ..., m-1.
/// drop_incomplete removes rows with missing cells; otherwise they are an error.
LoadedSample to_sample(const CurveTable& table, bool drop_incomplete = false);

/// Header row of abscissae followed by one row per curve; 17 significant digits.
void write_curve_csv(std::ostream& out, const FunctionalSample& sample);
void write_curve_csv(const std::filesystem::path& path, const FunctionalSample& sample);

void write_labels_csv(std::ostream& out, const std::vector<Label>& labels);
std::vector<Label> read_labels_csv(const std::filesystem::path& path);

/// Shortest decimal form that reads back to the same double; "NA" for NaN.
std::string format_double(double v);

}  // namespace kfsd
