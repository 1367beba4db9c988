#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "altweib/weibull.hpp"

namespace altweib {

/// Parse failure carrying the 1-based line number of the offending row.
struct CsvError : std::runtime_error {
  int line;
  CsvError(const std::string& what, int line_) : std::runtime_error(what), line(line_) {}
};

/// One positive value per row; a non-numeric first row is treated as a header.
std::vector<double> read_times_csv(const std::string& path);

/// T,V per row; a non-numeric first row is treated as a header.
std::vector<StressPoint> read_stress_csv(const std::string& path);

/// Rows of first-stage estimates: alpha,lambda[,se_alpha,se_lambda].
/// Missing standard errors read as zero.
std::vector<std::array<double, 4>> read_fits_csv(const std::string& path);

/// Estimate formatting used by every emitted table: 6 significant digits.
std::string format_sig6(double v);

/// Write `text` with LF endings exactly as given.
void write_text_file(const std::string& path, const std::string& text);

}  // namespace altweib
