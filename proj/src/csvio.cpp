#include "altweib/csvio.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace altweib {
namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) {
    // Trim surrounding blanks and a trailing CR from CRLF input.
    std::size_t b = field.find_first_not_of(" \t\r");
    std::size_t e = field.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? std::string() : field.substr(b, e - b + 1));
  }
  return out;
}

bool parse_double(const std::string& s, double& out) {
  if (s.empty()) return false;
  char* end = nullptr;
  out = std::strtod(s.c_str(), &end);
  return end && *end == '\0';
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CsvError("cannot open file: " + path, 0);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

bool blank(const std::string& line) {
  return line.find_first_not_of(" \t\r") == std::string::npos;
}

struct NumericRow {
  std::vector<double> vals;
  int line;  ///< 1-based source line, kept for validation diagnostics
};

// Parses every non-blank row into `width`-or-wider numeric tuples, allowing
// one header row. Extra columns beyond max_width raise an error.
std::vector<NumericRow> read_table(const std::string& path, std::size_t width,
                                   std::size_t max_width) {
  const auto lines = read_lines(path);
  std::vector<NumericRow> rows;
  bool first_content = true;
  for (std::size_t li = 0; li < lines.size(); ++li) {
    if (blank(lines[li])) continue;
    const auto fields = split_fields(lines[li]);
    std::vector<double> vals;
    vals.reserve(fields.size());
    bool numeric = true;
    for (const auto& f : fields) {
      double v;
      if (!parse_double(f, v)) {
        numeric = false;
        break;
      }
      vals.push_back(v);
    }
    if (!numeric) {
      if (first_content) {  // header row
        first_content = false;
        continue;
      }
      throw CsvError("non-numeric field", static_cast<int>(li + 1));
    }
    first_content = false;
    if (vals.size() < width || vals.size() > max_width)
      throw CsvError("expected " + std::to_string(width) + " numeric columns",
                     static_cast<int>(li + 1));
    rows.push_back(NumericRow{std::move(vals), static_cast<int>(li + 1)});
  }
  return rows;
}

}  // namespace

std::vector<double> read_times_csv(const std::string& path) {
  const auto rows = read_table(path, 1, 1);
  if (rows.empty()) throw CsvError("no data rows in " + path, 0);
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) {
    if (!(r.vals[0] > 0.0)) throw CsvError("times must be positive", r.line);
    out.push_back(r.vals[0]);
  }
  return out;
}

std::vector<StressPoint> read_stress_csv(const std::string& path) {
  const auto rows = read_table(path, 2, 2);
  if (rows.empty()) throw CsvError("no data rows in " + path, 0);
  std::vector<StressPoint> out;
  out.reserve(rows.size());
  for (const auto& r : rows) {
    if (!(r.vals[0] > 0.0) || !(r.vals[1] > 0.0))
      throw CsvError("temperature and voltage must be positive", r.line);
    out.emplace_back(r.vals[0], r.vals[1]);
  }
  return out;
}

std::vector<std::array<double, 4>> read_fits_csv(const std::string& path) {
  const auto rows = read_table(path, 2, 4);
  if (rows.empty()) throw CsvError("no data rows in " + path, 0);
  std::vector<std::array<double, 4>> out;
  out.reserve(rows.size());
  for (const auto& r : rows) {
    if (!(r.vals[0] > 0.0) || !(r.vals[1] > 0.0))
      throw CsvError("estimates must be positive", r.line);
    std::array<double, 4> row{r.vals[0], r.vals[1], 0.0, 0.0};
    if (r.vals.size() >= 3) row[2] = r.vals[2];
    if (r.vals.size() >= 4) row[3] = r.vals[3];
    if (row[2] < 0.0 || row[3] < 0.0)
      throw CsvError("standard errors must be >= 0", r.line);
    out.push_back(row);
  }
  return out;
}

std::string format_sig6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace altweib
