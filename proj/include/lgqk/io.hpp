#ifndef LGQK_IO_HPP
#define LGQK_IO_HPP

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "lgqk/errors.hpp"
#include "lgqk/linalg.hpp"

namespace lgqk {

/// 17 significant digits: round-trips any double exactly.
inline std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return std::string(buf);
}

inline std::string join_csv(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    out += fields[i];
  }
  return out;
}

inline void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot open '" + path.string() + "' for writing");
  out << content;
  if (!out) throw io_error("write failed for '" + path.string() + "'");
}

inline std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void ensure_directory(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw io_error("cannot create directory '" + dir.string() + "': " + ec.message());
}

/// Whole symmetric matrix as CSV, one row per line.
inline void write_matrix_csv(const std::filesystem::path& path, const RealSymMatrix& m) {
  std::string out;
  for (int i = 0; i < m.dim(); ++i) {
    for (int j = 0; j < m.dim(); ++j) {
      if (j) out += ',';
      out += format_g17(m(i, j));
    }
    out += '\n';
  }
  write_text_file(path, out);
}

/// ASCII PGM (P2) with 255 gray levels under linear min-max scaling. The
/// scaling bounds go to `<path>.scale.txt`; a constant matrix renders as
/// all zeros and the sidecar says so.
inline void write_heatmap_pgm(const RealSymMatrix& m, const std::filesystem::path& path) {
  const int n = m.dim();
  double lo = m(0, 0), hi = m(0, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double v = m(i, j);
      if (!std::isfinite(v)) throw value_error("write_heatmap_pgm: non-finite entry");
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  const bool degenerate = !(hi > lo);

  std::string img = "P2\n" + std::to_string(n) + " " + std::to_string(n) + "\n255\n";
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      int pixel = 0;
      if (!degenerate) pixel = static_cast<int>(std::lround(255.0 * (m(i, j) - lo) / (hi - lo)));
      if (j) img += ' ';
      img += std::to_string(pixel);
    }
    img += '\n';
  }
  write_text_file(path, img);

  std::string side = "min = " + format_g17(lo) + "\nmax = " + format_g17(hi) + "\n";
  if (degenerate) side += "note = degenerate range, image rendered as all zeros\n";
  write_text_file(path.string() + ".scale.txt", side);
}

/// Numeric CSV (comma or whitespace separated), all rows the same width.
inline RealMatrix read_numeric_csv(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  std::istringstream in(text);
  std::string line;
  std::vector<double> values;
  int cols = -1, rows = 0;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    for (char& ch : line)
      if (ch == ',') ch = ' ';
    std::istringstream ls(line);
    std::vector<double> row;
    double v;
    while (ls >> v) row.push_back(v);
    if (row.empty()) continue;
    if (cols == -1) cols = static_cast<int>(row.size());
    if (static_cast<int>(row.size()) != cols)
      throw io_error("'" + path.string() + "': ragged row " + std::to_string(rows + 1));
    values.insert(values.end(), row.begin(), row.end());
    ++rows;
  }
  if (rows == 0) throw io_error("'" + path.string() + "': no numeric rows");
  return RealMatrix::from_row_major(rows, cols, std::move(values));
}

}  // namespace lgqk

#endif  // LGQK_IO_HPP
