#pragma once

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "macroblock/curve_table.hpp"
#include "macroblock/error.hpp"

namespace macroblock::io {

// Writes `contents` to a sibling temporary file and renames it over `path`,
// so a failed run never leaves a partial file behind.
inline void write_file_atomically(const std::filesystem::path& path, const std::string& contents) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + path.string());
    out << contents;
    out.flush();
    if (!out) {
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw Error("cannot write " + path.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error("cannot write " + path.string());
  }
}

inline std::string format_csv(const CurveTable& table, const std::vector<std::string>& comments) {
  table.validate();
  std::string out;
  for (const auto& c : comments) out += "# " + c + "\n";
  for (std::size_t i = 0; i < table.headers.size(); ++i) {
    if (i) out += ',';
    out += table.headers[i];
  }
  out += '\n';
  char buf[40];
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      std::snprintf(buf, sizeof buf, "%.17g", row[i]);
      out += buf;
    }
    out += '\n';
  }
  return out;
}

// Comment lines (without the leading "# ") come first, then the header row
// and one row per x value at 17 significant digits.
inline void emit_csv(const CurveTable& table, const std::filesystem::path& path,
                     const std::vector<std::string>& comments = {}) {
  write_file_atomically(path, format_csv(table, comments));
}

struct ParsedCsv {
  CurveTable table;
  std::vector<std::string> comments;
};

inline ParsedCsv read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  ParsedCsv parsed;
  parsed.table.name = path.stem().string();
  std::string line;
  bool header_seen = false;
  auto split = [](const std::string& s) {
    std::vector<std::string> cells;
    std::stringstream ss(s);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    return cells;
  };
  while (std::getline(in, line)) {
    if (line.rfind("# ", 0) == 0) {
      parsed.comments.push_back(line.substr(2));
    } else if (!header_seen) {
      parsed.table.headers = split(line);
      header_seen = true;
    } else {
      std::vector<double> row;
      for (const auto& cell : split(line)) {
        char* end = nullptr;
        row.push_back(std::strtod(cell.c_str(), &end));
        if (end == cell.c_str() || *end != '\0') throw Error("malformed CSV cell '" + cell + "'");
      }
      parsed.table.rows.push_back(std::move(row));
    }
  }
  if (!header_seen) throw Error("CSV has no header row: " + path.string());
  parsed.table.validate();
  return parsed;
}

}  // namespace macroblock::io
