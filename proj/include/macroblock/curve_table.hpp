#pragma once

#include <string>
#include <vector>

#include "macroblock/error.hpp"

namespace macroblock {

// Named numeric table: first column is the x axis, the rest are curves.
struct CurveTable {
  std::string name;
  std::vector<std::string> headers;
  std::vector<std::vector<double>> rows;

  void validate() const {
    for (const auto& row : rows) {
      if (row.size() != headers.size()) throw Error("curve table is not rectangular");
    }
  }

  std::vector<double> column(std::size_t c) const {
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& row : rows) out.push_back(row.at(c));
    return out;
  }

  std::size_t column_index(const std::string& header) const {
    for (std::size_t c = 0; c < headers.size(); ++c) {
      if (headers[c] == header) return c;
    }
    throw Error("no column named " + header);
  }
};

}  // namespace macroblock
