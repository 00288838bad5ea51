#pragma once

#include <iosfwd>
#include <string>

#include "extiso/cayley.hpp"

namespace extiso {

struct RawTable {
  std::size_t n = 0;
  std::vector<Elem> entries;
};

// Optional leading '#' lines, then n, then n rows of n indices.
RawTable parse_cayley(std::istream& in);
GroupPtr read_cayley(std::istream& in, std::string label = "");
GroupPtr read_cayley_file(const std::string& path);

void write_cayley(std::ostream& out, const CayleyGroup& g);
void write_cayley_file(const std::string& path, const CayleyGroup& g);

}  // namespace extiso
