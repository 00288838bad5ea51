#include "extiso/cayley_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace extiso {

namespace {

bool read_index(std::istream& in, unsigned long long& v) {
  std::string tok;
  if (!(in >> tok)) return false;
  if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
    throw ParseError("bad token '" + tok + "'");
  v = std::stoull(tok);
  return true;
}

}  // namespace

RawTable parse_cayley(std::istream& in) {
  std::string line;
  std::stringstream body;
  bool header = true;
  while (std::getline(in, line)) {
    if (header) {
      auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos) continue;
      if (line[first] == '#') continue;
      header = false;
    }
    body << line << '\n';
  }
  RawTable t;
  unsigned long long n = 0;
  if (!read_index(body, n) || n == 0) throw ParseError("missing order");
  if (n > kMaxOrder) throw ParseError("order too large");
  t.n = n;
  t.entries.resize(n * n);
  for (auto& e : t.entries) {
    unsigned long long v;
    if (!read_index(body, v)) throw ParseError("table truncated");
    if (v >= n) throw ParseError("entry out of range: " + std::to_string(v));
    e = static_cast<Elem>(v);
  }
  std::string extra;
  if (body >> extra) throw ParseError("trailing data");
  return t;
}

GroupPtr read_cayley(std::istream& in, std::string label) {
  RawTable t = parse_cayley(in);
  return validate_table(t.n, t.entries, std::move(label));
}

GroupPtr read_cayley_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return read_cayley(in, path);
}

void write_cayley(std::ostream& out, const CayleyGroup& g) {
  const std::size_t n = g.order();
  std::string buf;
  buf += std::to_string(n) + '\n';
  for (std::size_t x = 0; x < n; ++x) {
    const Cell* r = g.row(x);
    for (std::size_t y = 0; y < n; ++y) {
      if (y) buf += ' ';
      buf += std::to_string(r[y]);
    }
    buf += '\n';
  }
  out << buf;
}

void write_cayley_file(const std::string& path, const CayleyGroup& g) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  write_cayley(out, g);
}

}  // namespace extiso
