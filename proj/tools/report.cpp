#include "report.hpp"

#include <ostream>
#include <sstream>

namespace extiso::cli {

void Report::add_block(const std::string& key, const std::string& text) {
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) add(key, line);
}

void Report::print(std::ostream& out) const {
  for (const auto& [k, v] : fields_) out << k << ": " << v << '\n';
  out << "VERDICT: " << verdict_ << '\n';
}

std::string join(const std::vector<std::size_t>& xs, const char* sep) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s += sep;
    s += std::to_string(xs[i]);
  }
  return s;
}

}  // namespace extiso::cli
