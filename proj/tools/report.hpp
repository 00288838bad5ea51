#pragma once

// Line-oriented "key: value" report. Fields print in insertion order and the
// verdict line comes last, so output is byte-stable for fixed inputs.

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace extiso::cli {

class Report {
 public:
  explicit Report(std::string command) { add("command", std::move(command)); }

  void add(std::string key, std::string value) { fields_.emplace_back(std::move(key), std::move(value)); }
  void add(std::string key, std::size_t value) { add(std::move(key), std::to_string(value)); }
  // one "key: line" per line of text
  void add_block(const std::string& key, const std::string& text);
  void verdict(std::string v) { verdict_ = std::move(v); }
  void print(std::ostream& out) const;

 private:
  std::vector<std::pair<std::string, std::string>> fields_;
  std::string verdict_ = "error";
};

std::string join(const std::vector<std::size_t>& xs, const char* sep = " ");

}  // namespace extiso::cli
