#include "gcdsum/regression.hpp"

#include <cstdlib>
#include <fstream>
#include <stdexcept>

namespace gcdsum::regression {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::string default_path() {
  if (const char* env = std::getenv("GCDSUM_REGRESSION_FILE"); env != nullptr && *env != '\0') return env;
  return std::string(GCDSUM_DATA_DIR) + "/regression.txt";
}

RegressionFile::RegressionFile(std::string path) : path_(std::move(path)) {}

RegressionFile RegressionFile::load(const std::string& path) {
  RegressionFile file(path);
  std::ifstream in(path);
  if (!in) return file;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) + ": expected `key = value`");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) + ": empty key or value");
    }
    file.values_[key] = value;
  }
  return file;
}

std::optional<std::string> RegressionFile::get(const std::string& key) const {
  if (auto it = values_.find(key); it != values_.end()) return it->second;
  return std::nullopt;
}

void RegressionFile::set(const std::string& key, const std::string& value) { values_[key] = value; }

void RegressionFile::save() const {
  std::ofstream out(path_);
  if (!out) throw std::runtime_error("cannot write regression file '" + path_ + "'");
  out << "# Frozen empirical constants. Delete a line to re-freeze it on the next acceptance run.\n";
  for (const auto& [k, v] : values_) out << k << " = " << v << '\n';
  if (!out) throw std::runtime_error("write failed for '" + path_ + "'");
}

}  // namespace gcdsum::regression
