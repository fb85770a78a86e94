// Frozen empirical constants: a flat text file of `key = value` lines with
// `#` comments. Values stay strings so digits survive a round trip.
#pragma once

#include <map>
#include <optional>
#include <string>

namespace gcdsum::regression {

/// GCDSUM_REGRESSION_FILE if set, otherwise data/regression.txt in the source tree.
std::string default_path();

class RegressionFile {
 public:
  RegressionFile() = default;
  explicit RegressionFile(std::string path);

  /// Reads the file if it exists; a missing file leaves the store empty.
  /// Malformed lines throw std::runtime_error.
  static RegressionFile load(const std::string& path);

  [[nodiscard]] const std::string& path() const { return path_; }
  [[nodiscard]] bool contains(const std::string& key) const { return values_.count(key) != 0; }
  [[nodiscard]] std::optional<std::string> get(const std::string& key) const;
  [[nodiscard]] const std::map<std::string, std::string>& values() const { return values_; }

  void set(const std::string& key, const std::string& value);

  /// Writes all keys in sorted order.
  void save() const;

 private:
  std::string path_;
  std::map<std::string, std::string> values_;
};

}  // namespace gcdsum::regression
