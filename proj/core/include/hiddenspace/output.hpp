#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace hs {

inline constexpr const char* kVersion = "0.1.0";

/// Shortest round-trip decimal form; "inf"/"-inf"/"nan" for non-finite values.
std::string format_double(double value);

/// Ordered key/value metadata written at the top of every output file.
class Metadata {
 public:
  Metadata& set(std::string key, std::string value);
  Metadata& set(std::string key, double value);
  Metadata& set(std::string key, long long value);
  Metadata& set(std::string key, unsigned long long value);
  Metadata& set(std::string key, int value) { return set(std::move(key), static_cast<long long>(value)); }
  Metadata& set(std::string key, std::size_t value) {
    return set(std::move(key), static_cast<unsigned long long>(value));
  }
  Metadata& set(std::string key, const char* value) { return set(std::move(key), std::string(value)); }

  const std::vector<std::pair<std::string, std::string>>& entries() const noexcept { return entries_; }

  /// "<prefix> key=value" lines.
  void write_comment_header(std::ostream& out, const std::string& prefix = "#") const;

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

}  // namespace hs
