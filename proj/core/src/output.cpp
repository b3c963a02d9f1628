#include "hiddenspace/output.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

namespace hs {

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buffer[32];
  auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
  return std::string(buffer, ptr);
}

Metadata& Metadata::set(std::string key, std::string value) {
  for (auto& [k, v] : entries_) {
    if (k == key) {
      v = std::move(value);
      return *this;
    }
  }
  entries_.emplace_back(std::move(key), std::move(value));
  return *this;
}

Metadata& Metadata::set(std::string key, double value) { return set(std::move(key), format_double(value)); }
Metadata& Metadata::set(std::string key, long long value) { return set(std::move(key), std::to_string(value)); }
Metadata& Metadata::set(std::string key, unsigned long long value) {
  return set(std::move(key), std::to_string(value));
}

void Metadata::write_comment_header(std::ostream& out, const std::string& prefix) const {
  for (const auto& [k, v] : entries_) out << prefix << ' ' << k << '=' << v << '\n';
}

}  // namespace hs
