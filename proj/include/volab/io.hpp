#pragma once
// File and number formatting helpers shared by the tools and serializers.

#include <charconv>
#include <stdexcept>
#include <string>

namespace volab {

struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Shortest representation that round-trips to the same double.
inline std::string format_double(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view s) {
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw DataError("bad number: '" + std::string(s) + "'");
  return v;
}

std::string read_file(const std::string& path);

// Write-then-rename so concurrent readers never see a partial file.
void atomic_write_file(const std::string& path, const std::string& content);

}  // namespace volab
