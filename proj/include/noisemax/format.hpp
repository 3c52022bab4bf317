#ifndef NOISEMAX_FORMAT_HPP
#define NOISEMAX_FORMAT_HPP

#include <charconv>
#include <string>
#include <string_view>

namespace noisemax {

/// Shortest decimal string that parses back to exactly x.
inline std::string shortest(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, end);
}

/// Strict full-string number parse; returns false on trailing junk.
inline bool parse_number(std::string_view s, double& out) {
  if (s.empty()) return false;
  if (s.front() == '+') s.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace noisemax

#endif  // NOISEMAX_FORMAT_HPP
