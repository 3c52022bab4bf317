#ifndef NOISEMAX_ERRORS_HPP
#define NOISEMAX_ERRORS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace noisemax {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A documented precondition (not a plain domain restriction) was violated.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Grid too coarse to represent a trigonometric polynomial without aliasing.
class AliasingError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Identifies the Gaussian stream of one replicate.
struct SeedPath {
  std::uint64_t master_seed = 0;
  std::uint64_t replicate = 0;

  friend bool operator==(const SeedPath&, const SeedPath&) = default;
};

inline std::string to_string(const SeedPath& p) {
  return "(seed=" + std::to_string(p.master_seed) +
         ", replicate=" + std::to_string(p.replicate) + ")";
}

/// Newton/bisection polishing of a maximum failed to converge.
class RefinementError : public std::runtime_error {
 public:
  RefinementError(const std::string& what, SeedPath path)
      : std::runtime_error(what + " " + to_string(path)), path_(path) {}

  const SeedPath& seed_path() const noexcept { return path_; }

 private:
  SeedPath path_;
};

}  // namespace noisemax

#endif  // NOISEMAX_ERRORS_HPP
