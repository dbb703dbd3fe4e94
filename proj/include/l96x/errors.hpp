#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace l96x {

/// Mathematically well-posed input that the requested analysis cannot handle
/// (no Hopf crossing, resonant normal form, Newton failure, blow-up, ...).
/// The CLI maps these to exit code 1.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed advection-map expression. Carries the offset of the offending
/// character within the source string. The CLI maps these to exit code 2.
class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::invalid_argument(what + " (at position " + std::to_string(position) + ")"),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Integration aborted because the state norm exceeded the blow-up guard.
class BlowUpError : public DomainError {
 public:
  BlowUpError(double t, double norm)
      : DomainError("state norm " + std::to_string(norm) + " exceeded blow-up guard at t = " +
                    std::to_string(t)),
        t_(t),
        norm_(norm) {}
  double time() const noexcept { return t_; }
  double norm() const noexcept { return norm_; }

 private:
  double t_;
  double norm_;
};

}  // namespace l96x
