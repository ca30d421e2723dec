#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace besovlab {

using Complex = std::complex<double>;

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Bad user-facing input: malformed config, size mismatch, unreadable file.
class ConfigError : public std::runtime_error {
  public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// A documented precondition was violated by the caller.
class ContractViolation : public std::logic_error {
  public:
    explicit ContractViolation(const std::string& what) : std::logic_error(what) {}
};

/// Time integration stopped before the horizon.
class SolverAbort : public std::runtime_error {
  public:
    enum class Reason { CflViolation, NonFinite, LeftBall };

    SolverAbort(Reason reason, double t, const std::string& what)
        : std::runtime_error(what), reason_(reason), time_(t) {}

    Reason reason() const { return reason_; }
    double time() const { return time_; }

  private:
    Reason reason_;
    double time_;
};

}  // namespace besovlab
