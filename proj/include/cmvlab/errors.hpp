#pragma once

#include <stdexcept>
#include <string>

namespace cmvlab {

// Error taxonomy shared with the CLI driver. exit_code() is the process exit
// status the driver maps each family to: 2 invariant violation, 3 precision
// or representation exhausted, 4 bad configuration or misuse.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
  virtual int exit_code() const { return 2; }
  virtual const char* kind() const { return "error"; }
};

struct InvariantViolation : Error {
  explicit InvariantViolation(const std::string& msg) : Error(msg) {}
  int exit_code() const override { return 2; }
  const char* kind() const override { return "invariant_violation"; }
};

struct PrecisionExhausted : Error {
  explicit PrecisionExhausted(const std::string& msg) : Error(msg) {}
  int exit_code() const override { return 3; }
  const char* kind() const override { return "precision_exhausted"; }
};

// Scale-and-log representation failed to fit a materialized value.
struct Overflow : PrecisionExhausted {
  explicit Overflow(const std::string& msg) : PrecisionExhausted(msg) {}
  const char* kind() const override { return "overflow"; }
};

struct BadConfig : Error {
  explicit BadConfig(const std::string& msg) : Error(msg) {}
  int exit_code() const override { return 4; }
  const char* kind() const override { return "bad_config"; }
};

// Input outside the mathematical domain of an operation.
struct DomainError : BadConfig {
  explicit DomainError(const std::string& msg) : BadConfig(msg) {}
  const char* kind() const override { return "domain_error"; }
};

struct OutOfWindow : BadConfig {
  explicit OutOfWindow(const std::string& msg) : BadConfig(msg) {}
  const char* kind() const override { return "out_of_window"; }
};

struct InsufficientMargin : BadConfig {
  explicit InsufficientMargin(const std::string& msg) : BadConfig(msg) {}
  const char* kind() const override { return "insufficient_margin"; }
};

struct WindowTooSmall : BadConfig {
  explicit WindowTooSmall(const std::string& msg) : BadConfig(msg) {}
  const char* kind() const override { return "window_too_small"; }
};

struct SchemaMismatch : BadConfig {
  explicit SchemaMismatch(const std::string& msg) : BadConfig(msg) {}
  const char* kind() const override { return "schema_mismatch"; }
};

// Preconditions of a certified inequality failed on the given data.
struct RepetitionViolated : InvariantViolation {
  explicit RepetitionViolated(const std::string& msg) : InvariantViolation(msg) {}
  const char* kind() const override { return "repetition_violated"; }
};

struct TraceBoundViolated : InvariantViolation {
  explicit TraceBoundViolated(const std::string& msg) : InvariantViolation(msg) {}
  const char* kind() const override { return "trace_bound_violated"; }
};

struct NoRepetitionFound : InvariantViolation {
  explicit NoRepetitionFound(const std::string& msg) : InvariantViolation(msg) {}
  const char* kind() const override { return "no_repetition_found"; }
};

struct EigensolveFailure : InvariantViolation {
  explicit EigensolveFailure(const std::string& msg) : InvariantViolation(msg) {}
  const char* kind() const override { return "eigensolve_failure"; }
};

}  // namespace cmvlab
