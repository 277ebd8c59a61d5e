#ifndef EIGENLAB_ERROR_HPP
#define EIGENLAB_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace eigenlab {

// Every error belongs to one of three families; the CLI maps them to
// exit codes 1, 2 and 3 respectively.
enum class ErrorCategory { config, numeric, invariant };

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, std::string kind, const std::string& message)
      : std::runtime_error(kind + ": " + message),
        category_(category),
        kind_(std::move(kind)) {}

  ErrorCategory category() const noexcept { return category_; }
  const std::string& kind() const noexcept { return kind_; }

 private:
  ErrorCategory category_;
  std::string kind_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, const std::string& message)
      : Error(ErrorCategory::config, "SyntaxError",
              "at offset " + std::to_string(position) + ": " + message),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class ConfigError : public Error {
 public:
  ConfigError(int line, const std::string& field, const std::string& message)
      : Error(ErrorCategory::config, "ConfigError",
              (line > 0 ? "line " + std::to_string(line) + ", " : std::string{}) +
                  "field '" + field + "': " + message),
        line_(line),
        field_(field) {}
  int line() const noexcept { return line_; }
  const std::string& field() const noexcept { return field_; }

 private:
  int line_;
  std::string field_;
};

#define EIGENLAB_DEFINE_ERROR(Name, Category)                      \
  class Name : public Error {                                      \
   public:                                                         \
    explicit Name(const std::string& message)                      \
        : Error(ErrorCategory::Category, #Name, message) {}        \
  };

EIGENLAB_DEFINE_ERROR(UnknownIdentifier, config)
EIGENLAB_DEFINE_ERROR(UnknownScenario, config)
EIGENLAB_DEFINE_ERROR(PreconditionFailed, config)

EIGENLAB_DEFINE_ERROR(DomainError, numeric)
EIGENLAB_DEFINE_ERROR(NonElliptic, numeric)
EIGENLAB_DEFINE_ERROR(DegenerateDomain, numeric)
EIGENLAB_DEFINE_ERROR(SizeMismatch, numeric)
EIGENLAB_DEFINE_ERROR(ZeroVector, numeric)
EIGENLAB_DEFINE_ERROR(Reducible, numeric)
EIGENLAB_DEFINE_ERROR(SizeExceeded, numeric)
EIGENLAB_DEFINE_ERROR(NotSymmetric, numeric)
EIGENLAB_DEFINE_ERROR(ZeroDenominator, numeric)
EIGENLAB_DEFINE_ERROR(StiffnessFailure, numeric)
EIGENLAB_DEFINE_ERROR(BracketFailure, numeric)
EIGENLAB_DEFINE_ERROR(EmptyTail, numeric)
EIGENLAB_DEFINE_ERROR(WindowTooSmall, numeric)
EIGENLAB_DEFINE_ERROR(NotAWitness, numeric)

EIGENLAB_DEFINE_ERROR(MonotonicityViolation, invariant)
EIGENLAB_DEFINE_ERROR(PerronViolation, invariant)
EIGENLAB_DEFINE_ERROR(NonMonotone, invariant)
EIGENLAB_DEFINE_ERROR(ChainViolation, invariant)
EIGENLAB_DEFINE_ERROR(InvariantViolation, invariant)

#undef EIGENLAB_DEFINE_ERROR

class CertificateRejected : public Error {
 public:
  CertificateRejected(double node, const std::string& inequality)
      : Error(ErrorCategory::numeric, "CertificateRejected",
              inequality + " violated near x=" + std::to_string(node)),
        node_(node),
        inequality_(inequality) {}
  double node() const noexcept { return node_; }
  const std::string& inequality() const noexcept { return inequality_; }

 private:
  double node_;
  std::string inequality_;
};

}  // namespace eigenlab

#endif  // EIGENLAB_ERROR_HPP
