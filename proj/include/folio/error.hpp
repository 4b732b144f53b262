#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace folio {

enum class ErrorKind {
  Parse,       // malformed input text (rule file, manuscript, settings)
  Validation,  // well-formed input that violates a rule range or invariant
  Constraint,  // user constraint outside the rule base
  Infeasible,  // no (size, grid) combination satisfies the rules
  Io,          // unreadable or unwritable file
  Check,       // post-pagination verification failed
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Validation: return "validation";
    case ErrorKind::Constraint: return "constraint";
    case ErrorKind::Infeasible: return "infeasible";
    case ErrorKind::Io: return "io";
    case ErrorKind::Check: return "check";
  }
  return "unknown";
}

/// Engine error. `field` names the offending setting or rule key when one
/// applies (dotted path such as "margins.top").
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message, std::string field = {})
      : std::runtime_error(std::move(message)), kind_(kind), field_(std::move(field)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& field() const noexcept { return field_; }

 private:
  ErrorKind kind_;
  std::string field_;
};

}  // namespace folio
