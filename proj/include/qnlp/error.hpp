#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qnlp {

enum class ErrorKind {
  NoReduction,
  UnknownToken,
  DatasetTooSmall,
  TemplateMismatch,
  MissingParameters,
  ZeroNorm,
  ArityMismatch,
  WidthMismatch,
  BadIndex,
  EmptyCorpus,
  EmptyTestSet,
  LengthMismatch,
  CheckpointMismatch,
  Config,
  Io,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the kinds above so
/// callers (and tests) can branch on the cause without parsing messages.
class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

} // namespace qnlp
