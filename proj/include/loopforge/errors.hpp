#pragma once

#include <stdexcept>
#include <string>

namespace loopforge {

// Error categories map onto CLI exit codes: input/format problems exit 2,
// failed mathematical verdicts exit 1, resource caps exit 3.
enum class ErrorKind { input, verdict, cap };

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

private:
  ErrorKind kind_;
};

struct InputError : Error {
  explicit InputError(const std::string& w) : Error(ErrorKind::input, w) {}
};

// A computation completed but contradicts a property the library treats as a
// theorem; surfacing this loudly is the point of the audit suite.
struct VerdictError : Error {
  explicit VerdictError(const std::string& w) : Error(ErrorKind::verdict, w) {}
};

struct CapExceeded : Error {
  explicit CapExceeded(const std::string& w) : Error(ErrorKind::cap, w) {}
};

struct SizeLimit : Error {
  explicit SizeLimit(const std::string& w) : Error(ErrorKind::cap, w) {}
};

}  // namespace loopforge
