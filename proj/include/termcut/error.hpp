#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace termcut {

// Error classes are disjoint; the CLI maps each one to its own exit code.
enum class ErrorCode {
  invalid_argument,
  invalid_node,
  invalid_terminals,
  undefined_value,
  cannot_reach_k,
  no_feasible_candidate,
  disconnected_graph,
  size_error,
  parse_error,
  io_error,
  universe_mismatch,
  incomplete_assignment,
};

std::string_view to_string(ErrorCode code);

/// Process exit status for an error class: 3 + its position above. 1 and 2
/// are left for unexpected failures and usage errors.
inline int exit_code(ErrorCode code) { return 3 + static_cast<int>(code); }

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace termcut
