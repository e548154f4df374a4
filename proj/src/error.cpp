#include "termcut/error.hpp"

namespace termcut {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid-argument";
    case ErrorCode::invalid_node: return "invalid-node";
    case ErrorCode::invalid_terminals: return "invalid-terminals";
    case ErrorCode::undefined_value: return "undefined-value";
    case ErrorCode::cannot_reach_k: return "cannot-reach-k";
    case ErrorCode::no_feasible_candidate: return "no-feasible-candidate";
    case ErrorCode::disconnected_graph: return "disconnected-graph";
    case ErrorCode::size_error: return "size-error";
    case ErrorCode::parse_error: return "parse-error";
    case ErrorCode::io_error: return "io-error";
    case ErrorCode::universe_mismatch: return "universe-mismatch";
    case ErrorCode::incomplete_assignment: return "incomplete-assignment";
  }
  return "unknown";
}

}  // namespace termcut
