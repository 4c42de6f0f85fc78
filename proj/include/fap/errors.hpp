#pragma once

#include <stdexcept>
#include <string>

namespace fap {

enum class ErrorCode {
    invalid_parameters,
    empty_assignment,
    nonpositive_distance,
    nonpositive_frequency,
    co_located_nodes,
    degenerate_mask,
    unreachable_target,
    empty_graph,
    unknown_vertex,
    placement_failure,
    bad_input,
};

// Thrown for contract violations and unresolvable inputs. Solver
// infeasibility is reported through return values, never through this.
class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const { return code_; }

  private:
    ErrorCode code_;
};

}  // namespace fap
