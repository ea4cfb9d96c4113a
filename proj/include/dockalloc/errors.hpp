#pragma once

#include <stdexcept>
#include <string>

namespace dockalloc {

struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Cost evaluated outside its domain (e.g. beyond a table grid).
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

struct InfeasibleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PreconditionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Brute-force search space exceeded the configured cap.
struct CapExceededError : std::runtime_error {
  CapExceededError(const std::string& what, long long visited)
      : std::runtime_error(what), nodes_visited(visited) {}
  long long nodes_visited;
};

}  // namespace dockalloc
