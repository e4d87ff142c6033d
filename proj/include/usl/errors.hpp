// Error types shared across the library. Budget/cap exhaustion during a
// search is a normal outcome and is reported through result structs, not
// through these exceptions; exceptions are reserved for violated
// preconditions, malformed inputs and I/O failures.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace usl {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DomainError : Error {
  using Error::Error;
};

// A consecutive state pair is not an edge of the system.
struct InvalidEdge : Error {
  std::size_t index;
  explicit InvalidEdge(std::size_t i)
      : Error("invalid edge at position " + std::to_string(i)), index(i) {}
};

// Enumeration or lazy expansion hit its configured node cap.
struct BudgetExceeded : Error {
  std::uint64_t nodes;
  explicit BudgetExceeded(std::uint64_t n)
      : Error("node budget exceeded after " + std::to_string(n) + " nodes"),
        nodes(n) {}
};

// No trajectory satisfies an input/output specification in a finite system.
struct NoWitness : Error {
  using Error::Error;
};

struct NeverSucceeds : Error {
  using Error::Error;
};

struct MalformedProgram : Error {
  using Error::Error;
};

struct DegenerateFit : Error {
  using Error::Error;
};

struct InconsistentIndices : Error {
  using Error::Error;
};

struct CapExceeded : Error {
  using Error::Error;
};

struct UnknownExperiment : Error {
  using Error::Error;
};

struct SchemaViolation : Error {
  using Error::Error;
};

struct IoFailure : Error {
  using Error::Error;
};

}  // namespace usl
