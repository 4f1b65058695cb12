#pragma once

#include <stdexcept>
#include <string>

namespace racg {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed graph data: duplicate or empty vertex names, self-loops,
// references to undeclared vertices, out-of-range indices.
struct GraphError : Error {
  using Error::Error;
};

// An operation was invoked outside its stated contract.
struct PreconditionError : Error {
  using Error::Error;
};

// A file or string could not be parsed in the expected format.
struct ParseError : Error {
  using Error::Error;
};

// A certificate or report is pinned to a different graph than the one
// it is being used with.
struct StaleCertificateError : Error {
  using Error::Error;
};

}  // namespace racg
