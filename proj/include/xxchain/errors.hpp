#pragma once

#include <stdexcept>
#include <string>

namespace xxchain {

// Common base so callers (and the CLI) can map any library failure to a
// diagnostic and an exit code in one place.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidSeries : Error { using Error::Error; };
struct IndexOutOfRange : Error { using Error::Error; };
struct NotAGrid : Error { using Error::Error; };
struct NegativeWeight : Error { using Error::Error; };
struct InvalidParams : Error { using Error::Error; };
struct InvalidSpec : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };
struct ConvergenceFailure : Error { using Error::Error; };
struct PremiseViolated : Error { using Error::Error; };
struct InvalidSite : Error { using Error::Error; };

}  // namespace xxchain
