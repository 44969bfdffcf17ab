#pragma once

#include <stdexcept>
#include <string>

namespace vigil {

// Input data is well-formed but cannot support the requested computation
// (single-class dataset, zero-width eye, all-zero ensemble weights, ...).
class DegenerateDataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input files (CSV/JSON) or unreadable paths.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace vigil
