#pragma once

#include <stdexcept>
#include <string>

namespace randig {

// Malformed input: bad permutation, out-of-range parameter, unparsable text.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A parameter value that collapses the model onto a single digraph
// (p_a in {0,1}, m in {0, n(n-1)}, p_d = 1, ...).
class DegenerateModel : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

// The request is well formed but outside what the library computes,
// e.g. an exact PMF for a continuous kernel or for n(n-1) > 20.
class Unsupported : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace randig
