#pragma once

#include <stdexcept>
#include <string>

namespace eigenform {

// Exceptions map one-to-one onto the CLI exit codes (1, 2, 3).

/// Malformed input: bad files, invalid triples, violated preconditions.
class InvalidInput : public std::runtime_error {
 public:
  explicit InvalidInput(const std::string& what) : std::runtime_error(what) {}
};

/// Singular interior systems, non-convergent iterations.
class NumericalFailure : public std::runtime_error {
 public:
  explicit NumericalFailure(const std::string& what) : std::runtime_error(what) {}
};

/// A combinatorial prediction and its numerical counterpart disagree.
class ConsistencyFailure : public std::runtime_error {
 public:
  explicit ConsistencyFailure(const std::string& what) : std::runtime_error(what) {}
};

[[noreturn]] void fail_consistency(const std::string& what);

}  // namespace eigenform
