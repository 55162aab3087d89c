#pragma once

#include <stdexcept>
#include <string>

namespace hemopap {

// A sufficient condition required by an operation does not hold (distinct
// from malformed input or a numerical failure): maps to CLI exit code 1.
class ConditionError : public std::runtime_error {
 public:
  explicit ConditionError(const std::string& what) : std::runtime_error(what) {}
};

// Scenario file is malformed or fails validation: maps to CLI exit code 2.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace hemopap
