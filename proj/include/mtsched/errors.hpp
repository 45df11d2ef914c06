#pragma once

#include <stdexcept>

namespace mtsched {

// Each class maps to its own process exit code in the command-line tool.

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Unparsable or nonpositive value in a job stream; the message names the
// 0-based position.
class JobStreamError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A job violated a promise made by the caller, e.g. p > p_max.
class ContractError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EstimateViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class TwoPassMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace mtsched
