#pragma once

#include <stdexcept>
#include <string>

namespace hypotest {

// Argument outside the supported domain (x <= 0, x >= 1, ...). CLI exit 2.
class domain_error : public std::domain_error {
 public:
  explicit domain_error(const std::string& what) : std::domain_error(what) {}
};

// Result would overflow double precision. CLI exit 2.
class overflow_error : public std::range_error {
 public:
  explicit overflow_error(const std::string& what) : std::range_error(what) {}
};

// Parameters fail a theorem's hypothesis. CLI exit 3.
class hypothesis_error : public std::invalid_argument {
 public:
  explicit hypothesis_error(const std::string& what)
      : std::invalid_argument(what) {}
};

// Internal numeric failure (exhausted budgets, degenerate values). CLI exit 4.
class numeric_error : public std::runtime_error {
 public:
  explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace hypotest
