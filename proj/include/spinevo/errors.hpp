#pragma once

#include <stdexcept>
#include <string>

namespace spinevo {

// Caller-side misuse: bad arguments, invalid configuration, out-of-contract
// sizes. The CLI maps these to exit code 2.
class config_error : public std::invalid_argument {
 public:
  explicit config_error(const std::string& what) : std::invalid_argument(what) {}
};

class invalid_quantum_numbers : public config_error {
 public:
  explicit invalid_quantum_numbers(const std::string& what) : config_error(what) {}
};

class unsupported_variant : public config_error {
 public:
  explicit unsupported_variant(const std::string& what) : config_error(what) {}
};

class dimension_mismatch : public config_error {
 public:
  explicit dimension_mismatch(const std::string& what) : config_error(what) {}
};

class size_error : public config_error {
 public:
  explicit size_error(const std::string& what) : config_error(what) {}
};

class overflow_guard : public config_error {
 public:
  explicit overflow_guard(const std::string& what) : config_error(what) {}
};

// Numerical failures at run time. The CLI maps these to exit code 3.
class numerical_error : public std::runtime_error {
 public:
  explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

class convergence_failure : public numerical_error {
 public:
  explicit convergence_failure(const std::string& what) : numerical_error(what) {}
};

class degenerate_energy : public numerical_error {
 public:
  explicit degenerate_energy(const std::string& what) : numerical_error(what) {}
};

// Thrown when an observable never reaches the requested threshold inside the
// search horizon; carries the smallest value seen so callers can report it.
class no_crossing_error : public numerical_error {
 public:
  no_crossing_error(const std::string& what, double observed_minimum)
      : numerical_error(what), observed_minimum_(observed_minimum) {}
  double observed_minimum() const { return observed_minimum_; }

 private:
  double observed_minimum_;
};

// A brute-force consistency check disagreed with the restricted machinery.
// The CLI maps this to exit code 4.
class oracle_mismatch : public std::runtime_error {
 public:
  explicit oracle_mismatch(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace spinevo
