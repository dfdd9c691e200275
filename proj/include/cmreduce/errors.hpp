#pragma once

#include <stdexcept>
#include <string>

namespace cmreduce {

/// Base class of every error thrown by the library.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input outside the mathematical domain of an operation.
class domain_error : public error {
 public:
  using error::error;
};

/// A computation would exceed a configured size budget.
class resource_error : public error {
 public:
  using error::error;
};

/// Polynomial is not squarefree modulo the prime (ramified or index divisor).
class not_squarefree : public domain_error {
 public:
  using domain_error::domain_error;
};

class ramified_prime : public domain_error {
 public:
  using domain_error::domain_error;
};

/// The stored curve model degenerates modulo p.
class bad_reduction : public domain_error {
 public:
  using domain_error::domain_error;
};

/// Field descriptor lacks the data an operation needs (conductor, H).
class missing_data : public domain_error {
 public:
  using domain_error::domain_error;
};

/// Randomized search exhausted its attempt budget.
class search_timeout : public resource_error {
 public:
  using resource_error::resource_error;
};

class schema_error : public error {
 public:
  using error::error;
};

class internal_inconsistency : public error {
 public:
  using error::error;
};

}  // namespace cmreduce
