#pragma once

#include <stdexcept>
#include <string>

namespace irrevis {

/// Base class for all library errors.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text (CSV header, unreadable rows).
class parse_error : public error {
 public:
  using error::error;
};

/// Length precondition violated (series too short, empty sequence).
class size_error : public error {
 public:
  using error::error;
};

/// Value outside the mathematical domain of an operation
/// (non-positive price under a logarithm, parameter out of range).
class domain_error : public error {
 public:
  using error::error;
};

/// Operation requested without the data it needs (missing timestamps,
/// invalid divergence configuration).
class config_error : public error {
 public:
  using error::error;
};

/// Not enough observations to produce a meaningful result.
class insufficient_data_error : public error {
 public:
  using error::error;
};

/// Kullback-Leibler divergence is infinite for the given pair.
class divergence_error : public error {
 public:
  using error::error;
};

/// Degenerate input (zero variance, constant matrix, unfittable tail).
class degenerate_error : public error {
 public:
  using error::error;
};

/// Shape mismatch (component count too large, ragged or asymmetric matrix).
class dimension_error : public error {
 public:
  using error::error;
};

}  // namespace irrevis
