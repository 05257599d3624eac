#pragma once

#include <stdexcept>
#include <string>

namespace flipclust {

/// Malformed or out-of-contract input data (bad files, invalid graphs, ...).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numerical routine failed to meet its accuracy or convergence contract.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace flipclust
