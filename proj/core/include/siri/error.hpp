#pragma once

#include <stdexcept>
#include <string>

namespace siri {

// Malformed input data: unreadable files, ragged rows, bad cells, empty samples.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A computation could not be carried out on otherwise valid data
// (singular covariance, slices too small for the requested regression).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace siri
