#pragma once

#include <stdexcept>
#include <string>

namespace coco {

// Malformed input: files, schemas, shape mismatches, empty panels.
class data_error : public std::runtime_error {
 public:
  explicit data_error(const std::string& what) : std::runtime_error(what) {}
};

// Numerical failure: non-PSD kernel, singular pivot block, non-finite values.
class numeric_error : public std::runtime_error {
 public:
  explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace coco
