#pragma once

#include <stdexcept>
#include <string>

namespace trafficflow {

// Raised for violated preconditions and undefined maps.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace trafficflow
