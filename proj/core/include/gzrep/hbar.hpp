#pragma once

#include <cmath>

#include "gzrep/errors.hpp"

namespace gzrep {

/// Deformation parameter hbar > 0.
class HBar {
 public:
  explicit HBar(double value = 1.0) : value_(value) {
    if (!(value > 0.0) || !std::isfinite(value)) {
      throw ConfigurationError("hbar must be positive and finite");
    }
  }
  double value() const { return value_; }
  friend bool operator==(HBar a, HBar b) { return a.value_ == b.value_; }

 private:
  double value_;
};

}  // namespace gzrep
