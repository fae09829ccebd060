#pragma once

#include <cmath>
#include <vector>

namespace herzlab::detail {

// Error-free running sum kept as a nonoverlapping expansion, so a set of
// values whose exact sum is zero rounds to exactly zero.
class ExactSum {
 public:
  void add(double x) {
    std::size_t out = 0;
    for (double e : parts_) {
      const double s = x + e;
      const double bv = s - x;
      const double err = (x - (s - bv)) + (e - bv);
      if (err != 0.0) parts_[out++] = err;
      x = s;
    }
    parts_.resize(out);
    if (x != 0.0) parts_.push_back(x);
  }

  double value() const {
    double s = 0.0;
    for (double e : parts_) s += e;
    return s;
  }

 private:
  std::vector<double> parts_;
};

}  // namespace herzlab::detail
