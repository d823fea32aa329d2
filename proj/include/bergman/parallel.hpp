#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

namespace bergman {

/// Number of worker threads: BERGMAN_THREADS when set (1..256, may exceed
/// the core count), else the hardware concurrency.
std::size_t worker_count();

/// Runs body(i) for i in [0, count). Each index must write only to its own
/// output slot; the results therefore do not depend on the thread count.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

/// Neumaier compensated summation.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  CompensatedSum& operator+=(double x) {
    add(x);
    return *this;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

double compensated_sum(const std::vector<double>& xs);

}  // namespace bergman
