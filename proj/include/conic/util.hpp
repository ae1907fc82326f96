#pragma once
#include <cmath>
#include <cstdint>
#include <cstddef>
#include <string_view>
#include <vector>

namespace conic {

// Compensated (Neumaier) accumulator.  Sums long eigenvalue series without
// losing the low-order bits that the short-time fits depend on.
class NeumaierSum {
public:
  void add(double x) {
    double t = s_ + x;
    if (std::abs(s_) >= std::abs(x))
      c_ += (s_ - t) + x;
    else
      c_ += (x - t) + s_;
    s_ = t;
  }
  double value() const { return s_ + c_; }

private:
  double s_ = 0.0;
  double c_ = 0.0;
};

std::uint64_t fnv1a64(std::string_view bytes);

// B_0..B_n (second convention, B_1 = -1/2).
std::vector<double> bernoulli_numbers(int n);

double binomial(int n, int k);

// q(q-1)(q-2)...(q-m+1), m factors; ff(q,0) = 1.
double falling_factorial(double q, int m);

}  // namespace conic
