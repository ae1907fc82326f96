#include "conic/util.hpp"

#include <algorithm>
#include <stdexcept>

namespace conic {

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::vector<double> bernoulli_numbers(int n) {
  if (n < 0) throw std::invalid_argument("bernoulli_numbers: n < 0");
  // Akiyama-Tanigawa style recurrence via B_m = -sum_{k<m} C(m+1,k) B_k / (m+1).
  std::vector<double> b(n + 1, 0.0);
  b[0] = 1.0;
  for (int m = 1; m <= n; ++m) {
    double s = 0.0;
    for (int k = 0; k < m; ++k) s += binomial(m + 1, k) * b[k];
    b[m] = -s / (m + 1);
  }
  return b;
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

double falling_factorial(double q, int m) {
  double r = 1.0;
  for (int i = 0; i < m; ++i) r *= q - i;
  return r;
}

}  // namespace conic
