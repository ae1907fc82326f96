#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "conic/spectral.hpp"

namespace testutil {

inline double rel(double got, double want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

// Deterministic 64-bit generator (splitmix64), independent of libstdc++
// distribution internals so failures reproduce across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : s_(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (s_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  double uniform(double lo, double hi) {
    return lo + (hi - lo) * (next() >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t s_;
};

// Round to 26 mantissa bits so products of two snapped values are exact.
inline double snap26(double v) {
  if (v == 0.0) return 0.0;
  int e = std::ilogb(v);
  return std::ldexp(std::round(std::ldexp(v, 26 - e - 1)), e + 1 - 26);
}

// Exact unit-sphere spectrum: lambda = l(l+1), multiplicity 2l+1, assembled
// in the same (k, n) layout the solver uses (mode k holds l = k, k+1, ...).
inline conic::Spectrum exact_sphere_spectrum(double lambda_max) {
  conic::Spectrum s;
  s.lambda_max = lambda_max;
  for (int k = 0;; ++k) {
    if (k * (k + 1.0) > lambda_max) break;
    int n = 1;
    for (int l = k;; ++l, ++n) {
      double lam = l * (l + 1.0);
      if (lam > lambda_max) break;
      s.entries.push_back({lam, 0.0, k, n, k == 0 ? 1 : 2});
    }
  }
  std::sort(s.entries.begin(), s.entries.end(),
            [](const conic::SpectrumEntry& a, const conic::SpectrumEntry& b) {
              return a.lambda < b.lambda;
            });
  return s;
}

}  // namespace testutil
