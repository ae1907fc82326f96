#include "doctest.h"

#include "conic/util.hpp"

#include <cmath>
#include <string>

using namespace conic;

TEST_CASE("compensated sum keeps low-order bits a naive sum drops") {
  NeumaierSum s;
  s.add(1e20);
  s.add(1.0);
  s.add(-1e20);
  CHECK(s.value() == 1.0);

  NeumaierSum t;
  t.add(1.0);
  for (int i = 0; i < 1000000; ++i) t.add(1e-16);
  CHECK(std::abs(t.value() - (1.0 + 1e-10)) < 1e-22);
}

TEST_CASE("fnv1a64 matches the published test vectors") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ull);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cull);
  CHECK(fnv1a64("foobar") == 0x85944171f73967e8ull);
  CHECK(fnv1a64("foobar") != fnv1a64("foobaz"));
}

TEST_CASE("Bernoulli numbers, second convention") {
  auto b = bernoulli_numbers(12);
  REQUIRE(b.size() == 13);
  CHECK(b[0] == 1.0);
  CHECK(b[1] == -0.5);
  CHECK(b[2] == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
  CHECK(b[3] == 0.0);
  CHECK(b[4] == doctest::Approx(-1.0 / 30.0).epsilon(1e-15));
  CHECK(b[5] == 0.0);
  CHECK(b[6] == doctest::Approx(1.0 / 42.0).epsilon(1e-15));
  CHECK(b[8] == doctest::Approx(-1.0 / 30.0).epsilon(1e-15));
  CHECK(b[10] == doctest::Approx(5.0 / 66.0).epsilon(1e-15));
  CHECK(b[12] == doctest::Approx(-691.0 / 2730.0).epsilon(1e-15));
}

TEST_CASE("binomial coefficients") {
  CHECK(binomial(0, 0) == 1.0);
  CHECK(binomial(10, 0) == 1.0);
  CHECK(binomial(10, 10) == 1.0);
  CHECK(binomial(10, 3) == 120.0);
  CHECK(binomial(52, 5) == 2598960.0);
  // Pascal identity on a sample
  CHECK(binomial(20, 7) == binomial(19, 6) + binomial(19, 7));
}

TEST_CASE("falling factorial") {
  CHECK(falling_factorial(7.3, 0) == 1.0);
  CHECK(falling_factorial(5.5, 3) == doctest::Approx(5.5 * 4.5 * 3.5).epsilon(1e-15));
  CHECK(falling_factorial(-1.5, 2) == doctest::Approx(3.75).epsilon(1e-15));
  CHECK(falling_factorial(3.0, 4) == 0.0);  // hits the zero factor
}
