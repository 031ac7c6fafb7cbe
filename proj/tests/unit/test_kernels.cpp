#include <doctest.h>

#include <cmath>
#include <numbers>

#include <omp.h>

#include "chronopath/errors.hpp"
#include "chronopath/kernels.hpp"

using namespace chronopath;
using namespace chronopath::kernels;
constexpr double kPi = std::numbers::pi;

namespace {

struct ThreadScope {
  explicit ThreadScope(int n) : saved(omp_get_max_threads()) { omp_set_num_threads(n); }
  ~ThreadScope() { omp_set_num_threads(saved); }
  int saved;
};

}  // namespace

TEST_CASE("single factor matches the sine ratio") {
  const double theta = 2.23 * kPi;
  const std::int64_t big_n = 50;
  for (std::int64_t q : {1, 7, 25, 50}) {
    const auto f = interference_factor(theta, big_n, q);
    const double z = theta / big_n;
    const double ratio = std::sin((big_n + 1 - q) * z / 2) / std::sin(q * z / 2);
    CHECK(std::exp(f.log_abs) == doctest::Approx(std::abs(ratio)).epsilon(1e-13));
    CHECK(f.negative == (ratio < 0));
    CHECK_FALSE(f.pole);
  }
  const auto b = interference_factor(0.0, 10, 3);
  CHECK(std::exp(b.log_abs) == doctest::Approx(8.0 / 3.0));
}

TEST_CASE("pole lattice is detected") {
  // z = 3 pi / 300, q z / 2 = pi at q = 200
  const auto f = interference_factor(3 * kPi, 300, 200);
  CHECK(f.pole);
  CHECK(f.pole_k == 1);
  CHECK_THROWS_AS(product_prefix_serial(3 * kPi, 300), SingularDenominator);
  CHECK_THROWS_AS(product_prefix_parallel(3 * kPi, 300), SingularDenominator);
  CHECK_NOTHROW(product_prefix_serial(3 * kPi + 1e-9, 300));
}

TEST_CASE("serial and parallel prefix scans agree") {
  ThreadScope threads(4);
  for (std::int64_t big_n : {1, 17, 4096, 4097, 20000, 100003}) {
    const auto s = product_prefix_serial(2.23 * kPi, big_n);
    const auto p = product_prefix_parallel(2.23 * kPi, big_n);
    REQUIRE(s.log_abs.size() == static_cast<std::size_t>(big_n + 1));
    REQUIRE(p.log_abs.size() == s.log_abs.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < s.log_abs.size(); ++i) {
      worst = std::max(worst, std::abs(s.log_abs[i] - p.log_abs[i]) / std::max(1.0, std::abs(s.log_abs[i])));
      REQUIRE(s.negative[i] == p.negative[i]);
    }
    CHECK(worst < 1e-12);
  }
}

TEST_CASE("parallel scan does not depend on the thread count") {
  std::vector<double> reference;
  for (int threads : {1, 2, 3, 4}) {
    ThreadScope scope(threads);
    const auto p = product_prefix_parallel(3.1 * kPi, 30000);
    if (reference.empty())
      reference = p.log_abs;
    else
      CHECK(p.log_abs == reference);
  }
}

TEST_CASE("compensated sum recovers small terms") {
  CompensatedSum s;
  s.add(1.0);
  for (int i = 0; i < 1000; ++i) s.add(1e-17);
  s.add(-1.0);
  CHECK(s.value() == doctest::Approx(1e-14).epsilon(1e-6));
}
