#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "sigrec/dense.hpp"
#include "sigrec/inpaint.hpp"
#include "sigrec/operators.hpp"

using namespace sigrec;

namespace {

Mask random_mask(int n, int count, std::mt19937_64& eng) {
  std::vector<char> chosen(n, 0);
  std::vector<int> idx;
  while (static_cast<int>(idx.size()) < count) {
    const int k = static_cast<int>(eng() % n);
    if (!chosen[k]) {
      chosen[k] = 1;
      idx.push_back(k);
    }
  }
  return Mask::from_indices(n, idx);
}

Vector random_values(std::size_t count, std::mt19937_64& eng) {
  Vector v(count);
  for (double& x : v)
    x = static_cast<double>(eng() >> 11) * 0x1.0p-53 * 2.0 - 1.0;
  return v;
}

}  // namespace

TEST_CASE("neumann laplace, n=5, two data points") {
  const DifferenceOperator op =
      build_operator({Order::Laplace, Boundary::Neumann}, 5);
  const Mask mask = Mask::from_indices(5, {1, 3});
  const Vector u = solve_inpainting({op, mask, {0.0, 2.0}});
  const Vector expected{0.0, 0.0, 1.0, 2.0, 2.0};
  CHECK(max_abs_diff(u, expected) <= 1e-12);
}

TEST_CASE("full mask returns the data exactly") {
  for (OperatorKind kind : all_operator_kinds()) {
    const int n = 7;
    const DifferenceOperator op = build_operator(kind, n);
    std::vector<int> all(n);
    for (int i = 0; i < n; ++i) all[i] = i;
    const Vector data{3.0, -1.0, 0.5, 2.0, 2.0, -7.0, 0.25};
    const Vector u = solve_inpainting({op, Mask::from_indices(n, all), data});
    CHECK(u == data);
  }
}

TEST_CASE("periodic laplace with a single datum gives a constant") {
  const DifferenceOperator op =
      build_operator({Order::Laplace, Boundary::Periodic}, 7);
  const Vector u = solve_inpainting({op, Mask::from_indices(7, {3}), {4.0}});
  for (double v : u) CHECK(v == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("spline reproduces the identity ramp") {
  const int n = 9;
  const Mask mask = Mask::from_indices(n, {0, n - 1});
  const Vector u = spline_reconstruct(mask, {0.0, static_cast<double>(n - 1)});
  for (int j = 0; j < n; ++j) CHECK(u[j] == static_cast<double>(j));
}

TEST_CASE("spline with a single knot is constant") {
  const Mask mask = Mask::from_indices(6, {2});
  const Vector u = spline_reconstruct(mask, {7.0});
  for (double v : u) CHECK(v == 7.0);
}

TEST_CASE("direct solve equals the spline closed form for neumann laplace") {
  std::mt19937_64 eng(12);
  for (int rep = 0; rep < 25; ++rep) {
    const int n = 10 + static_cast<int>(eng() % 119);
    const DifferenceOperator op =
        build_operator({Order::Laplace, Boundary::Neumann}, n);
    const int count = 1 + static_cast<int>(eng() % n);
    const Mask mask = random_mask(n, count, eng);
    const Vector data = random_values(mask.gamma.size(), eng);
    const Vector direct = solve_inpainting({op, mask, data});
    const Vector spline = spline_reconstruct(mask, data);
    CHECK(max_abs_diff(direct, spline) <= 1e-10);
  }
}

TEST_CASE("interpolation rows hold exactly and the maximum principle holds") {
  std::mt19937_64 eng(13);
  for (OperatorKind kind : all_operator_kinds()) {
    const int n = 40;
    const DifferenceOperator op = build_operator(kind, n);
    const Mask mask = random_mask(n, 6, eng);
    const Vector data = random_values(mask.gamma.size(), eng);
    const Vector u = solve_inpainting({op, mask, data});
    for (std::size_t i = 0; i < mask.gamma.size(); ++i)
      CHECK(u[mask.gamma[i]] == data[i]);
    if (kind.order == Order::Laplace) {
      const double lo = *std::min_element(data.begin(), data.end());
      const double hi = *std::max_element(data.begin(), data.end());
      for (double v : u) {
        CHECK(v >= lo - 1e-12);
        CHECK(v <= hi + 1e-12);
      }
    }
  }
}

TEST_CASE("implied sparse right-hand side sums to zero") {
  // g = C(u - data + L u) vanishes off the mask and sums to zero.
  std::mt19937_64 eng(14);
  for (OperatorKind kind : all_operator_kinds()) {
    const int n = 24;
    const DifferenceOperator op = build_operator(kind, n);
    const Mask mask = random_mask(n, 5, eng);
    const Vector data = random_values(mask.gamma.size(), eng);
    const Vector u = solve_inpainting({op, mask, data});
    const Vector lu = matvec(op, u);
    long double sum = 0.0L;
    for (std::size_t i = 0; i < mask.gamma.size(); ++i) {
      const int k = mask.gamma[i];
      sum += (u[k] - data[i]) + lu[k];
    }
    CHECK(std::abs(static_cast<double>(sum)) <= 1e-9);
  }
}

TEST_CASE("mask validation") {
  CHECK_THROWS_AS(Mask::from_indices(5, {}), EmptyMask);
  CHECK_THROWS_AS(Mask::from_indices(5, {5}), IndexOutOfRange);
  CHECK_THROWS_AS(Mask::from_indices(5, {-1}), IndexOutOfRange);
  CHECK_THROWS_AS(Mask::from_indices(5, {1, 1}), Error);
  const Mask m = Mask::from_indices(5, {4, 0});
  CHECK(m.gamma == std::vector<int>{0, 4});
  CHECK(m.contains(0));
  CHECK(!m.contains(2));
}

TEST_CASE("data size must match the mask") {
  const DifferenceOperator op =
      build_operator({Order::Laplace, Boundary::Neumann}, 5);
  const Mask mask = Mask::from_indices(5, {1, 3});
  CHECK_THROWS_AS(solve_inpainting({op, mask, {1.0}}), DimensionMismatch);
}
