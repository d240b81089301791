#include <cmath>
#include <random>

#include "doctest.h"
#include "sigrec/dictionary.hpp"
#include "sigrec/operators.hpp"
#include "sigrec/pinv.hpp"

using namespace sigrec;

namespace {

Dictionary make_dictionary(OperatorKind kind, int n) {
  return build_dictionary(pinv_closed_form(build_operator(kind, n)));
}

Vector random_vector(int n, std::mt19937_64& eng) {
  Vector v(n);
  for (double& x : v)
    x = static_cast<double>(eng() >> 11) * 0x1.0p-53 * 2.0 - 1.0;
  return v;
}

}  // namespace

TEST_CASE("periodic laplace atoms all have norm^2 = 2/27 at n=3") {
  const Dictionary d = make_dictionary({Order::Laplace, Boundary::Periodic}, 3);
  for (double norm : d.norms)
    CHECK(norm * norm == doctest::Approx(2.0 / 27.0).epsilon(1e-14));
}

TEST_CASE("periodic atom norms are equal, neumann norms are not") {
  for (Order order : {Order::Laplace, Order::Biharmonic}) {
    const Dictionary p = make_dictionary({order, Boundary::Periodic}, 8);
    for (double norm : p.norms)
      CHECK(std::abs(norm - p.norms[0]) <= 1e-12 * p.norms[0]);
    const Dictionary q = make_dictionary({order, Boundary::Neumann}, 8);
    double lo = q.norms[0], hi = q.norms[0];
    for (double norm : q.norms) {
      lo = std::min(lo, norm);
      hi = std::max(hi, norm);
    }
    CHECK(hi / lo > 1.0 + 1e-6);
  }
}

TEST_CASE("atoms have zero mean") {
  for (OperatorKind kind : all_operator_kinds())
    for (int n : {3, 16, 64}) {
      const Dictionary d = make_dictionary(kind, n);
      for (const Vector& atom : d.atoms) {
        long double s = 0.0L;
        for (double v : atom) s += v;
        CHECK(std::abs(static_cast<double>(s)) / n <= 1e-12);
      }
    }
}

TEST_CASE("atoms times norms reconstruct the pseudo-inverse columns exactly") {
  const PinvMatrix p =
      pinv_closed_form(build_operator({Order::Laplace, Boundary::Neumann}, 11));
  const Dictionary d = build_dictionary(p);
  for (int k = 0; k < d.n; ++k)
    for (int i = 0; i < d.n; ++i) CHECK(d.atoms[k][i] == p.entries(i, k));
}

TEST_CASE("self-correlation of a normalized atom is 1 and maximal") {
  const Dictionary d = make_dictionary({Order::Laplace, Boundary::Neumann}, 12);
  const Vector c = correlations(d, d.normalized[5]);
  CHECK(c[5] == doctest::Approx(1.0).epsilon(1e-12));
  for (int k = 0; k < d.n; ++k) CHECK(std::abs(c[k]) <= std::abs(c[5]) + 1e-12);
}

TEST_CASE("correlations of the zero residual vanish") {
  const Dictionary d = make_dictionary({Order::Biharmonic, Boundary::Periodic}, 9);
  for (double c : correlations(d, Vector(9, 0.0))) CHECK(c == 0.0);
}

TEST_CASE("correlations match the direct inner-product loop") {
  std::mt19937_64 eng(5);
  const Dictionary d = make_dictionary({Order::Laplace, Boundary::Periodic}, 16);
  const Vector r = random_vector(16, eng);
  const Vector c = correlations(d, r);
  for (int k = 0; k < 16; ++k) {
    double s = 0.0;
    for (int i = 0; i < 16; ++i) s += r[i] * d.normalized[k][i];
    CHECK(std::abs(c[k] - s) <= 1e-13);
  }
  CHECK(c == serial::correlations(d, r));
}

TEST_CASE("correlations are linear in the residual") {
  std::mt19937_64 eng(9);
  const Dictionary d = make_dictionary({Order::Biharmonic, Boundary::Neumann}, 20);
  const Vector r1 = random_vector(20, eng);
  const Vector r2 = random_vector(20, eng);
  const double alpha = 0.7, beta = -1.3;
  Vector mix(20);
  for (int i = 0; i < 20; ++i) mix[i] = alpha * r1[i] + beta * r2[i];
  const Vector c1 = correlations(d, r1);
  const Vector c2 = correlations(d, r2);
  const Vector cm = correlations(d, mix);
  for (int k = 0; k < 20; ++k)
    CHECK(std::abs(cm[k] - (alpha * c1[k] + beta * c2[k])) <= 1e-12);
}

TEST_CASE("dimension mismatch and zero-column errors") {
  const Dictionary d = make_dictionary({Order::Laplace, Boundary::Periodic}, 8);
  CHECK_THROWS_AS(correlations(d, Vector(9, 0.0)), DimensionMismatch);
  PinvMatrix broken;
  broken.n = 4;
  broken.kind = {Order::Laplace, Boundary::Periodic};
  broken.entries = Matrix(4, 4, 0.0);
  CHECK_THROWS_AS(build_dictionary(broken), ZeroColumn);
}
