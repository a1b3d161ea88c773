// Copyright 2026 The cddsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <complex>

#include "cddsim/operator_core.hpp"
#include "oracles.hpp"

using namespace cddsim;
using Mat = Matrix<double>;
using doctest::Approx;

TEST_CASE("kron: identity case") {
  const Mat i2 = identity_op<double>(2);
  CHECK(max_abs_diff<double>(kron(i2, i2), identity_op<double>(4)) == 0.0);
}

TEST_CASE("kron: pauli x (x) pauli z block layout") {
  const Mat k = kron(pauli<double>(Axis::x), pauli<double>(Axis::z));
  Mat expected = Mat::Zero(4, 4);
  expected.block(0, 2, 2, 2) = pauli<double>(Axis::z);
  expected.block(2, 0, 2, 2) = pauli<double>(Axis::z);
  CHECK(max_abs_diff<double>(k, expected) == 0.0);
}

TEST_CASE("kron matches the element-indexing oracle on random 2x2 inputs") {
  for (unsigned seed : {1u, 2u, 3u}) {
    const Mat a = oracles::random_hermitian(2, seed);
    const Mat b = oracles::random_hermitian(2, seed + 100);
    CHECK(max_abs_diff<double>(kron(a, b), oracles::kron_indexed(a, b)) < 1e-15);
  }
}

TEST_CASE("expm_hermitian: zero generator gives the identity") {
  const Mat z = Mat::Zero(4, 4);
  CHECK(max_abs_diff<double>(expm_hermitian(z, 17.0), identity_op<double>(4)) < 1e-15);
}

TEST_CASE("expm_hermitian: exp(-i pi/2 sx) = -i sx") {
  const Mat sx = pauli<double>(Axis::x);
  const Mat u = expm_hermitian(sx, std::acos(-1.0) / 2.0);
  const Mat expected = std::complex<double>(0, -1) * sx;
  CHECK(max_abs_diff<double>(u, expected) < 1e-14);
}

TEST_CASE("expm_hermitian matches the truncated-series oracle") {
  const Mat h = oracles::random_hermitian(4, 42);
  const Mat u = expm_hermitian(h, 0.3);
  CHECK(max_abs_diff<double>(u, oracles::expm_taylor(h, 0.3)) < 1e-10);
}

TEST_CASE("expm_hermitian rejects non-Hermitian input") {
  Mat m = Mat::Zero(2, 2);
  m(0, 1) = 1.0;
  CHECK_THROWS_AS(expm_hermitian(m, 1.0), NotHermitianError);
}

TEST_CASE("expm_hermitian: inverse and additivity properties") {
  const Mat h = oracles::random_hermitian(8, 7);
  const Mat fwd = expm_hermitian(h, 0.7);
  const Mat bwd = expm_hermitian(h, -0.7);
  CHECK(max_abs_diff<double>(fwd * bwd, identity_op<double>(8)) < 1e-10);
  const Mat split = expm_hermitian(h, 0.3) * expm_hermitian(h, 0.4);
  CHECK(max_abs_diff<double>(fwd, split) < 1e-10);
  CHECK(unitarity_defect(fwd) < 1e-10);
}

TEST_CASE("partial_trace_bath: product state reduces to the system factor") {
  const Mat rho_s = [] {
    Mat m = oracles::random_hermitian(4, 5);
    m = m * m.adjoint();
    return Mat(m / m.trace());
  }();
  const Mat rho_b = [] {
    Mat m = oracles::random_hermitian(2, 6);
    m = m * m.adjoint();
    return Mat(m / m.trace());
  }();
  const Mat reduced = partial_trace_bath(kron(rho_s, rho_b), 2, 1);
  CHECK(max_abs_diff<double>(reduced, rho_s) < 1e-12);
}

TEST_CASE("partial_trace_bath: Bell state reduces to I/2") {
  Vector<double> bell = Vector<double>::Zero(4);
  bell(0) = 1 / std::sqrt(2.0);
  bell(3) = 1 / std::sqrt(2.0);
  const Mat rho = bell * bell.adjoint();
  const Mat reduced = partial_trace_bath(rho, 1, 1);
  CHECK(max_abs_diff<double>(reduced, Mat(0.5 * identity_op<double>(2))) < 1e-12);
}

TEST_CASE("partial_trace_bath matches the index-summation oracle") {
  const Vector<double> psi = oracles::random_state(16, 9);
  const Mat rho = psi * psi.adjoint();
  const Mat reduced = partial_trace_bath(rho, 2, 2);
  CHECK(max_abs_diff<double>(reduced, oracles::partial_trace_indexed(rho, 4, 4)) < 1e-12);
  CHECK(std::abs(reduced.trace().real() - 1.0) < 1e-12);
  CHECK(std::abs(reduced.trace().imag()) < 1e-12);
}

TEST_CASE("partial_trace_bath: trace preservation and system-side covariance") {
  const Vector<double> psi = oracles::random_state(16, 11);
  const Mat rho = psi * psi.adjoint();
  const Mat u = oracles::random_unitary(4, 12);
  const Mat big = kron(u, identity_op<double>(4));
  const Mat lhs = partial_trace_bath(Mat(big * rho * big.adjoint()), 2, 2);
  const Mat rhs = u * partial_trace_bath(rho, 2, 2) * u.adjoint();
  CHECK(max_abs_diff<double>(lhs, rhs) < 1e-10);
}

TEST_CASE("reduced_density_from_state agrees with the density-matrix route") {
  const Vector<double> psi = oracles::random_state(64, 13);
  const Mat via_rho = partial_trace_bath(Mat(psi * psi.adjoint()), 4, 2);
  const Mat direct = reduced_density_from_state(psi, 4, 2);
  CHECK(max_abs_diff<double>(via_rho, direct) < 1e-13);
}

TEST_CASE("spectral_norm: pauli z and scalar matrices") {
  CHECK(spectral_norm(pauli<double>(Axis::z)) == Approx(1.0).epsilon(1e-12));
  const Mat c = Mat(-2.5 * identity_op<double>(8));
  CHECK(spectral_norm(c) == Approx(2.5).epsilon(1e-12));
}

TEST_CASE("spectral_norm: (J/2) sigma.sigma has norm 3J/2") {
  const double j = 1e4;
  Mat h = kron(pauli<double>(Axis::x), pauli<double>(Axis::x));
  h += kron(pauli<double>(Axis::y), pauli<double>(Axis::y));
  h += kron(pauli<double>(Axis::z), pauli<double>(Axis::z));
  h *= j / 2.0;
  // sigma.sigma eigenvalues are {1,1,1,-3}.
  CHECK(spectral_norm(h) == Approx(1.5 * j).epsilon(1e-12));
}

TEST_CASE("spectral_norm is absolutely homogeneous") {
  const Mat h = oracles::random_hermitian(8, 21);
  const double base = spectral_norm(h);
  for (double c : {-3.0, 0.5, 7.0}) {
    const Mat scaled = Mat(c * h);
    CHECK(spectral_norm(scaled) == Approx(std::abs(c) * base).epsilon(1e-12));
  }
}

TEST_CASE("compose: empty product, involution, associativity") {
  CHECK(max_abs_diff<double>(compose<double>({}, 4), identity_op<double>(4)) == 0.0);
  const Mat sx = pauli<double>(Axis::x);
  CHECK(max_abs_diff<double>(compose<double>({sx, sx}), identity_op<double>(2)) < 1e-15);
  const Mat a = oracles::random_unitary(4, 31);
  const Mat b = oracles::random_unitary(4, 32);
  const Mat c = oracles::random_unitary(4, 33);
  const Mat lhs = compose<double>({a, b, c});
  const Mat rhs = a * Mat(b * c);
  CHECK(max_abs_diff<double>(lhs, rhs) < 1e-12);
}

TEST_CASE("compose rejects mismatched dimensions") {
  CHECK_THROWS_AS(
      compose<double>({identity_op<double>(2), identity_op<double>(4)}),
      DimensionMismatchError);
}

TEST_CASE("phase_stripped_distance strips exactly one global phase") {
  const Mat u = oracles::random_unitary(4, 44);
  const Mat v = Mat(std::exp(std::complex<double>(0, 1.234)) * u);
  CHECK(phase_stripped_distance<double>(u, v) < 1e-12);
  CHECK(phase_stripped_distance<double>(u, Mat(identity_op<double>(4))) > 1e-3);
}

TEST_CASE("extended backend: expm stays unitary at long double epsilon") {
  using Real = long double;
  Matrix<Real> h(2, 2);
  h << Real(0.25), Complex<Real>(0.1L, -0.3L), Complex<Real>(0.1L, 0.3L), Real(-1.5);
  const Matrix<Real> u = expm_hermitian<Real>(h, Real(0.9));
  CHECK(double(unitarity_defect(u)) < 1e-17);
}
