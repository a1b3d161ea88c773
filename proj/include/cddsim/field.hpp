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

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <limits>
#include <string>

namespace cddsim {

// All numeric code is written against an abstract scalar field Real.  Two
// backends are wired in: "standard" (64-bit double) and "extended"
// (80-bit long double on x86).  The backend only moves the achievable
// 1-F floor; every algorithm is identical.
template <typename Real>
using Complex = std::complex<Real>;

template <typename Real>
using Matrix = Eigen::Matrix<Complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Real>
using Vector = Eigen::Matrix<Complex<Real>, Eigen::Dynamic, 1>;

template <typename Real>
using RealVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

template <typename Real>
constexpr Real field_epsilon() {
  return std::numeric_limits<Real>::epsilon();
}

template <typename Real>
inline std::string precision_name() {
  return "unsupported";
}
template <>
inline std::string precision_name<double>() {
  return "standard";
}
template <>
inline std::string precision_name<long double>() {
  return "extended";
}

// Tolerances quoted in the contracts are stated for the standard backend;
// rescale them by the epsilon ratio so the extended backend is held to a
// proportionally tighter bar.
template <typename Real>
constexpr Real scaled_tol(double tol_at_double) {
  return static_cast<Real>(tol_at_double) *
         (field_epsilon<Real>() / static_cast<Real>(field_epsilon<double>()));
}

// Smallest trustworthy 1-F value: below this the subtraction 1-F is noise,
// so records clamp log10(1-F) here and flag themselves.
template <typename Real>
constexpr Real fidelity_floor() {
  return Real(64) * field_epsilon<Real>();
}

}  // namespace cddsim
