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

#include <array>
#include <string>
#include <vector>

namespace cddsim {

enum class GeometryKind { linear, circular, polygonal };

GeometryKind geometry_kind_from_string(const std::string& s);
std::string to_string(GeometryKind k);

// Qubit layout in dimensionless 2D coordinates.  System qubits come first
// (leading tensor slots), bath qubits trail.  Distances feed the 2^{-d}
// system-bath falloff and the 1/d^3 intrabath dipolar falloff.
struct Geometry {
  GeometryKind kind = GeometryKind::linear;
  int system_count = 4;
  int bath_count = 2;
  std::vector<std::array<double, 2>> positions;  // size system_count + bath_count

  int total_count() const { return system_count + bath_count; }
  double distance(int a, int b) const;
};

// Deterministic layouts:
//   linear    - all qubits collinear at unit spacing, system block first
//   circular  - equally spaced on a circle with unit chord between neighbors
//   polygonal - system on a unit-spacing line, bath on a regular polygon of
//               unit side centered one unit above the line's midpoint
Geometry build_geometry(GeometryKind kind, int system_count, int bath_count);

}  // namespace cddsim
