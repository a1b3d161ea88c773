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

#include "cddsim/geometry.hpp"

#include <cmath>

#include "cddsim/errors.hpp"

namespace cddsim {

GeometryKind geometry_kind_from_string(const std::string& s) {
  if (s == "linear") return GeometryKind::linear;
  if (s == "circular") return GeometryKind::circular;
  if (s == "polygonal") return GeometryKind::polygonal;
  throw ValidationError("unknown geometry kind '" + s + "'");
}

std::string to_string(GeometryKind k) {
  switch (k) {
    case GeometryKind::linear: return "linear";
    case GeometryKind::circular: return "circular";
    case GeometryKind::polygonal: return "polygonal";
  }
  return "?";
}

double Geometry::distance(int a, int b) const {
  const double dx = positions[a][0] - positions[b][0];
  const double dy = positions[a][1] - positions[b][1];
  return std::sqrt(dx * dx + dy * dy);
}

Geometry build_geometry(GeometryKind kind, int system_count, int bath_count) {
  if (system_count != 4 && system_count != 8)
    throw UnsupportedCountError("system_count must be 4 or 8 (one or two code blocks), got " +
                                std::to_string(system_count));
  if (bath_count < 1)
    throw UnsupportedCountError("bath_count must be >= 1, got " +
                                std::to_string(bath_count));

  Geometry g;
  g.kind = kind;
  g.system_count = system_count;
  g.bath_count = bath_count;
  const int n = system_count + bath_count;
  g.positions.resize(n);

  const double pi = std::acos(-1.0);
  switch (kind) {
    case GeometryKind::linear:
      for (int k = 0; k < n; ++k) g.positions[k] = {double(k), 0.0};
      break;
    case GeometryKind::circular: {
      // Unit chord between neighbors fixes the radius.
      const double radius = 0.5 / std::sin(pi / n);
      for (int k = 0; k < n; ++k) {
        const double theta = 2.0 * pi * k / n;
        g.positions[k] = {radius * std::cos(theta), radius * std::sin(theta)};
      }
      break;
    }
    case GeometryKind::polygonal: {
      for (int k = 0; k < system_count; ++k) g.positions[k] = {double(k), 0.0};
      const double cx = 0.5 * (system_count - 1);
      const double cy = 1.0;
      if (bath_count == 1) {
        g.positions[system_count] = {cx, cy};
      } else {
        const double radius = 0.5 / std::sin(pi / bath_count);
        for (int k = 0; k < bath_count; ++k) {
          const double theta = 2.0 * pi * k / bath_count + pi / 2.0;
          g.positions[system_count + k] = {cx + radius * std::cos(theta),
                                           cy + radius * std::sin(theta)};
        }
      }
      break;
    }
  }
  return g;
}

}  // namespace cddsim
