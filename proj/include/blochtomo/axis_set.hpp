#pragma once

#include <blochtomo/data.hpp>

#include <array>
#include <string>
#include <vector>

namespace blochtomo {

/// Weighted measurement axes (theta_n, phi_n) with weights c_n summing to 1.
struct AxisSet {
  std::vector<Vec3> axes;           // unit vectors
  std::vector<double> weights;      // positive, normalized

  static AxisSet from_angles(const std::vector<std::array<double, 3>>& theta_phi_weight);
  static AxisSet cartesian();       // x, y, z with weights 1/3
  static AxisSet tetrahedron();     // vertex axes with weights 1/4

  std::size_t size() const { return axes.size(); }
  void validate(double tol = 1e-12) const;
};

/// Parses a JSON array of {"theta": .., "phi": .., "weight": ..}.
AxisSet axis_set_from_json(const std::string& text);

}  // namespace blochtomo
