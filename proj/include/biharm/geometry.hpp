#pragma once

#include <cstddef>

#include "biharm/types.hpp"

namespace biharm::geometry {

/// Default relative tolerance for the collinearity / coplanarity predicates.
inline constexpr double kDegeneracyTol = 1e-9;

/// L sensors x_j = center + radius (cos t_j, sin t_j), t_j = 2 pi j / L.
SensorArray circle_array_2d(int count, const Point& center, double radius);

/// L sensors on a sphere: theta_j = arccos(2j/L - 1), phi_j = 2 pi j / L.
SensorArray sphere_array_3d(int count, const Point& center, double radius);

/// True iff no three sensors are collinear (relative to the array scale).
bool no_three_collinear(const SensorArray& sensors, double tol = kDegeneracyTol);

/// True iff no four sensors are coplanar (relative to the array scale).
bool no_four_coplanar(const SensorArray& sensors, double tol = kDegeneracyTol);

/// Largest pairwise distance between sensors; 0 for fewer than two points.
double max_pairwise_distance(const SensorArray& sensors);

/// Number of circles C_{l,m} (center x_l, radius |x_l - z_m|) passing through z.
std::size_t circle_count(const Point& z, const SensorArray& sensors, const SourceConfig& sources,
                         double tol);

struct Box {
    Point lower = Point::Zero();
    Point upper = Point::Zero();
};

/// Radius of the origin-centered ball holding all sensors and the corners of
/// the region box. Used to check k0 <= pi / (2R) for harmonic data.
double enclosing_radius(const SensorArray& sensors, const Box& sources_region);

}  // namespace biharm::geometry
