#include "biharm/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Geometry>

#include "biharm/errors.hpp"

namespace biharm::geometry {

namespace {

void require_layout_args(int count, double radius, const char* name)
{
    if (count < 1) {
        throw DomainError(std::string(name) + ": need at least one sensor");
    }
    if (!(radius > 0.0)) {
        throw DomainError(std::string(name) + ": radius must be positive");
    }
}

}  // namespace

SensorArray circle_array_2d(int count, const Point& center, double radius)
{
    require_layout_args(count, radius, "circle_array_2d");
    std::vector<Point> pts;
    pts.reserve(static_cast<std::size_t>(count));
    for (int j = 0; j < count; ++j) {
        const double t = 2.0 * std::numbers::pi * j / count;
        pts.push_back(point2(center.x() + radius * std::cos(t), center.y() + radius * std::sin(t)));
    }
    return SensorArray(Dimension::Two, std::move(pts));
}

SensorArray sphere_array_3d(int count, const Point& center, double radius)
{
    require_layout_args(count, radius, "sphere_array_3d");
    std::vector<Point> pts;
    pts.reserve(static_cast<std::size_t>(count));
    for (int j = 0; j < count; ++j) {
        const double theta = std::acos(2.0 * j / count - 1.0);
        const double phi = 2.0 * std::numbers::pi * j / count;
        pts.push_back(center + radius * Point(std::sin(theta) * std::cos(phi),
                                              std::sin(theta) * std::sin(phi), std::cos(theta)));
    }
    return SensorArray(Dimension::Three, std::move(pts));
}

double max_pairwise_distance(const SensorArray& sensors)
{
    double d = 0.0;
    const auto& p = sensors.points();
    for (std::size_t i = 0; i < p.size(); ++i) {
        for (std::size_t j = i + 1; j < p.size(); ++j) {
            d = std::max(d, distance(p[i], p[j]));
        }
    }
    return d;
}

bool no_three_collinear(const SensorArray& sensors, double tol)
{
    const auto& p = sensors.points();
    const double scale = max_pairwise_distance(sensors);
    const double threshold = tol * scale * scale;
    for (std::size_t a = 0; a < p.size(); ++a) {
        for (std::size_t b = a + 1; b < p.size(); ++b) {
            for (std::size_t c = b + 1; c < p.size(); ++c) {
                const Point u = p[b] - p[a];
                const Point v = p[c] - p[a];
                if (u.cross(v).norm() <= threshold) {
                    return false;
                }
            }
        }
    }
    return true;
}

bool no_four_coplanar(const SensorArray& sensors, double tol)
{
    const auto& p = sensors.points();
    const double scale = max_pairwise_distance(sensors);
    const double threshold = tol * scale * scale * scale;
    const std::size_t n = p.size();
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
            for (std::size_t c = b + 1; c < n; ++c) {
                const Point u = p[b] - p[a];
                const Point v = p[c] - p[a];
                const Point uv = u.cross(v);
                for (std::size_t d = c + 1; d < n; ++d) {
                    if (std::fabs(uv.dot(p[d] - p[a])) <= threshold) {
                        return false;
                    }
                }
            }
        }
    }
    return true;
}

std::size_t circle_count(const Point& z, const SensorArray& sensors, const SourceConfig& sources,
                         double tol)
{
    std::size_t count = 0;
    for (const auto& x : sensors.points()) {
        const double rz = distance(x, z);
        for (const auto& s : sources.sources()) {
            if (std::fabs(rz - distance(x, s.position)) <= tol) {
                ++count;
            }
        }
    }
    return count;
}

double enclosing_radius(const SensorArray& sensors, const Box& region)
{
    double r = 0.0;
    for (const auto& x : sensors.points()) {
        r = std::max(r, x.norm());
    }
    for (int corner = 0; corner < 8; ++corner) {
        const Point c((corner & 1) ? region.upper.x() : region.lower.x(),
                      (corner & 2) ? region.upper.y() : region.lower.y(),
                      (corner & 4) ? region.upper.z() : region.lower.z());
        r = std::max(r, c.norm());
    }
    return r;
}

}  // namespace biharm::geometry
