#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Core>

namespace biharm {

using Complex = std::complex<double>;

/// Points always carry three coordinates; planar (2D) points keep z = 0.
using Point = Eigen::Vector3d;

enum class Dimension { Two = 2, Three = 3 };

inline int to_int(Dimension d) { return static_cast<int>(d); }
Dimension dimension_from_int(int n);

inline Point point2(double x, double y) { return Point(x, y, 0.0); }
inline Point point3(double x, double y, double z) { return Point(x, y, z); }

inline double distance(const Point& a, const Point& b) { return (a - b).norm(); }

struct PointSource {
    Point position = Point::Zero();
    Complex strength{1.0, 0.0};
};

/// A set of point sources sharing one spatial dimension.
///
/// Positions must be finite and pairwise distinct, strengths nonzero, and
/// 2D positions must have a zero third coordinate.
class SourceConfig {
public:
    explicit SourceConfig(Dimension dim, std::vector<PointSource> sources = {});

    Dimension dimension() const { return dim_; }
    const std::vector<PointSource>& sources() const { return sources_; }
    std::size_t size() const { return sources_.size(); }
    bool empty() const { return sources_.empty(); }
    const PointSource& operator[](std::size_t i) const { return sources_[i]; }

    /// Union of two configurations of the same dimension.
    SourceConfig merged(const SourceConfig& other) const;

private:
    Dimension dim_;
    std::vector<PointSource> sources_;
};

/// Measurement points Gamma_L; pairwise distinct, all of the declared dimension.
class SensorArray {
public:
    SensorArray(Dimension dim, std::vector<Point> points);

    Dimension dimension() const { return dim_; }
    const std::vector<Point>& points() const { return points_; }
    std::size_t size() const { return points_.size(); }
    const Point& operator[](std::size_t i) const { return points_[i]; }

private:
    Dimension dim_;
    std::vector<Point> points_;
};

/// Strictly increasing list of positive wavenumbers.
class FrequencyGrid {
public:
    explicit FrequencyGrid(std::vector<double> values);

    /// k_minus, k_minus + step, ..., up to k_plus (inclusive within rounding).
    static FrequencyGrid band(double k_minus, double k_plus, double step);
    /// k_j = j * k0 for j = 1..J.
    static FrequencyGrid harmonic(double k0, int count);
    /// {k0, 2 k0, 4 k0}.
    static FrequencyGrid triple(double k0);

    const std::vector<double>& values() const { return values_; }
    std::size_t size() const { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }
    double front() const { return values_.front(); }
    double back() const { return values_.back(); }

private:
    std::vector<double> values_;
};

}  // namespace biharm
