#include "biharm/types.hpp"

#include <cmath>
#include <string>

#include "biharm/errors.hpp"

namespace biharm {

namespace {

void check_point(const Point& p, Dimension dim, const std::string& what)
{
    if (!p.allFinite()) {
        throw DomainError(what + ": coordinates must be finite");
    }
    if (dim == Dimension::Two && p.z() != 0.0) {
        throw DomainError(what + ": planar point has nonzero third coordinate");
    }
}

}  // namespace

Dimension dimension_from_int(int n)
{
    if (n == 2) return Dimension::Two;
    if (n == 3) return Dimension::Three;
    throw DomainError("dimension must be 2 or 3, got " + std::to_string(n));
}

SourceConfig::SourceConfig(Dimension dim, std::vector<PointSource> sources)
    : dim_(dim), sources_(std::move(sources))
{
    for (std::size_t i = 0; i < sources_.size(); ++i) {
        const auto& s = sources_[i];
        check_point(s.position, dim_, "source " + std::to_string(i));
        if (s.strength == Complex{0.0, 0.0}) {
            throw DomainError("source " + std::to_string(i) + ": strength must be nonzero");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (sources_[j].position == s.position) {
                throw DomainError("sources " + std::to_string(j) + " and " + std::to_string(i) +
                                  " share a position");
            }
        }
    }
}

SourceConfig SourceConfig::merged(const SourceConfig& other) const
{
    if (other.dim_ != dim_) {
        throw DomainError("cannot merge source configurations of different dimension");
    }
    auto all = sources_;
    all.insert(all.end(), other.sources_.begin(), other.sources_.end());
    return SourceConfig(dim_, std::move(all));
}

SensorArray::SensorArray(Dimension dim, std::vector<Point> points)
    : dim_(dim), points_(std::move(points))
{
    for (std::size_t i = 0; i < points_.size(); ++i) {
        check_point(points_[i], dim_, "sensor " + std::to_string(i));
        for (std::size_t j = 0; j < i; ++j) {
            if (points_[j] == points_[i]) {
                throw DomainError("sensors " + std::to_string(j) + " and " + std::to_string(i) +
                                  " coincide");
            }
        }
    }
}

FrequencyGrid::FrequencyGrid(std::vector<double> values) : values_(std::move(values))
{
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!(values_[i] > 0.0) || !std::isfinite(values_[i])) {
            throw DomainError("frequency grid: wavenumbers must be positive and finite");
        }
        if (i > 0 && !(values_[i] > values_[i - 1])) {
            throw DomainError("frequency grid: wavenumbers must be strictly increasing");
        }
    }
}

FrequencyGrid FrequencyGrid::band(double k_minus, double k_plus, double step)
{
    if (!(step > 0.0) || !(k_plus > k_minus)) {
        throw DomainError("frequency band requires k_plus > k_minus and step > 0");
    }
    const auto n = static_cast<long>(std::floor((k_plus - k_minus) / step + 1e-9));
    std::vector<double> v;
    v.reserve(static_cast<std::size_t>(n) + 1);
    // index-based nodes avoid accumulated drift of repeated addition
    for (long i = 0; i <= n; ++i) {
        v.push_back(k_minus + static_cast<double>(i) * step);
    }
    return FrequencyGrid(std::move(v));
}

FrequencyGrid FrequencyGrid::harmonic(double k0, int count)
{
    if (!(k0 > 0.0) || count < 1) {
        throw DomainError("harmonic grid requires k0 > 0 and J >= 1");
    }
    std::vector<double> v;
    v.reserve(static_cast<std::size_t>(count));
    for (int j = 1; j <= count; ++j) {
        v.push_back(j * k0);
    }
    return FrequencyGrid(std::move(v));
}

FrequencyGrid FrequencyGrid::triple(double k0)
{
    if (!(k0 > 0.0)) {
        throw DomainError("triple grid requires k0 > 0");
    }
    return FrequencyGrid({k0, 2.0 * k0, 4.0 * k0});
}

}  // namespace biharm
