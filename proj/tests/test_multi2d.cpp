#include <doctest.h>

#include <cmath>
#include <random>

#include "biharm/errors.hpp"
#include "biharm/geometry.hpp"
#include "biharm/multi2d.hpp"
#include "biharm/radial.hpp"

using namespace biharm;
using namespace biharm::multi2d;

namespace {

SourceConfig square()
{
    return SourceConfig(Dimension::Two, {{point2(2, 2), 1.0},
                                         {point2(2, 4), 1.1},
                                         {point2(4, 2), 1.2},
                                         {point2(4, 4), 1.3}});
}

const SensorArray& ring10()
{
    static const auto s = geometry::circle_array_2d(10, point2(3, 3), 5.0);
    return s;
}

}  // namespace

TEST_CASE("radial profile interpolation")
{
    const double k = 50.0;
    const radial::RadialProfile p(1.0, 3.0, radial::default_step(k),
                                  [k](double r) { return std::polar(1.0, k * r); });
    double worst = 0.0;
    for (double r = 1.0; r <= 3.0; r += 0.000731) {
        worst = std::max(worst, std::abs(p(r) - std::polar(1.0, k * r)));
    }
    CHECK(worst < 5e-6);
    CHECK(std::abs(p(3.0) - std::polar(1.0, 150.0)) < 5e-6);
    CHECK_THROWS_AS(p(0.5), DomainError);
    CHECK_THROWS_AS(p(3.1), DomainError);

    const sampling::SamplingGrid g(Dimension::Two, point2(0, 0), point2(2, 1), 0.5);
    const auto [lo, hi] = radial::distance_range(point2(3, 0.5), g);
    CHECK(lo == doctest::Approx(1.0));
    CHECK(hi == doctest::Approx(std::hypot(3.0, 0.5)));
    CHECK(radial::distance_range(point2(1, 0.5), g).first == 0.0);
}

TEST_CASE("2D indicator: zero data and fast path agreement")
{
    auto m = synthesize_measurements(square(), ring10(), FrequencyGrid::band(1, 20, 0.1), 0.0, 0);
    const sampling::SamplingGrid g(Dimension::Two, point2(1, 1), point2(5, 5), 0.25);
    for (auto kind : {IndicatorKind::RealStrengths, IndicatorKind::ComplexStrengths}) {
        const auto fast = evaluate_indicator_2d(m, g, kind);
        for (std::size_t i = 0; i < g.size(); i += 7) {
            const double direct = indicator_2d(g.node(i), m, kind);
            CHECK(fast.values[i] == doctest::Approx(direct).epsilon(1e-5));
        }
    }
    CHECK_THROWS_AS(indicator_2d(ring10()[3], m, IndicatorKind::RealStrengths), DomainError);

    m.samples.setZero();
    CHECK(indicator_2d(point2(2, 2), m, IndicatorKind::ComplexStrengths) == 0.0);
    const auto empty = run_algorithm2(m, g, IndicatorKind::ComplexStrengths);
    CHECK(empty.estimated_count == 0);
    CHECK(empty.positions.empty());
}

TEST_CASE("2D indicator blows up at a single source")
{
    const Point z1 = point2(2.6, 3.3);
    const SourceConfig one(Dimension::Two, {{z1, 1.0}});
    const auto m = synthesize_measurements(one, ring10(), FrequencyGrid::band(1, 50, 0.1), 0.0, 0);
    const double peak = indicator_2d(z1, m, IndicatorKind::ComplexStrengths);
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> u(0.5, 5.5);
    int tested = 0;
    for (int i = 0; i < 400 && tested < 40; ++i) {
        const Point z = point2(u(gen), u(gen));
        bool far = true;
        for (const auto& x : ring10().points()) {
            far &= std::fabs(distance(x, z) - distance(x, z1)) >= 0.5;
        }
        if (!far) continue;
        ++tested;
        CHECK(peak >= 3.0 * indicator_2d(z, m, IndicatorKind::ComplexStrengths));
    }
    CHECK(tested >= 10);
}

TEST_CASE("2D strength ratio")
{
    const Point z1 = point2(2.5, 3.5);
    const SourceConfig one(Dimension::Two, {{z1, Complex(0.7, -1.2)}});
    const auto m = synthesize_measurements(one, ring10(), FrequencyGrid::band(1, 100, 0.1), 0.0, 0);
    for (std::size_t l : {0ul, 4ul, 9ul}) {
        const Complex tau = recover_strength_2d(z1, l, m);
        CHECK(std::abs(tau - Complex(0.7, -1.2)) <= 0.02 * std::abs(Complex(0.7, -1.2)));
    }
    auto doubled = m;
    doubled.samples *= 2.0;
    CHECK(std::abs(recover_strength_2d(z1, 3, doubled) - 2.0 * recover_strength_2d(z1, 3, m)) <
          1e-12);
    CHECK_THROWS_AS(recover_strength_2d(z1, 10, m), DomainError);
}

TEST_CASE("sensor selection")
{
    const std::vector<Point> single{point2(2, 2)};
    CHECK(select_sensor(point2(2, 2), single, ring10()).index == 0);

    const auto src = square();
    std::vector<Point> det;
    for (const auto& s : src.sources()) det.push_back(s.position);
    for (const auto& z : det) {
        const auto c = select_sensor(z, det, ring10());
        for (const auto& other : det) {
            if (other == z) continue;
            CHECK(std::fabs(distance(ring10()[c.index], z) - distance(ring10()[c.index], other)) >
                  1e-6);
        }
    }

    // both sensors on the perpendicular bisector of the two detections
    const SensorArray sym(Dimension::Two, {point2(0, 5), point2(0, -5)});
    const std::vector<Point> pair{point2(-1, 0), point2(1, 0)};
    const auto c = select_sensor(pair[0], pair, sym);
    CHECK(c.separation == doctest::Approx(0.0));
}

TEST_CASE("algorithm 2 on the noiseless square")
{
    const auto m = synthesize_measurements(square(), ring10(), FrequencyGrid::band(1, 30, 0.1), 0.0, 0);
    const sampling::SamplingGrid g(Dimension::Two, point2(0.5, 0.5), point2(5.5, 5.5), 0.1);
    const auto a = run_algorithm2(m, g, IndicatorKind::RealStrengths);
    const auto b = run_algorithm2(m, g, IndicatorKind::ComplexStrengths);
    REQUIRE(a.estimated_count == 4);
    REQUIRE(b.estimated_count == 4);
    const auto truth = square();
    for (const auto& s : truth.sources()) {
        double da = 1e9, db = 1e9;
        for (const auto& p : a.positions) da = std::min(da, distance(p, s.position));
        for (const auto& p : b.positions) db = std::min(db, distance(p, s.position));
        CHECK(da <= 0.1 + 1e-9);
        CHECK(db <= 0.1 + 1e-9);
    }
    auto r = a;
    attach_errors(r, square());
    for (const auto& e : *r.errors) CHECK(e.strength_error < 0.1);
}

TEST_CASE("2D indicator is invariant under rigid motions")
{
    const double c = std::cos(0.7), s = std::sin(0.7);
    auto move = [&](const Point& p) { return point2(c * p.x() - s * p.y() + 1.5, s * p.x() + c * p.y() - 2.0); };
    std::vector<PointSource> moved_src;
    const auto truth = square();
    for (const auto& src : truth.sources()) moved_src.push_back({move(src.position), src.strength});
    std::vector<Point> moved_sensors;
    for (const auto& x : ring10().points()) moved_sensors.push_back(move(x));
    const auto freqs = FrequencyGrid::band(1, 20, 0.1);
    const auto m = synthesize_measurements(square(), ring10(), freqs, 0.0, 0);
    const auto mm = synthesize_measurements(SourceConfig(Dimension::Two, moved_src),
                                            SensorArray(Dimension::Two, moved_sensors), freqs, 0.0, 0);
    for (const Point& z : {point2(1.1, 2.3), point2(3, 3), point2(4.4, 0.9)}) {
        CHECK(indicator_2d(move(z), mm, IndicatorKind::ComplexStrengths) ==
              doctest::Approx(indicator_2d(z, m, IndicatorKind::ComplexStrengths)).epsilon(1e-8));
    }
}

TEST_CASE("algorithm 2 preconditions")
{
    const SensorArray line(Dimension::Two, {point2(0, 0), point2(1, 0), point2(2, 0), point2(0, 7)});
    const auto m = synthesize_measurements(square(), line, FrequencyGrid::band(1, 5, 0.5), 0.0, 0);
    const sampling::SamplingGrid g(Dimension::Two, point2(0.5, 0.5), point2(5.5, 5.5), 0.5);
    CHECK_THROWS_AS(run_algorithm2(m, g, IndicatorKind::RealStrengths), PreconditionError);
}
