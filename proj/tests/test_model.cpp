#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "biharm/errors.hpp"
#include "biharm/model.hpp"

using namespace biharm;
using std::numbers::pi;

namespace {

SourceConfig one_source(const Point& z, Complex tau, Dimension dim = Dimension::Three)
{
    return SourceConfig(dim, {{z, tau}});
}

}  // namespace

TEST_CASE("3D fundamental solution closed form")
{
    const Complex phi = fundamental_solution_radial(1.0, 1.0, Dimension::Three);
    const Complex expected((std::cos(1.0) - std::exp(-1.0)) / (8 * pi), std::sin(1.0) / (8 * pi));
    CHECK(std::abs(phi - expected) < 1e-15);
    CHECK(std::fabs(phi.real() - 0.0068604878046) < 1e-12);
    CHECK(std::fabs(phi.imag() - 0.0334810666751) < 1e-12);
}

TEST_CASE("2D fundamental solution from the Bessel values")
{
    // J0(1), Y0(1), K0(1) from the specfun oracles
    const double j0 = 0.765197686557967, y0 = 0.088256964215677, k0 = 0.421024438240708;
    const Complex expected =
        Complex(0.0, 1.0 / 8.0) * (Complex(j0, y0) + Complex(0.0, 2.0 / pi) * k0);
    const Complex phi = fundamental_solution_radial(1.0, 1.0, Dimension::Two);
    CHECK(std::abs(phi - expected) < 1e-12);
}

TEST_CASE("fundamental solution errors")
{
    CHECK_THROWS_AS(fundamental_solution_radial(0.0, 1.0, Dimension::Three), DomainError);
    CHECK_THROWS_AS(fundamental_solution_radial(-1.0, 1.0, Dimension::Two), DomainError);
    CHECK_THROWS_AS(fundamental_solution(1.0, point3(1, 2, 3), point3(1, 2, 3), Dimension::Three),
                    SingularityError);
}

TEST_CASE("fundamental solution is symmetric")
{
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    for (int i = 0; i < 100; ++i) {
        const Point a = point3(u(gen), u(gen), u(gen));
        const Point b = point3(u(gen), u(gen), u(gen));
        CHECK(fundamental_solution(2.5, a, b, Dimension::Three) ==
              fundamental_solution(2.5, b, a, Dimension::Three));
        const Point a2 = point2(a.x(), a.y()), b2 = point2(b.x(), b.y());
        CHECK(fundamental_solution(2.5, a2, b2, Dimension::Two) ==
              fundamental_solution(2.5, b2, a2, Dimension::Two));
    }
}

TEST_CASE("scattered field basics")
{
    const Point x = point3(1, 0, 0);
    CHECK(scattered_field(SourceConfig(Dimension::Three), x, 1.0) == Complex{});
    const auto cfg = one_source(point3(2, 2, 2), 1.0);
    CHECK(scattered_field(cfg, x, 1.5) ==
          fundamental_solution(1.5, x, point3(2, 2, 2), Dimension::Three));
    // equal distances and opposite strengths cancel
    const SourceConfig pair(Dimension::Three,
                            {{point3(0, 0, 2), {1, 1}}, {point3(0, 2, 0), {-1, -1}}});
    CHECK(std::abs(scattered_field(pair, point3(0, 0, 0), 3.0)) < 1e-14);
    CHECK_THROWS_AS(scattered_field(cfg, point3(2, 2, 2), 1.0), SingularityError);
}

TEST_CASE("scattered field is linear in the sources")
{
    const SourceConfig a(Dimension::Two, {{point2(1, 2), {1, 0.5}}, {point2(3, 1), 2.0}});
    const SourceConfig b(Dimension::Two, {{point2(-1, 4), {0, -1}}});
    const Point x = point2(7, -2);
    for (double k : {0.5, 3.0, 40.0}) {
        const Complex lhs = scattered_field(a.merged(b), x, k);
        const Complex rhs = scattered_field(a, x, k) + scattered_field(b, x, k);
        CHECK(std::abs(lhs - rhs) <= 1e-15 * std::abs(lhs) + 1e-300);
    }
}

TEST_CASE("3D field decays like 1/r")
{
    const auto cfg = one_source(point3(0.3, -0.2, 0.1), {1, 1});
    const Point dir = point3(1, 2, 2) / 3.0;
    double bound = 0.0;
    for (double r : {10.0, 100.0, 1000.0}) {
        const double v = std::abs(scattered_field(cfg, r * dir, 2.0)) * r;
        if (bound == 0.0) bound = 2.0 * v;
        CHECK(v <= bound);
        CHECK(v <= std::sqrt(2.0) / (8 * pi * 4.0) * 2.1);
    }
}

TEST_CASE("2D imaginary-part identity for real strengths")
{
    const SourceConfig cfg(Dimension::Two,
                           {{point2(2, 2), 1.0}, {point2(2, 4), 1.1}, {point2(4, 2), 1.2}});
    const Point x = point2(8, 3);
    for (double k : {1.0, 7.3, 49.9}) {
        double expected = 0.0;
        for (const auto& s : cfg.sources()) {
            expected += s.strength.real() * std::cyl_bessel_j(0.0, k * distance(x, s.position));
        }
        CHECK(std::fabs((8.0 * k * k * scattered_field(cfg, x, k)).imag() - expected) < 1e-10);
    }
}

TEST_CASE("3D exponential-sum identity")
{
    const SourceConfig cfg(Dimension::Three,
                           {{point3(1, 0, 0), {1, 1}}, {point3(0, 2, 0), {1, -1}}});
    const Point x = point3(3, 1, 2);
    for (double k : {0.2, 1.0, 10.0}) {
        Complex expected{};
        for (const auto& s : cfg.sources()) {
            const double r = distance(x, s.position);
            expected += s.strength / r * (std::polar(1.0, k * r) - std::exp(-k * r));
        }
        CHECK(std::abs(8 * pi * k * k * scattered_field(cfg, x, k) - expected) < 1e-12);
    }
}

TEST_CASE("synthesis: exact, deterministic, bounded noise")
{
    const SourceConfig cfg(Dimension::Three, {{point3(2, 2, 2), {1, 1}}});
    const SensorArray sensors(Dimension::Three,
                              {point3(1, 0, 0), point3(0, 1, 0), point3(0, 0, 1)});
    const auto freqs = FrequencyGrid::band(1.0, 5.0, 0.5);

    const auto clean = synthesize_measurements(cfg, sensors, freqs, 0.0, 3);
    REQUIRE(clean.samples.rows() == 3);
    REQUIRE(clean.samples.cols() == static_cast<Eigen::Index>(freqs.size()));
    for (Eigen::Index l = 0; l < 3; ++l) {
        for (Eigen::Index j = 0; j < clean.samples.cols(); ++j) {
            CHECK(clean.samples(l, j) == scattered_field(cfg, sensors[l], freqs[j]));
        }
    }

    const auto a = synthesize_measurements(cfg, sensors, freqs, 0.1, 42);
    const auto b = synthesize_measurements(cfg, sensors, freqs, 0.1, 42);
    const auto c = synthesize_measurements(cfg, sensors, freqs, 0.1, 43);
    CHECK(a.samples == b.samples);
    CHECK(a.samples != c.samples);
    for (Eigen::Index l = 0; l < 3; ++l) {
        for (Eigen::Index j = 0; j < a.samples.cols(); ++j) {
            const Complex ratio = a.samples(l, j) / clean.samples(l, j);
            CHECK(std::fabs(ratio.imag()) < 1e-12);
            CHECK(std::abs(ratio - 1.0) <= 0.1 + 1e-12);
        }
    }

    CHECK_THROWS_AS(synthesize_measurements(cfg, sensors, freqs, -0.1, 0), DomainError);
    const SensorArray on_source(Dimension::Three, {point3(2, 2, 2)});
    CHECK_THROWS_AS(synthesize_measurements(cfg, on_source, freqs, 0.0, 0), SingularityError);
}

TEST_CASE("source configuration invariants")
{
    CHECK_THROWS(SourceConfig(Dimension::Three, {{point3(0, 0, 0), 0.0}}));
    CHECK_THROWS(SourceConfig(Dimension::Three, {{point3(1, 0, 0), 1.0}, {point3(1, 0, 0), 2.0}}));
    CHECK_THROWS(SourceConfig(Dimension::Two, {{point3(1, 0, 1), 1.0}}));
    CHECK_THROWS(FrequencyGrid({1.0, 1.0}));
    CHECK_THROWS(FrequencyGrid({0.0, 1.0}));
    CHECK(FrequencyGrid::band(1.0, 50.0, 0.1).size() == 491);
    CHECK(FrequencyGrid::band(1.0, 100.0, 0.1).back() == doctest::Approx(100.0));
    CHECK(FrequencyGrid::harmonic(0.2, 8).back() == doctest::Approx(1.6));
}

TEST_CASE("PDE residual")
{
    const auto cfg = one_source(point3(0, 0, 0), {1, 1});
    const Point x = point3(2, 0, 0) ;
    const double u = std::abs(scattered_field(cfg, x, 1.0));
    const double r1 = pde_residual(cfg, x, 1.0, 1e-2);
    CHECK(r1 <= 1e-4 * u);
    const Point xo = point3(1.2, 1.1, -0.9);
    const double a = pde_residual(cfg, xo, 1.0, 4e-2);
    const double b = pde_residual(cfg, xo, 1.0, 2e-2);
    CHECK(a / b == doctest::Approx(4.0).epsilon(0.1));

    CHECK(pde_residual(SourceConfig(Dimension::Three), x, 1.0) == 0.0);
    CHECK_THROWS_AS(pde_residual(cfg, point3(0.05, 0, 0), 1.0, 1e-2), ConditioningError);

    const auto cfg2 = one_source(point2(0, 0), 1.0, Dimension::Two);
    const Point x2 = point2(1.3, 0.7);
    CHECK(pde_residual(cfg2, x2, 1.5, 4e-2) / pde_residual(cfg2, x2, 1.5, 2e-2) ==
          doctest::Approx(4.0).epsilon(0.1));
}
