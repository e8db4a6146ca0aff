#include "biharm/specfun.hpp"

#include <atomic>
#include <cfloat>
#include <cmath>
#include <limits>
#include <numbers>

#include "biharm/errors.hpp"

namespace biharm::specfun {

namespace {

constexpr long double kEulerGamma = 0.577215664901532860606512090082402431L;
constexpr long double kTwoOverPi = 0.636619772367581343075535053490057448L;
constexpr double kDblEps = std::numeric_limits<double>::epsilon();
constexpr long double kLdblEps = std::numeric_limits<long double>::epsilon();

std::atomic<bool> g_k0_fault{false};

// Ascending series in (x/2)^2, summed in extended precision so that the
// cancellation near the crossover (largest term ~ 4e3 at x = 12) stays
// well below the double-precision target.
struct SeriesSums {
    long double j0;         // sum (-q)^j / (j!)^2
    long double harmonic;   // sum (-1)^(j+1) H_j q^j / (j!)^2
    long double max_term;
    int terms;
};

SeriesSums ascending_series(double x)
{
    const long double q = 0.25L * static_cast<long double>(x) * x;
    long double term = 1.0L;
    long double j0 = 1.0L;
    long double harm = 0.0L;
    long double hj = 0.0L;
    long double max_term = 1.0L;
    int j = 1;
    for (; j < 200; ++j) {
        term *= -q / (static_cast<long double>(j) * j);
        hj += 1.0L / j;
        j0 += term;
        harm -= hj * term;
        const long double mag = std::fabs(term) * hj;
        max_term = std::max(max_term, mag);
        if (mag < kLdblEps * 1e-3L) {
            break;
        }
    }
    return {j0, harm, max_term, j};
}

// Hankel asymptotic expansion: P and Q with the error estimate taken as the
// first omitted term (the expansion is truncated at its smallest term).
struct Asymptotic {
    double p;
    double q;
    double tail;
};

Asymptotic hankel_pq(double x)
{
    double p = 1.0;
    double q = 0.0;
    double t = 1.0;  // c_k / x^k, c_k = prod (2i-1)^2 / (k! 8^k)
    double tail = 0.0;
    for (int k = 1; k < 200; ++k) {
        const double next = t * (2.0 * k - 1.0) * (2.0 * k - 1.0) / (8.0 * k * x);
        if (next >= t) {
            tail = t;
            break;
        }
        t = next;
        // sign pattern: P = sum (-1)^m c_{2m} x^-2m ; Q = -sum (-1)^m c_{2m+1} x^-(2m+1)
        const int m = k / 2;
        const double sign = (m % 2 == 0) ? 1.0 : -1.0;
        if (k % 2 == 0) {
            p += sign * t;
        } else {
            q -= sign * t;
        }
        if (t < 0.25 * kDblEps * kDblEps) {
            tail = t;
            break;
        }
    }
    return {p, q, tail};
}

void require_finite(double x, const char* name)
{
    if (!std::isfinite(x)) {
        throw DomainError(std::string(name) + ": argument must be finite");
    }
}

J0Y0 asymptotic_j0y0(double x, double* bound)
{
    const auto [p, q, tail] = hankel_pq(x);
    const double amp = std::sqrt(2.0 / (std::numbers::pi * x));
    const double s = std::sin(x);
    const double c = std::cos(x);
    // chi = x - pi/4 expanded to avoid rounding the phase of large x
    const double cos_chi = (c + s) * (1.0 / std::numbers::sqrt2);
    const double sin_chi = (s - c) * (1.0 / std::numbers::sqrt2);
    if (bound) {
        *bound = amp * (tail + 4.0 * kDblEps * (std::fabs(p) + std::fabs(q))) +
                 kDblEps * x * amp;
    }
    return {amp * (p * cos_chi - q * sin_chi), amp * (p * sin_chi + q * cos_chi)};
}

double k0_continued_fraction(double x, double* bound)
{
    // Steed's algorithm for the Temme continued fraction CF2 at order 0;
    // converges for x >= 2 in fewer than 100 iterations.
    double b = 2.0 * (1.0 + x);
    double d = 1.0 / b;
    double h = d;
    double delh = d;
    double q1 = 0.0;
    double q2 = 1.0;
    const double a1 = 0.25;
    double q = a1;
    double c = a1;
    double a = -a1;
    double s = 1.0 + q * delh;
    for (int i = 1; i < 10000; ++i) {
        a -= 2 * i;
        c = -a * c / (i + 1.0);
        const double qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        const double dels = q * delh;
        s += dels;
        if (std::fabs(dels / s) < 0.5 * kDblEps) {
            break;
        }
    }
    const double value = std::sqrt(std::numbers::pi / (2.0 * x)) * std::exp(-x) / s;
    if (bound) {
        *bound = 16.0 * kDblEps * value + std::numeric_limits<double>::denorm_min();
    }
    return value;
}

}  // namespace

SpecFunResult<double> j0_eval(double x)
{
    require_finite(x, "bessel_j0");
    if (x < 0.0) {
        throw DomainError("bessel_j0: negative argument");
    }
    if (x <= kBesselCrossover) {
        const auto s = ascending_series(x);
        const double v = static_cast<double>(s.j0);
        return {v, static_cast<double>(s.max_term * kLdblEps * s.terms) + kDblEps * std::fabs(v)};
    }
    double bound = 0.0;
    const auto jy = asymptotic_j0y0(x, &bound);
    return {jy.j0, bound};
}

SpecFunResult<double> y0_eval(double x)
{
    require_finite(x, "bessel_y0");
    if (x <= 0.0) {
        throw DomainError("bessel_y0: argument must be positive (logarithmic singularity at 0)");
    }
    if (x <= kBesselCrossover) {
        const auto s = ascending_series(x);
        const long double lg = std::log(0.5L * x) + kEulerGamma;
        const long double v = kTwoOverPi * (lg * s.j0 + s.harmonic);
        const long double err =
            kTwoOverPi * (std::fabs(lg) + 1.0L) * s.max_term * kLdblEps * s.terms;
        return {static_cast<double>(v),
                static_cast<double>(err) + kDblEps * std::fabs(static_cast<double>(v))};
    }
    double bound = 0.0;
    const auto jy = asymptotic_j0y0(x, &bound);
    return {jy.y0, bound};
}

SpecFunResult<std::complex<double>> hankel1_0_eval(double x)
{
    const auto j = j0_eval(x);
    const auto y = y0_eval(x);
    return {{j.value, y.value}, j.abs_err_bound + y.abs_err_bound};
}

SpecFunResult<double> k0_eval(double x)
{
    require_finite(x, "macdonald_k0");
    if (x <= 0.0) {
        throw DomainError("macdonald_k0: argument must be positive (logarithmic singularity at 0)");
    }
    SpecFunResult<double> r;
    if (x <= kMacdonaldCrossover) {
        // K0 = -(ln(x/2) + gamma) I0(x) + sum H_j q^j / (j!)^2, all terms positive
        const long double q = 0.25L * static_cast<long double>(x) * x;
        long double term = 1.0L;
        long double i0 = 1.0L;
        long double harm = 0.0L;
        long double hj = 0.0L;
        for (int j = 1; j < 100; ++j) {
            term *= q / (static_cast<long double>(j) * j);
            hj += 1.0L / j;
            i0 += term;
            harm += hj * term;
            if (hj * term < kLdblEps * harm * 1e-3L) {
                break;
            }
        }
        const long double lg = std::log(0.5L * x) + kEulerGamma;
        const long double v = -lg * i0 + harm;
        r.value = static_cast<double>(v);
        r.abs_err_bound = static_cast<double>((std::fabs(lg) * i0 + harm) * 8.0L * kLdblEps) +
                          kDblEps * std::fabs(r.value);
    } else {
        r.value = k0_continued_fraction(x, &r.abs_err_bound);
    }
    if (g_k0_fault.load(std::memory_order_relaxed)) {
        r.value *= 1.0 + 0.2 * x;
    }
    return r;
}

double bessel_j0(double x) { return j0_eval(x).value; }
double bessel_y0(double x) { return y0_eval(x).value; }
std::complex<double> hankel1_0(double x) { return hankel1_0_eval(x).value; }
double macdonald_k0(double x) { return k0_eval(x).value; }

J0Y0 bessel_j0_y0(double x)
{
    require_finite(x, "bessel_j0_y0");
    if (x <= 0.0) {
        throw DomainError("bessel_j0_y0: argument must be positive");
    }
    if (x <= kBesselCrossover) {
        return {j0_eval(x).value, y0_eval(x).value};
    }
    return asymptotic_j0y0(x, nullptr);
}

namespace testing {

void set_k0_fault(bool enabled) { g_k0_fault.store(enabled, std::memory_order_relaxed); }
bool k0_fault_enabled() { return g_k0_fault.load(std::memory_order_relaxed); }

}  // namespace testing

}  // namespace biharm::specfun
