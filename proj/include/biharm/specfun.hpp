#pragma once

#include <complex>

namespace biharm::specfun {

/// Value of a special function together with an absolute error bound.
template <typename T>
struct SpecFunResult {
    T value{};
    double abs_err_bound = 0.0;
};

// Argument at which J0/Y0 leave the ascending series for the Hankel
// asymptotic expansion, and K0 leaves its ascending series for the
// Steed continued fraction.
inline constexpr double kBesselCrossover = 12.0;
inline constexpr double kMacdonaldCrossover = 2.0;

SpecFunResult<double> j0_eval(double x);
SpecFunResult<double> y0_eval(double x);
SpecFunResult<std::complex<double>> hankel1_0_eval(double x);
SpecFunResult<double> k0_eval(double x);

/// Bessel function of the first kind, order 0. Requires finite x >= 0.
double bessel_j0(double x);
/// Bessel function of the second kind (Neumann), order 0. Requires x > 0.
double bessel_y0(double x);
/// H0^(1)(x) = J0(x) + i Y0(x).
std::complex<double> hankel1_0(double x);
/// Modified Bessel function of the second kind (Macdonald), order 0. Requires x > 0.
double macdonald_k0(double x);

/// Both J0 and Y0 at once; shares the asymptotic phase and amplitude work.
struct J0Y0 {
    double j0;
    double y0;
};
J0Y0 bessel_j0_y0(double x);

namespace testing {

/// Fault injection for the verification suite: when enabled, macdonald_k0
/// returns K0(x) * (1 + 0.2 x), which breaks the modified Helmholtz
/// equation that the true K0 satisfies. Process-wide; not for production use.
void set_k0_fault(bool enabled);
bool k0_fault_enabled();

}  // namespace testing

}  // namespace biharm::specfun
