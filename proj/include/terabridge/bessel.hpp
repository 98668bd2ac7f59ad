#pragma once

namespace terabridge::special {

/// Modified Bessel function of the second kind, order zero, for x > 0.
double bessel_k0(double x);

/// Exponentially scaled K0: exp(x) * K0(x). Finite for all x > 0.
double bessel_k0_scaled(double x);

/// Modified Bessel function of the first kind, order zero.
double bessel_i0(double x);

}  // namespace terabridge::special
