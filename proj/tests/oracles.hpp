#ifndef SINCVOLTERRA_TESTS_ORACLES_HPP
#define SINCVOLTERRA_TESTS_ORACLES_HPP

// Independent reference implementations used only by the tests. Everything
// here goes through adaptive Gauss-Kronrod quadrature so that none of the
// library's own code paths (sine-integral rationals, Sinc sums) are involved
// in producing the expected values.

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

namespace oracles {

// Si(x) by direct quadrature of sin(t)/t over [0, x]. Accurate to ~1e-15 for
// moderate |x|; the oscillatory integrand makes this slow but trustworthy.
inline double si_quadrature(double x)
{
    if (x == 0.0) return 0.0;
    auto f = [](double t) { return t == 0.0 ? 1.0 : std::sin(t) / t; };
    boost::math::quadrature::gauss_kronrod<double, 15> gk;
    const double v = gk.integrate(f, 0.0, std::abs(x), 12, 1e-15);
    return x < 0 ? -v : v;
}

// For large x the direct route degrades, so use the exact Laplace-transform
// representation Si(x) = pi/2 - cos(x) F(x) - sin(x) G(x).  Substituting
// v = x u puts the sharp e^{-xu} decay on a fixed scale:
//   F(x) = int_0^inf e^{-v} x / (x^2 + v^2) dv,
//   G(x) = int_0^inf e^{-v} v / (x^2 + v^2) dv,
// so one quadrature mesh serves every x.  Valid for x > 0.
inline double si_large(double x)
{
    boost::math::quadrature::gauss_kronrod<double, 31> gk;
    const double inf = std::numeric_limits<double>::infinity();
    auto f = [x](double v) { return std::exp(-v) * x / (x * x + v * v); };
    auto g = [x](double v) { return std::exp(-v) * v / (x * x + v * v); };
    const double F = gk.integrate(f, 0.0, inf, 12, 1e-15);
    const double G = gk.integrate(g, 0.0, inf, 12, 1e-15);
    return std::numbers::pi / 2 - std::cos(x) * F - std::sin(x) * G;
}

// Residual of a closed-form solution u in the integral equation
// u(t) - int_a^t k(t,s) u(s) ds = g(t), with the integral done adaptively.
// A correctly transcribed (kernel, rhs, exact) triple drives this to the
// quadrature tolerance.
inline double volterra_residual(const std::function<double(double, double)>& kernel,
                                const std::function<double(double)>& rhs,
                                const std::function<double(double)>& exact,
                                double a, double t)
{
    boost::math::quadrature::gauss_kronrod<double, 15> gk;
    auto integrand = [&](double s) { return kernel(t, s) * exact(s); };
    const double integral = t == a ? 0.0 : gk.integrate(integrand, a, t, 12, 1e-13);
    return exact(t) - integral - rhs(t);
}

} // namespace oracles

#endif
