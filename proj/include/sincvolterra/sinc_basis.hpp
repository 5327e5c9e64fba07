#ifndef SINCVOLTERRA_SINC_BASIS_HPP
#define SINCVOLTERRA_SINC_BASIS_HPP

#include <atomic>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>

namespace sincvolterra {

namespace detail {

template <typename Scalar, std::size_t K>
inline Scalar horner(const double (&coeff)[K], Scalar y)
{
    Scalar r = Scalar(coeff[0]);
    for (std::size_t i = 1; i < K; ++i) r = r * y + Scalar(coeff[i]);
    return r;
}

inline std::atomic<std::uint64_t>& si_counter()
{
    static std::atomic<std::uint64_t> count{0};
    return count;
}

} // namespace detail

// Number of sine_integral evaluations since program start or the last reset.
// Relaxed atomic: cheap enough to leave on in concurrent sweeps.
inline std::uint64_t sine_integral_call_count()
{
    return detail::si_counter().load(std::memory_order_relaxed);
}

inline void reset_sine_integral_call_count()
{
    detail::si_counter().store(0, std::memory_order_relaxed);
}

/*
 * Sine integral Si(x) = int_0^x sin(t)/t dt.
 *
 * For x^2 <= 16 a Pade approximant of the Maclaurin series is used; beyond
 * that the auxiliary-function form
 *
 *   Si(x) = pi/2 - f(x) cos(x) - g(x) sin(x)
 *
 * with rational minimax approximations for f and g in 1/x^2.  Both branches
 * are good to ~1e-16 relative in double precision.  The reduction works on
 * |x| and applies the sign at the end, so Si(-x) == -Si(x) bit-exactly.
 */
template <typename Scalar>
Scalar sine_integral(Scalar x)
{
    if (!std::isfinite(x)) throw std::domain_error("sine_integral: argument must be finite");
    detail::si_counter().fetch_add(1, std::memory_order_relaxed);

    constexpr Scalar half_pi = std::numbers::pi_v<Scalar> / 2;
    const Scalar ax = std::abs(x);
    Scalar si;
    if (ax <= Scalar(4)) {
        // coefficients ordered highest power of x^2 first
        static constexpr double num[] = {
            -6.05338212010422477e-16, 7.08240282274875911e-13, -3.53201978997168357e-10,
            9.43280809438713025e-8, -1.41018536821330254e-5, 1.15457225751016682e-3,
            -4.54393409816329991e-2, 1.0,
        };
        static constexpr double den[] = {
            3.21107051193712168e-16, 4.5049097575386581e-13, 3.28067571055789734e-10,
            1.55654986308745614e-7, 4.99175116169755106e-5, 1.01162145739225565e-2,
            1.0,
        };
        const Scalar x2 = ax * ax;
        si = ax * detail::horner(num, x2) / detail::horner(den, x2);
    } else {
        static constexpr double fnum[] = {
            -4.94701168645415959931e11, 4.94816688199951963482e12, 1.00795182980368574617e13,
            4.20968180571076940208e12, 6.40533830574022022911e11, 4.33736238870432522765e10,
            1.43073403821274636888e9, 2.37750310125431834034e7, 1.96396372895146869801e5,
            7.44437068161936700618e2, 1.0,
        };
        static constexpr double fden[] = {
            1.11535493509914254097e13, 1.43468549171581016479e13, 5.06084464593475076774e12,
            7.08501308149515401563e11, 4.58595115847765779830e10, 1.47478952192985464958e9,
            2.41535670165126845144e7, 1.97865247031583951450e5, 7.46437068161927678031e2,
            1.0,
        };
        static constexpr double gnum[] = {
            -1.36517137670871689e12, 6.43291613143049485e12, 1.81004487464664575e13,
            7.57664583257834349e12, 1.09049528450362786e12, 6.83052205423625007e10,
            2.06297595146763354e9, 3.12557570795778731e7, 2.35239181626478200e5,
            8.13595201151686150e2, 1.0,
        };
        static constexpr double gden[] = {
            3.99653257887490811e13, 4.01839087307656620e13, 1.17164723371736605e13,
            1.39866710696414565e12, 7.87465017341829930e10, 2.23355543278099360e9,
            3.26026661647090822e7, 2.40036752835578777e5, 8.19595201151451564e2,
            1.0,
        };
        const Scalar y = 1 / (ax * ax);
        const Scalar f = detail::horner(fnum, y) / (ax * detail::horner(fden, y));
        const Scalar g = y * detail::horner(gnum, y) / detail::horner(gden, y);
        si = half_pi - f * std::cos(ax) - g * std::sin(ax);
    }
    return x < 0 ? -si : si;
}

// Cardinal basis S(j,h)(x) = sin(z)/z with z = pi (x - j h)/h: equal to 1 at
// the grid point x = j h and 0 at every other one.
template <typename Scalar>
Scalar sinc_basis(int j, Scalar h, Scalar x)
{
    const Scalar z = std::numbers::pi_v<Scalar> * (x - j * h) / h;
    if (std::abs(z) < Scalar(1e-8)) return Scalar(1) - z * z / Scalar(6); // removable singularity
    return std::sin(z) / z;
}

// Running integral of the cardinal basis from the far left,
//
//   J(j,h)(x) = h (1/2 + Si(z)/pi),  z = pi (x - j h)/h,
//
// which climbs from 0 at x -> -inf to h at x -> +inf.
template <typename Scalar>
Scalar indefinite_basis(int j, Scalar h, Scalar x)
{
    const Scalar z = std::numbers::pi_v<Scalar> * (x - j * h) / h;
    return h * (Scalar(0.5) + sine_integral(z) / std::numbers::pi_v<Scalar>);
}

// delta_k = J(0,1)(k) = 1/2 + Si(pi k)/pi; delta_0 = 1/2 and
// delta_k + delta_{-k} = 1.
template <typename Scalar = double>
Scalar delta_weight(int k)
{
    return Scalar(0.5)
         + sine_integral(std::numbers::pi_v<Scalar> * Scalar(k)) / std::numbers::pi_v<Scalar>;
}

// Truncation index N and mesh size h; the grid has n = 2N+1 points j h,
// j = -N..N.
template <typename Scalar>
struct SincGrid {
    int N;
    Scalar h;

    SincGrid(int truncation, Scalar mesh) : N(truncation), h(mesh)
    {
        if (N < 1) throw std::invalid_argument("SincGrid: N must be >= 1");
        if (!std::isfinite(h) || !(h > Scalar(0)))
            throw std::invalid_argument("SincGrid: h must be positive and finite");
    }

    int n() const { return 2 * N + 1; }
};

} // namespace sincvolterra

#endif
