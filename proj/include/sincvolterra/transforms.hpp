#ifndef SINCVOLTERRA_TRANSFORMS_HPP
#define SINCVOLTERRA_TRANSFORMS_HPP

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "sinc_basis.hpp"
#include "types.hpp"

namespace sincvolterra {

enum class TransformKind { SE, DE };

inline const char* to_string(TransformKind kind)
{
    return kind == TransformKind::SE ? "SE" : "DE";
}

// Analyticity metadata of a transformed integrand: strip half-width d and
// endpoint Holder exponent alpha.  Admissible ranges depend on the map:
// 0 < d < pi (SE) or 0 < d < pi/2 (DE), and 0 < alpha <= 1.
template <typename Scalar>
struct MeshParameters {
    Scalar d;
    Scalar alpha;

    void validate_for(TransformKind kind) const
    {
        const Scalar limit = kind == TransformKind::SE ? std::numbers::pi_v<Scalar>
                                                       : std::numbers::pi_v<Scalar> / 2;
        if (!std::isfinite(d) || !(d > 0) || !(d < limit))
            throw std::invalid_argument(std::string("MeshParameters: d must lie in (0, ")
                                        + (kind == TransformKind::SE ? "pi" : "pi/2")
                                        + ") for " + to_string(kind));
        if (!std::isfinite(alpha) || !(alpha > 0) || !(alpha <= 1))
            throw std::invalid_argument("MeshParameters: alpha must lie in (0, 1]");
    }
};

// Mesh size balancing the truncation and discretization errors at index N:
//
//   SE: h = sqrt(pi d / (alpha N))        DE: h = log(2 d N / alpha) / N
template <typename Scalar>
Scalar mesh_size(TransformKind kind, int N, const MeshParameters<Scalar>& params)
{
    if (N < 1) throw std::invalid_argument("mesh_size: N must be >= 1");
    params.validate_for(kind);
    if (kind == TransformKind::SE)
        return std::sqrt(std::numbers::pi_v<Scalar> * params.d / (params.alpha * Scalar(N)));
    const Scalar arg = 2 * params.d * Scalar(N) / params.alpha;
    if (!(arg > 1)) throw std::invalid_argument("mesh_size: DE needs 2 d N / alpha > 1");
    return std::log(arg) / Scalar(N);
}

// Linear boundary blends: blend_left is 1 at a and 0 at b, blend_right the
// mirror image; they sum to 1 everywhere.
template <typename Scalar>
Scalar blend_left(Scalar a, Scalar b, Scalar t)
{
    return (b - t) / (b - a);
}

template <typename Scalar>
Scalar blend_right(Scalar a, Scalar b, Scalar t)
{
    return (t - a) / (b - a);
}

/*
 * Strictly increasing map of the whole real line onto the interval (a, b),
 *
 *   SE:  t = (b-a)/2 tanh(x/2)           + (b+a)/2
 *   DE:  t = (b-a)/2 tanh((pi/2) sinh x) + (b+a)/2
 *
 * forward() clamps values saturated by floating-point rounding to the
 * nearest representable point strictly inside (a, b); inverse() rejects
 * arguments on or outside the closed endpoints.
 */
template <typename Scalar>
class VariableTransform {
public:
    VariableTransform(TransformKind kind, Scalar a, Scalar b) : kind_(kind), a_(a), b_(b)
    {
        if (!std::isfinite(a) || !std::isfinite(b) || !(a < b))
            throw std::invalid_argument("VariableTransform: need finite a < b");
    }

    TransformKind kind() const { return kind_; }
    Scalar a() const { return a_; }
    Scalar b() const { return b_; }

    Scalar forward(Scalar x) const
    {
        const Scalar u = kind_ == TransformKind::SE
                             ? std::tanh(x / 2)
                             : std::tanh(std::numbers::pi_v<Scalar> / 2 * std::sinh(x));
        Scalar t = (b_ - a_) / 2 * u + (b_ + a_) / 2;
        if (t <= a_) t = std::nextafter(a_, b_);
        if (t >= b_) t = std::nextafter(b_, a_);
        return t;
    }

    Scalar derivative(Scalar x) const
    {
        if (kind_ == TransformKind::SE) {
            const Scalar s = 1 / std::cosh(x / 2);
            return (b_ - a_) / 4 * s * s;
        }
        const Scalar s = 1 / std::cosh(std::numbers::pi_v<Scalar> / 2 * std::sinh(x));
        if (s == 0) return Scalar(0); // underflow far outside the working range
        return (b_ - a_) * std::numbers::pi_v<Scalar> / 4 * std::cosh(x) * s * s;
    }

    Scalar inverse(Scalar t) const
    {
        if (!(t > a_) || !(t < b_))
            throw std::domain_error("VariableTransform::inverse: argument outside (a, b)");
        // log((t-a)/(b-t)) = 2 artanh of the normalized coordinate; exact at
        // the midpoint and stable down to the last representable points.
        const Scalar r = std::log((t - a_) / (b_ - t));
        return kind_ == TransformKind::SE ? r : std::asinh(r / std::numbers::pi_v<Scalar>);
    }

    // Nodes t_j = forward(j h), j = -N..N, in increasing order.
    VectorX<Scalar> nodes(const SincGrid<Scalar>& grid) const
    {
        VectorX<Scalar> t(grid.n());
        for (int j = -grid.N; j <= grid.N; ++j) t[j + grid.N] = forward(j * grid.h);
        return t;
    }

private:
    TransformKind kind_;
    Scalar a_, b_;
};

} // namespace sincvolterra

#endif
