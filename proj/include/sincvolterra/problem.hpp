#ifndef SINCVOLTERRA_PROBLEM_HPP
#define SINCVOLTERRA_PROBLEM_HPP

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>

#include "transforms.hpp"

namespace sincvolterra {

/*
 * A Volterra integral equation of the second kind on [a, b],
 *
 *            / t
 *   u(t)  -  |  k(t, s) u(s) ds  =  g(t),
 *            / a
 *
 * together with the analyticity metadata (d, alpha) used to pick mesh sizes
 * for the SE and DE transforms.  `exact` is optional and only consulted by
 * the benchmark layer to measure errors.
 */
template <typename Scalar>
struct VolterraProblem {
    Scalar a;
    Scalar b;
    std::function<Scalar(Scalar, Scalar)> kernel; // k(t, s)
    std::function<Scalar(Scalar)> rhs;            // g(t)
    MeshParameters<Scalar> mesh_se;
    MeshParameters<Scalar> mesh_de;
    std::function<Scalar(Scalar)> exact;          // may be empty
};

namespace detail {

// Spot-check a callable for finite values on a coarse grid including both
// endpoints.  Continuity is the caller's contract; this only catches gross
// transcription mistakes before they surface as NaN systems.
template <typename Scalar, typename F>
void probe_finite(const F& f, Scalar a, Scalar b, const char* what)
{
    for (int i = 0; i <= 4; ++i) {
        const Scalar t = a + (b - a) * Scalar(i) / 4;
        if (!std::isfinite(f(t)))
            throw std::invalid_argument(std::string(what) + " is non-finite at t = "
                                        + std::to_string(double(t)));
    }
}

template <typename Scalar, typename F>
void probe_finite_kernel(const F& k, Scalar a, Scalar b)
{
    for (int i = 0; i <= 4; ++i)
        for (int j = 0; j <= 4; ++j) {
            const Scalar t = a + (b - a) * Scalar(i) / 4;
            const Scalar s = a + (b - a) * Scalar(j) / 4;
            if (!std::isfinite(k(t, s)))
                throw std::invalid_argument("kernel is non-finite at (t, s) = ("
                                            + std::to_string(double(t)) + ", "
                                            + std::to_string(double(s)) + ")");
        }
}

} // namespace detail

template <typename Scalar>
VolterraProblem<Scalar> make_problem(Scalar a, Scalar b,
                                     std::function<Scalar(Scalar, Scalar)> kernel,
                                     std::function<Scalar(Scalar)> rhs,
                                     MeshParameters<Scalar> mesh_se,
                                     MeshParameters<Scalar> mesh_de,
                                     std::function<Scalar(Scalar)> exact = {})
{
    if (!std::isfinite(a) || !std::isfinite(b) || !(a < b))
        throw std::invalid_argument("make_problem: need finite a < b");
    if (!kernel || !rhs)
        throw std::invalid_argument("make_problem: kernel and rhs must be callable");
    mesh_se.validate_for(TransformKind::SE);
    mesh_de.validate_for(TransformKind::DE);
    detail::probe_finite_kernel(kernel, a, b);
    detail::probe_finite(rhs, a, b, "rhs");
    if (exact) detail::probe_finite(exact, a, b, "exact");
    return {a, b, std::move(kernel), std::move(rhs), mesh_se, mesh_de, std::move(exact)};
}

/*
 * Reduce the linear initial value problem
 *
 *   u'(t) = rate(t) u(t) + forcing(t),   u(a) = initial_value,
 *
 * to the second-kind form above: integrating once gives the one-variable
 * kernel k(t, s) = rate(s) and g(t) = initial_value + G(t), where G is the
 * caller-supplied antiderivative of the forcing with G(a) = 0.
 *
 * The mesh parameters default to nearly the widest admissible strips, which
 * suits coefficient functions analytic well beyond them.
 */
template <typename Scalar>
VolterraProblem<Scalar> reduce_ivp(Scalar a, Scalar b,
                                   std::function<Scalar(Scalar)> rate,
                                   std::function<Scalar(Scalar)> forcing,
                                   Scalar initial_value,
                                   std::function<Scalar(Scalar)> forcing_antiderivative,
                                   MeshParameters<Scalar> mesh_se = {Scalar(3.14), Scalar(1)},
                                   MeshParameters<Scalar> mesh_de = {Scalar(1.57), Scalar(1)},
                                   std::function<Scalar(Scalar)> exact = {})
{
    if (!rate || !forcing || !forcing_antiderivative)
        throw std::invalid_argument("reduce_ivp: rate, forcing and antiderivative must be callable");
    const Scalar at_a = forcing_antiderivative(a);
    if (!(std::abs(at_a) <= Scalar(1e-12)))
        throw std::invalid_argument("reduce_ivp: antiderivative must vanish at a, got "
                                    + std::to_string(double(at_a)));
    detail::probe_finite(forcing, a, b, "forcing");
    auto kernel = [r = std::move(rate)](Scalar, Scalar s) { return r(s); };
    auto rhs = [initial_value, G = std::move(forcing_antiderivative)](Scalar t) {
        return initial_value + G(t);
    };
    return make_problem<Scalar>(a, b, std::move(kernel), std::move(rhs), mesh_se, mesh_de,
                                std::move(exact));
}

} // namespace sincvolterra

#endif
