#ifndef SINCVOLTERRA_SOLVERS_HPP
#define SINCVOLTERRA_SOLVERS_HPP

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "linear_system.hpp"

namespace sincvolterra {

namespace detail {

// Points within one ulp of an endpoint take the analytic endpoint limit;
// phi(t) is never formed there.  Returns -1 / 0 / +1 for left / interior /
// right.
template <typename Scalar>
int endpoint_side(Scalar t, Scalar a, Scalar b)
{
    if (!(t >= a) || !(t <= b)) throw std::domain_error("evaluate: t outside [a, b]");
    if (t <= std::nextafter(a, b)) return -1;
    if (t >= std::nextafter(b, a)) return +1;
    return 0;
}

// The forward map flattens to machine precision near b, so recovering
// phi^{-1}(t) from a rounded node loses up to ~1e-5 in x there.  Points that
// are bit-equal to a stored node therefore never go through the inverse: the
// evaluators look them up here and return the analytically known value.
template <typename Scalar>
Eigen::Index node_index(const VectorX<Scalar>& nodes, Scalar t)
{
    const Scalar* first = nodes.data();
    const Scalar* last = first + nodes.size();
    const Scalar* it = std::lower_bound(first, last, t);
    return it != last && *it == t ? it - first : Eigen::Index(-1);
}

} // namespace detail

// Solution of (I - V_n) u = g: the values at the nodes plus everything the
// natural extension off the nodes needs.
template <typename Scalar>
struct NystromSolution {
    VolterraProblem<Scalar> problem;
    VariableTransform<Scalar> transform;
    SincGrid<Scalar> grid;
    VectorX<Scalar> coeffs;           // u at the nodes t_j
    VectorX<Scalar> nodes;            // t_j
    VectorX<Scalar> node_derivatives; // psi'(j h)
};

template <typename Scalar>
NystromSolution<Scalar> solve_nystrom(const VolterraProblem<Scalar>& problem,
                                      TransformKind kind, int N)
{
    const MeshParameters<Scalar>& params =
        kind == TransformKind::SE ? problem.mesh_se : problem.mesh_de;
    const SincGrid<Scalar> grid(N, mesh_size(kind, N, params));
    const VariableTransform<Scalar> transform(kind, problem.a, problem.b);
    auto system = assemble_nystrom(problem, transform, grid);
    VectorX<Scalar> u = lu_solve(system.matrix, system.rhs);

    VectorX<Scalar> derivs(grid.n());
    for (int j = -N; j <= N; ++j) derivs[j + N] = transform.derivative(j * grid.h);
    return {problem, transform, grid, std::move(u), transform.nodes(grid), std::move(derivs)};
}

/*
 * Natural extension of the Nystrom solution off the nodes,
 *
 *   u(t) = g(t) + sum_j k(t, t_j) u_j psi'(j h) J(j,h)(phi(t)),
 *
 * with the limits u(a) = g(a) (every J -> 0) and
 * u(b) = g(b) + sum_j k(b, t_j) u_j psi'(j h) h (every J -> h).
 * Each interior evaluation costs one sine integral per node.
 */
template <typename Scalar>
Scalar evaluate_nystrom(const NystromSolution<Scalar>& sol, Scalar t)
{
    const Scalar a = sol.transform.a();
    const Scalar b = sol.transform.b();
    const int side = detail::endpoint_side(t, a, b);

    // J(j,h)(i h) = h delta_{i-j}, so at a node the extension collapses to
    // u_i.  Checked ahead of the endpoint limits: a node that rounds onto b
    // keeps its solved value.
    const Eigen::Index hit = detail::node_index(sol.nodes, t);
    if (hit >= 0) return sol.coeffs[hit];

    if (side < 0) return sol.problem.rhs(a);

    const int N = sol.grid.N;
    if (side > 0) {
        Scalar acc = 0;
        for (int idx = 0; idx < sol.grid.n(); ++idx)
            acc += sol.problem.kernel(b, sol.nodes[idx]) * sol.coeffs[idx]
                 * sol.node_derivatives[idx] * sol.grid.h;
        return sol.problem.rhs(b) + acc;
    }

    const Scalar x = sol.transform.inverse(t);
    Scalar acc = 0;
    for (int j = -N; j <= N; ++j) {
        const int idx = j + N;
        acc += sol.problem.kernel(t, sol.nodes[idx]) * sol.coeffs[idx]
             * sol.node_derivatives[idx] * indefinite_basis(j, sol.grid.h, x);
    }
    return sol.problem.rhs(t) + acc;
}

/*
 * Generalized Sinc interpolant of node data: subtract the linear blend
 * through the extreme samples, Sinc-interpolate the residual, add the blend
 * back,
 *
 *   v(t) = sum_j c_j S(j,h)(phi(t)) + v_{-N} wa(t) + v_{N} wb(t),
 *   c_j  = v_j - v_{-N} wa(t_j) - v_{N} wb(t_j).
 *
 * v matches the data at every node and reproduces constants exactly; its
 * evaluation needs no sine integrals.
 */
template <typename Scalar>
struct CollocationSolution {
    VariableTransform<Scalar> transform;
    SincGrid<Scalar> grid;
    VectorX<Scalar> nodes;       // t_j
    VectorX<Scalar> node_values;
    Scalar boundary_left;  // value carried at a (= node_values[0])
    Scalar boundary_right; // value carried at b (= node_values[n-1])
    VectorX<Scalar> sinc_coeffs;
};

template <typename Scalar>
CollocationSolution<Scalar> generalized_sinc_approximant(const VariableTransform<Scalar>& transform,
                                                         const SincGrid<Scalar>& grid,
                                                         VectorX<Scalar> node_values)
{
    if (node_values.size() != grid.n())
        throw std::invalid_argument("generalized_sinc_approximant: data size != 2N+1");
    VectorX<Scalar> t = transform.nodes(grid);
    const Scalar left = node_values[0];
    const Scalar right = node_values[grid.n() - 1];
    VectorX<Scalar> c(grid.n());
    for (int i = 0; i < grid.n(); ++i)
        c[i] = node_values[i] - left * blend_left(transform.a(), transform.b(), t[i])
             - right * blend_right(transform.a(), transform.b(), t[i]);
    return {transform, grid, std::move(t), std::move(node_values), left, right, std::move(c)};
}

template <typename Scalar>
CollocationSolution<Scalar> collocation_from_nystrom(const NystromSolution<Scalar>& nystrom)
{
    return generalized_sinc_approximant(nystrom.transform, nystrom.grid, nystrom.coeffs);
}

template <typename Scalar>
CollocationSolution<Scalar> solve_collocation(const VolterraProblem<Scalar>& problem,
                                              TransformKind kind, int N)
{
    return collocation_from_nystrom(solve_nystrom(problem, kind, N));
}

template <typename Scalar>
Scalar evaluate_collocation(const CollocationSolution<Scalar>& sol, Scalar t)
{
    const Scalar a = sol.transform.a();
    const Scalar b = sol.transform.b();
    const int side = detail::endpoint_side(t, a, b);

    // exact at the data sites
    const Eigen::Index hit = detail::node_index(sol.nodes, t);
    if (hit >= 0) return sol.node_values[hit];

    if (side < 0) return sol.boundary_left;
    if (side > 0) return sol.boundary_right;

    const Scalar x = sol.transform.inverse(t);
    Scalar acc = 0;
    for (int j = -sol.grid.N; j <= sol.grid.N; ++j)
        acc += sol.sinc_coeffs[j + sol.grid.N] * sinc_basis(j, sol.grid.h, x);
    return acc + sol.boundary_left * blend_left(a, b, t)
               + sol.boundary_right * blend_right(a, b, t);
}

/*
 * Bordered collocation solution: the extreme coefficients multiply the
 * blends themselves,
 *
 *   w(t) = c_{-N} wa(t) + sum_{|j| < N} c_j S(j,h)(phi(t)) + c_N wb(t),
 *
 * so w(a) = c_{-N} and w(b) = c_N.  Built on the SE transform.
 */
template <typename Scalar>
struct RZSolution {
    VariableTransform<Scalar> transform;
    SincGrid<Scalar> grid;
    VectorX<Scalar> coeffs;      // c_{-N} .. c_N
    VectorX<Scalar> nodes;       // t_j
    VectorX<Scalar> node_values; // w at the nodes
};

// Packages an RZ coefficient vector.  The interior Sinc terms vanish at every
// node, so w(t_i) reduces to c_{-N} wa(t_i) [+ c_i] + c_N wb(t_i); those
// values are precomputed here and served verbatim on node hits.
template <typename Scalar>
RZSolution<Scalar> make_rz_solution(const VariableTransform<Scalar>& transform,
                                    const SincGrid<Scalar>& grid, VectorX<Scalar> coeffs)
{
    const int n = grid.n();
    if (coeffs.size() != n)
        throw std::invalid_argument("make_rz_solution: coefficient size != 2N+1");
    VectorX<Scalar> nodes = transform.nodes(grid);
    VectorX<Scalar> values(n);
    for (int i = 0; i < n; ++i) {
        Scalar v = coeffs[0] * blend_left(transform.a(), transform.b(), nodes[i])
                 + coeffs[n - 1] * blend_right(transform.a(), transform.b(), nodes[i]);
        if (i != 0 && i != n - 1) v += coeffs[i];
        values[i] = v;
    }
    return {transform, grid, std::move(coeffs), std::move(nodes), std::move(values)};
}

template <typename Scalar>
RZSolution<Scalar> solve_rz(const VolterraProblem<Scalar>& problem, int N)
{
    const SincGrid<Scalar> grid(N, mesh_size(TransformKind::SE, N, problem.mesh_se));
    const VariableTransform<Scalar> transform(TransformKind::SE, problem.a, problem.b);
    auto system = assemble_rz(problem, transform, grid);
    return make_rz_solution(transform, grid, lu_solve(system.matrix, system.rhs));
}

template <typename Scalar>
Scalar evaluate_rz(const RZSolution<Scalar>& sol, Scalar t)
{
    const Scalar a = sol.transform.a();
    const Scalar b = sol.transform.b();
    const int side = detail::endpoint_side(t, a, b);
    const int N = sol.grid.N;

    const Eigen::Index hit = detail::node_index(sol.nodes, t);
    if (hit >= 0) return sol.node_values[hit];

    if (side < 0) return sol.coeffs[0];
    if (side > 0) return sol.coeffs[2 * N];

    const Scalar x = sol.transform.inverse(t);
    Scalar acc = 0;
    for (int j = -N + 1; j <= N - 1; ++j)
        acc += sol.coeffs[j + N] * sinc_basis(j, sol.grid.h, x);
    return sol.coeffs[0] * blend_left(a, b, t) + acc
         + sol.coeffs[2 * N] * blend_right(a, b, t);
}

} // namespace sincvolterra

#endif
