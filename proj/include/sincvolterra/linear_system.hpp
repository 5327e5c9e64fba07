#ifndef SINCVOLTERRA_LINEAR_SYSTEM_HPP
#define SINCVOLTERRA_LINEAR_SYSTEM_HPP

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include <Eigen/LU>

#include "problem.hpp"
#include "sinc_basis.hpp"
#include "transforms.hpp"
#include "types.hpp"

namespace sincvolterra {

// Kernel or right-hand side produced a non-finite value during assembly.
// Indices are logical, i.e. in [-N, N].
class AssemblyError : public std::runtime_error {
public:
    AssemblyError(const std::string& what, int row, int col)
        : std::runtime_error(what), row_(row), col_(col)
    {
    }

    int row() const { return row_; }
    int col() const { return col_; }

private:
    int row_, col_;
};

class SingularMatrixError : public std::runtime_error {
public:
    explicit SingularMatrixError(Eigen::Index pivot)
        : std::runtime_error("lu_solve: exactly singular pivot at index "
                             + std::to_string(pivot)),
          pivot_(pivot)
    {
    }

    Eigen::Index pivot() const { return pivot_; }

private:
    Eigen::Index pivot_;
};

template <typename Scalar>
struct AssembledSystem {
    MatrixX<Scalar> matrix;
    VectorX<Scalar> rhs;
};

// delta_k for k in [-2N, 2N], indexed by k + 2N; every difference i - j of
// two grid indices lands in this range, so one table serves a whole
// assembly.
template <typename Scalar>
VectorX<Scalar> delta_weight_table(int N)
{
    VectorX<Scalar> table(4 * N + 1);
    for (int k = -2 * N; k <= 2 * N; ++k) table[k + 2 * N] = delta_weight<Scalar>(k);
    return table;
}

namespace detail {

template <typename Scalar>
struct DiscreteOperator {
    MatrixX<Scalar> V; // V(i,j) = k(t_i, t_j) psi'(j h) h delta_{i-j}
    VectorX<Scalar> g; // g(t_i)
    VectorX<Scalar> t; // nodes
};

// Samples of the indefinite-integration rule applied to k(t_i, .): the shared
// core of both assembly layouts.
template <typename Scalar>
DiscreteOperator<Scalar> discretize(const VolterraProblem<Scalar>& problem,
                                    const VariableTransform<Scalar>& transform,
                                    const SincGrid<Scalar>& grid)
{
    const int N = grid.N;
    const int n = grid.n();
    DiscreteOperator<Scalar> op;
    op.t = transform.nodes(grid);
    const VectorX<Scalar> delta = delta_weight_table<Scalar>(N);

    VectorX<Scalar> weight(n); // psi'(j h) h
    for (int j = -N; j <= N; ++j) weight[j + N] = transform.derivative(j * grid.h) * grid.h;

    op.g.resize(n);
    for (int i = -N; i <= N; ++i) {
        op.g[i + N] = problem.rhs(op.t[i + N]);
        if (!std::isfinite(op.g[i + N]))
            throw AssemblyError("rhs non-finite at node i = " + std::to_string(i), i, i);
    }

    op.V.resize(n, n);
    for (int i = -N; i <= N; ++i)
        for (int j = -N; j <= N; ++j) {
            const Scalar kij = problem.kernel(op.t[i + N], op.t[j + N]);
            if (!std::isfinite(kij))
                throw AssemblyError("kernel non-finite at (i, j) = (" + std::to_string(i)
                                        + ", " + std::to_string(j) + ")",
                                    i, j);
            op.V(i + N, j + N) = kij * weight[j + N] * delta[(i - j) + 2 * N];
        }
    return op;
}

} // namespace detail

/*
 * Collocating the discretized Volterra operator at the nodes gives the
 * square system
 *
 *   (I_n - V_n) u = g,   (V_n)_{ij} = k(t_i, t_j) psi'(j h) h delta_{i-j},
 *
 * whose solution holds the approximate values u(t_j).
 */
template <typename Scalar>
AssembledSystem<Scalar> assemble_nystrom(const VolterraProblem<Scalar>& problem,
                                         const VariableTransform<Scalar>& transform,
                                         const SincGrid<Scalar>& grid)
{
    auto op = detail::discretize(problem, transform, grid);
    MatrixX<Scalar> A = -op.V;
    A.diagonal().array() += 1;
    return {std::move(A), std::move(op.g)};
}

/*
 * Bordered collocation layout: the extreme basis functions are the linear
 * blends rather than Sinc functions, so the unknowns become expansion
 * coefficients c.  With wa, wb the blends sampled at the nodes,
 *
 *   E = [ wa | interior identity | wb ],
 *   V_rz = V_n with first/last columns replaced by V_n wa and V_n wb,
 *
 * and the system is (E - V_rz) c = g.  Interior columns of V_rz coincide
 * with those of V_n entry for entry.
 */
template <typename Scalar>
AssembledSystem<Scalar> assemble_rz(const VolterraProblem<Scalar>& problem,
                                    const VariableTransform<Scalar>& transform,
                                    const SincGrid<Scalar>& grid)
{
    if (transform.kind() != TransformKind::SE)
        throw std::invalid_argument("assemble_rz: defined for the SE transform only");
    const int n = grid.n();
    auto op = detail::discretize(problem, transform, grid);

    VectorX<Scalar> wa(n), wb(n);
    for (int i = 0; i < n; ++i) {
        wa[i] = blend_left(transform.a(), transform.b(), op.t[i]);
        wb[i] = blend_right(transform.a(), transform.b(), op.t[i]);
    }

    MatrixX<Scalar> A = -op.V;
    A.block(1, 1, n - 2, n - 2).diagonal().array() += 1;
    A.col(0) = wa - op.V * wa;
    A.col(n - 1) = wb - op.V * wb;
    return {std::move(A), std::move(op.g)};
}

// Dense direct solve by partially pivoted LU.  An exactly zero pivot is
// reported with its index; near-singular systems surface as large residuals,
// which callers check where it matters.
template <typename Scalar>
VectorX<Scalar> lu_solve(const MatrixX<Scalar>& A, const VectorX<Scalar>& rhs)
{
    if (A.rows() != A.cols()) throw std::invalid_argument("lu_solve: matrix must be square");
    if (A.rows() != rhs.size()) throw std::invalid_argument("lu_solve: size mismatch");
    Eigen::PartialPivLU<MatrixX<Scalar>> lu(A);
    const auto& packed = lu.matrixLU();
    for (Eigen::Index i = 0; i < packed.rows(); ++i)
        if (packed(i, i) == Scalar(0)) throw SingularMatrixError(i);
    return lu.solve(rhs);
}

} // namespace sincvolterra

#endif
