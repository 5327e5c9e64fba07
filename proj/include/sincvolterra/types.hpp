#ifndef SINCVOLTERRA_TYPES_HPP
#define SINCVOLTERRA_TYPES_HPP

#include <Eigen/Core>

namespace sincvolterra {

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

} // namespace sincvolterra

#endif
