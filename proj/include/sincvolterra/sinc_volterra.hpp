#ifndef SINCVOLTERRA_SINC_VOLTERRA_HPP
#define SINCVOLTERRA_SINC_VOLTERRA_HPP

#include "benchmark.hpp"
#include "linear_system.hpp"
#include "problem.hpp"
#include "sinc_basis.hpp"
#include "solvers.hpp"
#include "transforms.hpp"
#include "types.hpp"

#endif
