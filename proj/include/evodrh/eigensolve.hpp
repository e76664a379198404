#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <cstdint>

#include "evodrh/errors.hpp"

namespace evodrh {

using SparseSym = Eigen::SparseMatrix<double>;

struct EigenPairs {
    Eigen::VectorXd values;  // ascending
    Eigen::MatrixXd vectors; // matching columns
    bool full = false;       // true when the whole spectrum was computed
    double max_residual = 0.0;
};

/// Full spectrum of a symmetric PSD matrix (densified).
EigenPairs dense_eig(const SparseSym& A);

/// Smallest m eigenpairs of a symmetric PSD matrix via shift-invert Lanczos
/// (LDLT of A + delta*I, full reorthogonalization, deterministic start).
/// Residuals are verified as ||A v - lambda v|| <= residual_tol * scale with
/// scale the Gershgorin bound of A; non-convergence throws a Solver error.
EigenPairs lanczos_smallest(const SparseSym& A, int m, double residual_tol = 1e-9,
                            std::uint64_t seed = 20240214u);

/// Gershgorin upper bound for the spectral radius (the scale used by
/// thresholds and residual checks).
double gershgorin_bound(const SparseSym& A);

} // namespace evodrh
