#include "evodrh/eigensolve.hpp"

#include <Eigen/CholmodSupport>
#include <Eigen/SparseCholesky>

#include <algorithm>
#include <cmath>
#include <vector>

namespace evodrh {

double gershgorin_bound(const SparseSym& A) {
    Eigen::VectorXd rowsum = Eigen::VectorXd::Zero(A.rows());
    for (int col = 0; col < A.outerSize(); ++col)
        for (SparseSym::InnerIterator it(A, col); it; ++it)
            rowsum(it.row()) += std::abs(it.value());
    return rowsum.size() ? rowsum.maxCoeff() : 0.0;
}

EigenPairs dense_eig(const SparseSym& A) {
    EigenPairs out;
    out.full = true;
    if (A.rows() == 0) return out;
    Eigen::MatrixXd dense = Eigen::MatrixXd(A);
    // Symmetrize against roundoff from sparse products.
    dense = 0.5 * (dense + dense.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(dense);
    if (solver.info() != Eigen::Success)
        fail(ErrorCode::Solver, "dense symmetric eigendecomposition failed");
    out.values = solver.eigenvalues();
    out.vectors = solver.eigenvectors();
    return out;
}

namespace {

struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    double uniform() {
        return static_cast<double>(next() >> 11) * (1.0 / 9007199254740992.0) - 0.5;
    }
};

} // namespace

EigenPairs lanczos_smallest(const SparseSym& A, int m, double residual_tol,
                            std::uint64_t seed) {
    const Eigen::Index n = A.rows();
    if (n == 0) {
        EigenPairs out;
        out.full = true;
        return out;
    }
    if (m <= 0) fail(ErrorCode::InvalidArgument, "lanczos m must be positive");

    // Small problems go dense: exact and cheaper than factorizing.
    if (n <= std::max<Eigen::Index>(3 * m, 96)) {
        EigenPairs out = dense_eig(A);
        if (out.values.size() > m) {
            out.values.conservativeResize(m);
            out.vectors.conservativeResize(n, m);
            out.full = false;
        }
        return out;
    }

    const double scale = std::max(gershgorin_bound(A), 1e-300);
    const double delta = 1e-8 * scale;
    SparseSym B = A;
    for (Eigen::Index i = 0; i < n; ++i) B.coeffRef(i, i) += delta;
    B.makeCompressed();
    // Supernodal Cholesky (nested-dissection ordering) keeps the fill of the
    // edge and face Laplacians manageable; the simplicial fallback covers
    // environments where CHOLMOD misbehaves.
    Eigen::CholmodSupernodalLLT<SparseSym, Eigen::Lower> ldlt;
    ldlt.compute(B);
    if (ldlt.info() != Eigen::Success)
        fail(ErrorCode::Solver, "Cholesky factorization failed in shift-invert");

    const int max_iter =
        static_cast<int>(std::min<Eigen::Index>(n, std::max(4 * m + 70, 130)));
    Eigen::MatrixXd Q(n, max_iter + 1);
    std::vector<double> alpha, beta;

    SplitMix64 rng(seed);
    Eigen::VectorXd q(n);
    for (Eigen::Index i = 0; i < n; ++i) q(i) = rng.uniform();
    q.normalize();
    Q.col(0) = q;

    Eigen::VectorXd ritz_converged;
    Eigen::MatrixXd tvecs;
    int j = 0;
    for (; j < max_iter; ++j) {
        Eigen::VectorXd w = ldlt.solve(Q.col(j));
        const double a = Q.col(j).dot(w);
        alpha.push_back(a);
        w -= a * Q.col(j);
        if (j > 0) w -= beta[static_cast<std::size_t>(j - 1)] * Q.col(j - 1);
        // Full reorthogonalization, twice.
        for (int pass = 0; pass < 2; ++pass)
            w -= Q.leftCols(j + 1) * (Q.leftCols(j + 1).transpose() * w).eval();
        const double b = w.norm();
        beta.push_back(b);
        if (b < 1e-14) {
            // Invariant subspace found; restart direction keeps the process going.
            Eigen::VectorXd fresh(n);
            for (Eigen::Index i = 0; i < n; ++i) fresh(i) = rng.uniform();
            for (int pass = 0; pass < 2; ++pass)
                fresh -= Q.leftCols(j + 1) * (Q.leftCols(j + 1).transpose() * fresh).eval();
            const double fn = fresh.norm();
            if (fn < 1e-14) { ++j; break; } // the whole space is spanned
            Q.col(j + 1) = fresh / fn;
        } else {
            Q.col(j + 1) = w / b;
        }

        const int k = j + 1;
        if (k < m && k < static_cast<int>(n)) continue;
        // Ritz values of the tridiagonal section; we want the m largest
        // (largest in B^-1 = smallest in A).
        Eigen::MatrixXd Tk = Eigen::MatrixXd::Zero(k, k);
        for (int i = 0; i < k; ++i) {
            Tk(i, i) = alpha[static_cast<std::size_t>(i)];
            if (i + 1 < k)
                Tk(i, i + 1) = Tk(i + 1, i) = beta[static_cast<std::size_t>(i)];
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Tk);
        const int want = std::min<int>(m, k);
        bool done = true;
        for (int i = 0; i < want; ++i) {
            const int idx = k - 1 - i; // largest theta first
            const double theta = es.eigenvalues()(idx);
            const double resid =
                beta[static_cast<std::size_t>(k - 1)] * std::abs(es.eigenvectors()(k - 1, idx));
            if (resid > 1e-10 * std::max(std::abs(theta), 1e-30)) {
                done = false;
                break;
            }
        }
        if (done || j + 1 == max_iter) {
            ritz_converged = es.eigenvalues();
            tvecs = es.eigenvectors();
            ++j;
            break;
        }
    }

    if (tvecs.size() == 0) {
        Eigen::MatrixXd Tk = Eigen::MatrixXd::Zero(j, j);
        for (int i = 0; i < j; ++i) {
            Tk(i, i) = alpha[static_cast<std::size_t>(i)];
            if (i + 1 < j)
                Tk(i, i + 1) = Tk(i + 1, i) = beta[static_cast<std::size_t>(i)];
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Tk);
        ritz_converged = es.eigenvalues();
        tvecs = es.eigenvectors();
    }

    const int k = static_cast<int>(ritz_converged.size());
    const int want = std::min<int>(m, k);
    EigenPairs out;
    out.values.resize(want);
    out.vectors.resize(n, want);
    // Largest theta of B^-1 is the smallest eigenvalue of A.
    for (int i = 0; i < want; ++i) {
        const int idx = k - 1 - i;
        const double theta = ritz_converged(idx);
        out.values(i) = 1.0 / theta - delta;
        out.vectors.col(i) = Q.leftCols(k) * tvecs.col(idx);
    }
    for (int i = 0; i < want; ++i) out.vectors.col(i).normalize();

    double worst = 0.0;
    for (int i = 0; i < want; ++i) {
        const double resid =
            (A * out.vectors.col(i) - out.values(i) * out.vectors.col(i)).norm();
        worst = std::max(worst, resid);
    }
    out.max_residual = worst;
    if (worst > residual_tol * scale)
        fail(ErrorCode::Solver,
             "lanczos did not converge: residual " + std::to_string(worst) +
                 " exceeds " + std::to_string(residual_tol * scale));
    // Clamp tiny negative kernel values introduced by the shift.
    for (int i = 0; i < want; ++i)
        if (out.values(i) < 0.0 && out.values(i) > -1e-9 * scale) out.values(i) = 0.0;
    return out;
}

} // namespace evodrh
