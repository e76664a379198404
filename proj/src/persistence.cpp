#include "evodrh/persistence.hpp"

#include <algorithm>
#include <cmath>

namespace evodrh {

namespace {

constexpr double kDeathTol = 1e-6;
constexpr double kAmbLow = 1e-8;

std::vector<Index> interior_ambient(const SnapshotComplex& snap, int k) {
    // Local retained ids are produced by restrict_operator in ascending local
    // order, which is ascending ambient order; rebuild the ambient keys here.
    std::vector<Index> out;
    auto emit = [&out](const std::vector<Index>& ids,
                       const std::vector<std::uint8_t>& bnd) {
        for (Index a : ids)
            if (!bnd[static_cast<std::size_t>(a)]) out.push_back(a);
    };
    switch (k) {
        case 0: emit(snap.verts, snap.bnd_vert); break;
        case 1: emit(snap.edges, snap.bnd_edge); break;
        case 2: emit(snap.tris, snap.bnd_tri); break;
        case 3: out = snap.tets; break; // tets are always interior
        default: fail(ErrorCode::InvalidArgument, "k must be in 0..3");
    }
    return out;
}

} // namespace

HarmonicBasis harmonic_basis(const AmbientMesh& mesh, const SnapshotComplex& snap,
                             const DecOperators& ops, int k,
                             const SpectraParams& params,
                             std::int64_t expected_dim) {
    HarmonicBasis basis;
    basis.k = k;
    basis.dof_ambient = interior_ambient(snap, k);
    const Eigen::Index n = static_cast<Eigen::Index>(basis.dof_ambient.size());

    if (n == 0 || snap.empty()) {
        basis.vectors.resize(n, 0);
        if (expected_dim > 0)
            fail(ErrorCode::OracleMismatch,
                 "harmonic space is empty but the oracle expects dim " +
                     std::to_string(expected_dim));
        return basis;
    }

    if (k == 3) {
        // ker(Dbar_{2,n}^T): one vector per component, constant in raw
        // 3-form coordinates up to the sorted-tuple orientation sign, i.e.
        // proportional to S3^(-1/2) restricted to the component (tets carry
        // consistent positive geometric volume, and the normalized kernel
        // vector is S3^(1/2) * raw with raw = 1/volume-weight... the direct
        // characterization: Dbar2^T w = 0 iff D2^T S3^(1/2) w = 0).
        std::vector<Index> labels;
        const std::size_t comp = connected_components(mesh, snap, &labels);
        basis.vectors = Eigen::MatrixXd::Zero(n, static_cast<Eigen::Index>(comp));
        // Raw kernel of D2^T over tets: per component, v_T = sign_T where
        // sign_T makes the sorted tuple positively oriented. Our tets store
        // positive volume under a possible last-two swap; the sorted-order
        // sign is -1 exactly when the swap happened.
        for (std::size_t lt = 0; lt < snap.tets.size(); ++lt) {
            const auto& T = mesh.tets[static_cast<std::size_t>(snap.tets[lt])];
            const double sorted_sign = (T[2] < T[3]) ? 1.0 : -1.0;
            const double s3 = ops.stars.s3(static_cast<Eigen::Index>(lt));
            // normalized w = S3^(1/2) raw
            basis.vectors(static_cast<Eigen::Index>(lt), labels[lt]) =
                sorted_sign / std::sqrt(s3);
        }
        for (Eigen::Index c = 0; c < basis.vectors.cols(); ++c)
            basis.vectors.col(c).normalize();
        if (expected_dim >= 0 && static_cast<std::int64_t>(comp) != expected_dim)
            fail(ErrorCode::OracleMismatch,
                 "component count " + std::to_string(comp) +
                     " disagrees with oracle dim " + std::to_string(expected_dim));
        return basis;
    }

    SparseD L = assemble_laplacian(ops, BoundaryCondition::Normal, k);
    const double scale = gershgorin_bound(L);
    const double eps = params.zero_rel * std::max(1.0, scale);
    int want = static_cast<int>(
        std::min<std::int64_t>(n, std::max<std::int64_t>(expected_dim + 4, 8)));
    Eigen::MatrixXd kernel;
    for (int attempt = 0; attempt < 4; ++attempt) {
        EigenPairs pairs =
            (n <= std::min<Eigen::Index>(params.auto_dense, 4096))
                ? dense_eig(L)
                : lanczos_smallest(L, want, params.residual_tol, params.seed);
        Eigen::Index kdim = 0;
        while (kdim < pairs.values.size() && pairs.values(kdim) <= eps) ++kdim;
        if (pairs.full || kdim < pairs.values.size()) {
            kernel = pairs.vectors.leftCols(kdim);
            break;
        }
        if (want >= n || want >= 192) {
            kernel = pairs.vectors;
            break;
        }
        want = std::min({2 * want, static_cast<int>(n), 192});
    }

    // Orthonormalize (defensive; eigenvectors arrive orthonormal already).
    if (kernel.cols() > 0) {
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(kernel);
        basis.vectors = qr.householderQ() * Eigen::MatrixXd::Identity(n, kernel.cols());
    } else {
        basis.vectors.resize(n, 0);
    }
    if (expected_dim >= 0 && kernel.cols() != expected_dim)
        fail(ErrorCode::OracleMismatch,
             "harmonic kernel dim " + std::to_string(kernel.cols()) +
                 " (k=" + std::to_string(k) + ") disagrees with oracle dim " +
                 std::to_string(expected_dim));
    // Residual sanity on each basis vector.
    for (Eigen::Index i = 0; i < basis.vectors.cols(); ++i) {
        const double r = (L * basis.vectors.col(i)).norm();
        if (r > 1e-8 * std::max(1.0, scale))
            fail(ErrorCode::Solver,
                 "harmonic vector residual " + std::to_string(r) + " too large");
    }
    return basis;
}

namespace {

/// Scatter the earlier basis into the later snapshot's interior DOF rows.
/// Both ambient id lists ascend; every earlier interior simplex must still
/// be interior later (a property of vertex-rule nesting).
Eigen::MatrixXd pad_vectors(const HarmonicBasis& earlier,
                            const std::vector<Index>& later_ids,
                            Eigen::Index later_rows) {
    Eigen::MatrixXd padded = Eigen::MatrixXd::Zero(later_rows, earlier.vectors.cols());
    std::size_t li = 0;
    for (std::size_t ei = 0; ei < earlier.dof_ambient.size(); ++ei) {
        const Index a = earlier.dof_ambient[ei];
        while (li < later_ids.size() && later_ids[li] < a) ++li;
        if (li >= later_ids.size() || later_ids[li] != a)
            fail(ErrorCode::Internal,
                 "padding failed: interior simplex lost under nesting");
        padded.row(static_cast<Eigen::Index>(li)) =
            earlier.vectors.row(static_cast<Eigen::Index>(ei));
    }
    return padded;
}

} // namespace

Eigen::MatrixXd pad_and_project(const HarmonicBasis& earlier,
                                const HarmonicBasis& later) {
    if (earlier.k != later.k)
        fail(ErrorCode::InvalidArgument, "form degree mismatch in transfer");
    const Eigen::MatrixXd padded =
        pad_vectors(earlier, later.dof_ambient, later.vectors.rows());
    return later.vectors.transpose() * padded;
}

double padding_closedness(const HarmonicBasis& earlier, const HarmonicBasis& later,
                          const SparseD& later_dbar_n) {
    if (earlier.k >= 3) return 0.0; // 3-forms have no differential
    if (later_dbar_n.cols() != later.vectors.rows())
        fail(ErrorCode::Internal, "operator/basis DOF mismatch in closedness check");
    const Eigen::MatrixXd padded =
        pad_vectors(earlier, later.dof_ambient, later.vectors.rows());
    double worst = 0.0;
    for (Eigen::Index c = 0; c < padded.cols(); ++c)
        worst = std::max(worst, (later_dbar_n * padded.col(c)).norm());
    return worst;
}

PersistencePairing pair_generators(const std::vector<HarmonicBasis>& chain,
                                   int homology_dim, int id_offset) {
    PersistencePairing out;
    if (chain.empty()) return out;

    struct Alive {
        int gen;             // index into out.generators
        Eigen::VectorXd coeff; // representative in the current basis
    };
    std::vector<Alive> alive;
    int next_id = id_offset;

    auto give_birth = [&](std::size_t row, const Eigen::MatrixXd& directions) {
        for (Eigen::Index c = 0; c < directions.cols(); ++c) {
            Generator g;
            g.homology_dim = homology_dim;
            g.id = next_id++;
            g.birth_row = row;
            out.generators.push_back(g);
            alive.push_back({static_cast<int>(out.generators.size() - 1),
                             directions.col(c)});
        }
    };

    // Row 0: every harmonic vector is born.
    {
        const Eigen::Index d0 = chain[0].dim();
        give_birth(0, Eigen::MatrixXd::Identity(d0, d0));
    }

    for (std::size_t l = 0; l + 1 < chain.size(); ++l) {
        const Eigen::MatrixXd psi = pad_and_project(chain[l], chain[l + 1]);
        out.transfers.push_back(psi);
        if (psi.size() > 0) {
            Eigen::JacobiSVD<Eigen::MatrixXd> svd(psi);
            for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
                const double s = svd.singularValues()(i);
                if (s >= kAmbLow && s < kDeathTol) out.ambiguous = true;
            }
        }

        const Eigen::Index dim_next = chain[l + 1].dim();
        // Elder rule: transfer representatives in seniority order; a
        // generator whose image falls inside the span of its elders dies.
        std::vector<Alive> next_alive;
        Eigen::MatrixXd accepted(dim_next, 0);
        for (const Alive& a : alive) {
            Eigen::VectorXd y = psi * a.coeff;
            Eigen::VectorXd r = y;
            if (accepted.cols() > 0) r -= accepted * (accepted.transpose() * y).eval();
            if (r.norm() <= kDeathTol) {
                out.generators[static_cast<std::size_t>(a.gen)].death_row = l + 1;
                continue;
            }
            accepted.conservativeResize(dim_next, accepted.cols() + 1);
            accepted.col(accepted.cols() - 1) = r.normalized();
            next_alive.push_back({a.gen, y.normalized()});
        }
        // Births: directions of the next harmonic space outside the image.
        const Eigen::Index births = dim_next - accepted.cols();
        alive.swap(next_alive);
        if (births > 0) {
            Eigen::MatrixXd fresh(dim_next, births);
            Eigen::Index found = 0;
            // Orthonormal complement of `accepted`, deterministic via SVD.
            if (accepted.cols() == 0) {
                fresh = Eigen::MatrixXd::Identity(dim_next, births);
                found = births;
            } else {
                Eigen::BDCSVD<Eigen::MatrixXd> svd(accepted, Eigen::ComputeFullU);
                fresh = svd.matrixU().rightCols(births);
                found = births;
            }
            (void)found;
            give_birth(l + 1, fresh);
        }
    }
    return out;
}

} // namespace evodrh
