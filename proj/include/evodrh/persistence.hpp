#pragma once

#include <limits>
#include <vector>

#include "evodrh/homology.hpp"
#include "evodrh/spectra.hpp"

namespace evodrh {

/// Orthonormal basis (normalized coordinates) of the kernel of the normal
/// Hodge Laplacian Lbar_{k,n}, keyed by the ambient ids of the interior
/// k-simplices so vectors can be zero-padded onto any nested snapshot.
struct HarmonicBasis {
    int k = 0;
    std::vector<Index> dof_ambient; // ambient id per row, ascending
    Eigen::MatrixXd vectors;        // one orthonormal column per harmonic form

    Eigen::Index dim() const { return vectors.cols(); }
};

/// Kernel of Lbar_{k,n}; its dimension equals beta_{3-k}. `expected_dim`
/// (usually the oracle count) sizes the solver window; a disagreement
/// between the computed kernel and `expected_dim` throws OracleMismatch.
HarmonicBasis harmonic_basis(const AmbientMesh& mesh, const SnapshotComplex& snap,
                             const DecOperators& ops, int k,
                             const SpectraParams& params,
                             std::int64_t expected_dim = -1);

/// Transfer matrix Psi: zero-pad the earlier basis onto the later snapshot's
/// interior DOFs and project onto the later harmonic space. Entry (j, i) is
/// the coefficient of later basis vector j in the projection of earlier
/// vector i. Interior simplices stay interior under nesting, so padding is a
/// scatter by ambient id.
Eigen::MatrixXd pad_and_project(const HarmonicBasis& earlier,
                                const HarmonicBasis& later);

/// Max norm of the later snapshot's Dbar_{k,n} applied to the padded vectors
/// (closedness check; pass the later normal differential of degree earlier.k).
double padding_closedness(const HarmonicBasis& earlier, const HarmonicBasis& later,
                          const SparseD& later_dbar_n);

struct Generator {
    int homology_dim = 0; // 3 - k
    int id = 0;
    std::size_t birth_row = 0;
    std::size_t death_row = std::numeric_limits<std::size_t>::max(); // max = alive
    bool alive() const { return death_row == std::numeric_limits<std::size_t>::max(); }
};

struct PersistencePairing {
    std::vector<Generator> generators;
    std::vector<Eigen::MatrixXd> transfers; // Psi per consecutive snapshot pair
    bool ambiguous = false;                 // some sigma(Psi) in [1e-8, 1e-6)
};

/// Fold a chain of harmonic bases (one form degree) into birth/death pairs.
/// Survivors are matched in seniority order (elder rule): a generator dies
/// when its transferred representative is absorbed by the span of more
/// senior survivors; births fill the cokernel.
PersistencePairing pair_generators(const std::vector<HarmonicBasis>& chain,
                                   int homology_dim, int id_offset = 0);

} // namespace evodrh
