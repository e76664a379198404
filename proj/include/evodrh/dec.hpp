#pragma once

#include <Eigen/Sparse>

#include <string>
#include <vector>

#include "evodrh/mesh.hpp"

namespace evodrh {

using SparseI = Eigen::SparseMatrix<std::int64_t>;
using SparseD = Eigen::SparseMatrix<double>;

enum class BoundaryCondition { Tangential, Normal };

/// Signed incidence matrices over the snapshot's local indices.
/// Simplices are oriented by ascending vertex id; the sign of an entry is the
/// parity of the face within the boundary expansion of the sorted tuple.
struct IncidenceMatrices {
    SparseI D0; // edges x vertices, two entries per row
    SparseI D1; // triangles x edges, three per row
    SparseI D2; // tets x triangles, four per row
};

IncidenceMatrices assemble_incidence(const AmbientMesh& mesh,
                                     const SnapshotComplex& snap);

/// Diagonal circumcentric Hodge stars over local indices:
/// entry(sigma) = |dual cell of sigma within the complex| / |sigma|.
struct HodgeStars {
    Eigen::VectorXd s0, s1, s2, s3;
    std::size_t clipped = 0; // diagnostics: nonpositive entries raised to the floor
};

HodgeStars assemble_stars(const AmbientMesh& mesh, const SnapshotComplex& snap);

/// D_k restricted by the boundary condition. Tangential keeps everything;
/// Normal deletes the rows/columns of boundary simplices (relative cochains).
/// row_ids / col_ids are the retained local simplex indices.
struct RestrictedOperator {
    SparseI D;
    int k = 0;
    BoundaryCondition bc = BoundaryCondition::Tangential;
    std::vector<Index> row_ids;
    std::vector<Index> col_ids;
};

RestrictedOperator restrict_operator(const IncidenceMatrices& incidence,
                                     const SnapshotComplex& snap,
                                     BoundaryCondition bc, int k);

/// Dbar_k = S_{k+1}^(1/2) D_k S_k^(-1/2) over the same retained subsets.
struct NormalizedOperator {
    SparseD Dbar;
    int k = 0;
    BoundaryCondition bc = BoundaryCondition::Tangential;
    std::vector<Index> row_ids;
    std::vector<Index> col_ids;

    Eigen::Index rows() const { return Dbar.rows(); }
    Eigen::Index cols() const { return Dbar.cols(); }
};

NormalizedOperator normalize_operator(const RestrictedOperator& restricted,
                                      const HodgeStars& stars);

/// All six operators of one snapshot (k = 0,1,2 for both conditions), plus
/// the stars; the unit every spectra/persistence computation consumes.
struct DecOperators {
    IncidenceMatrices incidence;
    HodgeStars stars;
    NormalizedOperator tangential[3];
    NormalizedOperator normal[3];
};

DecOperators assemble_dec(const AmbientMesh& mesh, const SnapshotComplex& snap);

/// Matrix Market coordinate format (debug export).
void write_matrix_market(const std::string& path, const SparseD& m);
void write_matrix_market(const std::string& path, const SparseI& m);

} // namespace evodrh
