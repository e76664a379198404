#pragma once

#include <array>
#include <cstdint>

#include "evodrh/mesh.hpp"

namespace evodrh {

enum class OracleEngine {
    Gf2,       // boundary-matrix ranks over GF(2)
    UnionFind, // component counts + Alexander duality + Euler
    Auto,      // Gf2 below a size threshold, UnionFind above
};

struct BettiTriple {
    std::array<std::int64_t, 3> beta{};
    std::array<std::int64_t, 3> ranks{}; // rank d1, rank d2, rank d3 (Gf2 engine)
    OracleEngine engine = OracleEngine::Gf2;
};

/// Simplicial homology of the snapshot, computed independently of the DEC
/// operator path. The GF(2) engine builds its own boundary columns straight
/// from the mesh tables and reduces them; the union-find engine counts tet
/// components, counts enclosed complement components (cavities), and closes
/// beta_1 with the Euler characteristic. Both are exact for complexes
/// embedded in flat 3-space.
BettiTriple oracle_betti(const AmbientMesh& mesh, const SnapshotComplex& snap,
                         OracleEngine engine = OracleEngine::Auto,
                         std::size_t gf2_limit = 400000);

/// Rank of a sparse GF(2) matrix given as per-column sorted row-index lists.
/// Exposed for tests; columns are consumed.
std::int64_t gf2_rank(std::vector<std::vector<Index>>& columns);

} // namespace evodrh
