#include "evodrh/homology.hpp"

#include <algorithm>
#include <numeric>

namespace evodrh {

std::int64_t gf2_rank(std::vector<std::vector<Index>>& columns) {
    Index max_row = -1;
    for (const auto& col : columns)
        for (Index r : col) max_row = std::max(max_row, r);
    std::vector<std::int64_t> owner(static_cast<std::size_t>(max_row + 1), -1);

    std::int64_t rank = 0;
    std::vector<Index> tmp;
    for (std::size_t j = 0; j < columns.size(); ++j) {
        auto& col = columns[j];
        while (!col.empty()) {
            const Index low = col.back();
            const std::int64_t other = owner[static_cast<std::size_t>(low)];
            if (other < 0) {
                owner[static_cast<std::size_t>(low)] = static_cast<std::int64_t>(j);
                ++rank;
                break;
            }
            // col ^= columns[other] (symmetric difference of sorted lists)
            const auto& o = columns[static_cast<std::size_t>(other)];
            tmp.clear();
            std::set_symmetric_difference(col.begin(), col.end(), o.begin(), o.end(),
                                          std::back_inserter(tmp));
            col.swap(tmp);
        }
    }
    return rank;
}

namespace {

struct UnionFind {
    std::vector<Index> parent;
    explicit UnionFind(std::size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    Index find(Index x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    }
    void unite(Index a, Index b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    }
};

BettiTriple betti_gf2(const AmbientMesh& mesh, const SnapshotComplex& snap) {
    BettiTriple out;
    out.engine = OracleEngine::Gf2;
    const std::int64_t V = static_cast<std::int64_t>(snap.verts.size());
    const std::int64_t E = static_cast<std::int64_t>(snap.edges.size());
    const std::int64_t F = static_cast<std::int64_t>(snap.tris.size());
    const std::int64_t T = static_cast<std::int64_t>(snap.tets.size());

    {
        std::vector<std::vector<Index>> cols(snap.edges.size());
        for (std::size_t le = 0; le < snap.edges.size(); ++le) {
            const auto& e = mesh.edges[static_cast<std::size_t>(snap.edges[le])];
            cols[le] = {snap.vert_local[static_cast<std::size_t>(e[0])],
                        snap.vert_local[static_cast<std::size_t>(e[1])]};
            std::sort(cols[le].begin(), cols[le].end());
        }
        out.ranks[0] = gf2_rank(cols);
    }
    {
        std::vector<std::vector<Index>> cols(snap.tris.size());
        for (std::size_t lf = 0; lf < snap.tris.size(); ++lf) {
            const auto& es = mesh.tri_edges[static_cast<std::size_t>(snap.tris[lf])];
            cols[lf] = {snap.edge_local[static_cast<std::size_t>(es[0])],
                        snap.edge_local[static_cast<std::size_t>(es[1])],
                        snap.edge_local[static_cast<std::size_t>(es[2])]};
            std::sort(cols[lf].begin(), cols[lf].end());
        }
        out.ranks[1] = gf2_rank(cols);
    }
    {
        std::vector<std::vector<Index>> cols(snap.tets.size());
        for (std::size_t lt = 0; lt < snap.tets.size(); ++lt) {
            const auto& fs = mesh.tet_faces[static_cast<std::size_t>(snap.tets[lt])];
            cols[lt] = {snap.tri_local[static_cast<std::size_t>(fs[0])],
                        snap.tri_local[static_cast<std::size_t>(fs[1])],
                        snap.tri_local[static_cast<std::size_t>(fs[2])],
                        snap.tri_local[static_cast<std::size_t>(fs[3])]};
            std::sort(cols[lt].begin(), cols[lt].end());
        }
        out.ranks[2] = gf2_rank(cols);
    }

    out.beta[0] = V - out.ranks[0];
    out.beta[1] = E - out.ranks[0] - out.ranks[1];
    out.beta[2] = F - out.ranks[1] - out.ranks[2];
    const std::int64_t beta3 = T - out.ranks[2];
    if (beta3 != 0)
        fail(ErrorCode::Internal, "oracle found a 3-cycle in an embedded complex");
    return out;
}

BettiTriple betti_unionfind(const AmbientMesh& mesh, const SnapshotComplex& snap) {
    BettiTriple out;
    out.engine = OracleEngine::UnionFind;

    // beta0: components of the 1-skeleton.
    {
        UnionFind uf(snap.verts.size());
        for (Index e : snap.edges) {
            const auto& ev = mesh.edges[static_cast<std::size_t>(e)];
            uf.unite(snap.vert_local[static_cast<std::size_t>(ev[0])],
                     snap.vert_local[static_cast<std::size_t>(ev[1])]);
        }
        std::int64_t comps = 0;
        for (std::size_t v = 0; v < snap.verts.size(); ++v)
            if (uf.find(static_cast<Index>(v)) == static_cast<Index>(v)) ++comps;
        out.beta[0] = comps;
    }

    // beta2 by Alexander duality: bounded components of the complement.
    // The complement is modelled by unkept tets (glued across shared
    // triangles), one gap node per live cell with a missing neighbor (the
    // uncovered half-diamonds of lattice builds), and one node per region of
    // dropped cells; anything reaching past the box drains to an outside
    // node. Synthetic meshes have no cell info and fall back to treating
    // open triangles as the outside wall.
    {
        const std::size_t nt = mesh.tet_count();
        std::vector<Index> unkept_local(nt, -1);
        std::vector<Index> unkept;
        for (std::size_t t = 0; t < nt; ++t)
            if (!snap.keep_tet[t]) {
                unkept_local[t] = static_cast<Index>(unkept.size());
                unkept.push_back(static_cast<Index>(t));
            }
        const std::size_t U = unkept.size();
        const bool lattice = !mesh.cell_live.empty();

        const std::int64_t cx = mesh.cell_dims[0], cy = mesh.cell_dims[1],
                           cz = mesh.cell_dims[2];
        const std::size_t n_cells = lattice ? mesh.cell_live.size() : 0;

        // Gap nodes: live cells with at least one dropped or out-of-range
        // neighbor. Dropped cells union into regions first.
        std::vector<Index> gap_id(n_cells, -1);
        std::vector<Index> drop_id(n_cells, -1);
        std::size_t n_gaps = 0, n_drops = 0;
        UnionFind drops(0);
        std::vector<std::uint8_t> drop_outside;
        if (lattice) {
            for (std::size_t c = 0; c < n_cells; ++c)
                if (!mesh.cell_live[c]) drop_id[c] = static_cast<Index>(n_drops++);
            drops = UnionFind(n_drops);
            drop_outside.assign(n_drops, 0);
            auto cell_index = [&](std::int64_t i, std::int64_t j, std::int64_t k) {
                return static_cast<std::size_t>(i + cx * (j + cy * k));
            };
            for (std::int64_t k = 0; k < cz; ++k)
                for (std::int64_t j = 0; j < cy; ++j)
                    for (std::int64_t i = 0; i < cx; ++i) {
                        const std::size_t c = cell_index(i, j, k);
                        if (mesh.cell_live[c]) {
                            bool open = i == 0 || j == 0 || k == 0 || i == cx - 1 ||
                                        j == cy - 1 || k == cz - 1;
                            for (int a = 0; a < 6 && !open; ++a) {
                                static const int d[6][3] = {{1, 0, 0},  {-1, 0, 0},
                                                            {0, 1, 0},  {0, -1, 0},
                                                            {0, 0, 1},  {0, 0, -1}};
                                const std::int64_t ni = i + d[a][0], nj = j + d[a][1],
                                                   nk = k + d[a][2];
                                open = !mesh.cell_live[cell_index(ni, nj, nk)];
                            }
                            if (open) gap_id[c] = static_cast<Index>(n_gaps++);
                            continue;
                        }
                        // dropped: union with dropped face neighbors; the box
                        // layer is open to infinity.
                        if (i == 0 || j == 0 || k == 0 || i == cx - 1 || j == cy - 1 ||
                            k == cz - 1)
                            drop_outside[static_cast<std::size_t>(drop_id[c])] = 1;
                        if (i + 1 < cx && !mesh.cell_live[cell_index(i + 1, j, k)])
                            drops.unite(drop_id[c], drop_id[cell_index(i + 1, j, k)]);
                        if (j + 1 < cy && !mesh.cell_live[cell_index(i, j + 1, k)])
                            drops.unite(drop_id[c], drop_id[cell_index(i, j + 1, k)]);
                        if (k + 1 < cz && !mesh.cell_live[cell_index(i, j, k + 1)])
                            drops.unite(drop_id[c], drop_id[cell_index(i, j, k + 1)]);
                    }
        }

        // Combined union-find: [unkept tets][gaps][drop regions][outside].
        UnionFind uf(U + n_gaps + n_drops + 1);
        const Index outside = static_cast<Index>(U + n_gaps + n_drops);
        auto gap_node = [&](std::size_t cell) {
            return static_cast<Index>(U + static_cast<std::size_t>(gap_id[cell]));
        };
        auto drop_node = [&](std::size_t cell) {
            return static_cast<Index>(U + n_gaps +
                                      static_cast<std::size_t>(
                                          drops.find(drop_id[cell])));
        };

        if (lattice) {
            auto cell_index = [&](std::int64_t i, std::int64_t j, std::int64_t k) {
                return static_cast<std::size_t>(i + cx * (j + cy * k));
            };
            // Collapse dropped cells onto their region roots so each region
            // is a single node of the combined structure.
            for (std::size_t r = 0; r < n_drops; ++r)
                uf.unite(static_cast<Index>(U + n_gaps + r),
                         static_cast<Index>(U + n_gaps +
                                            static_cast<std::size_t>(
                                                drops.find(static_cast<Index>(r)))));
            for (std::size_t r = 0; r < n_drops; ++r)
                if (drop_outside[r])
                    uf.unite(static_cast<Index>(U + n_gaps +
                                                static_cast<std::size_t>(
                                                    drops.find(static_cast<Index>(r)))),
                             outside);
            for (std::int64_t k = 0; k < cz; ++k)
                for (std::int64_t j = 0; j < cy; ++j)
                    for (std::int64_t i = 0; i < cx; ++i) {
                        const std::size_t c = cell_index(i, j, k);
                        if (gap_id[c] < 0) continue;
                        if (i == 0 || j == 0 || k == 0 || i == cx - 1 || j == cy - 1 ||
                            k == cz - 1)
                            uf.unite(gap_node(c), outside);
                        static const int d[6][3] = {{1, 0, 0},  {-1, 0, 0}, {0, 1, 0},
                                                    {0, -1, 0}, {0, 0, 1},  {0, 0, -1}};
                        for (const auto& dd : d) {
                            const std::int64_t ni = i + dd[0], nj = j + dd[1],
                                               nk = k + dd[2];
                            if (ni < 0 || nj < 0 || nk < 0 || ni >= cx || nj >= cy ||
                                nk >= cz)
                                continue;
                            const std::size_t nc = cell_index(ni, nj, nk);
                            if (!mesh.cell_live[nc]) uf.unite(gap_node(c), drop_node(nc));
                            else if (gap_id[nc] >= 0) uf.unite(gap_node(c), gap_node(nc));
                        }
                    }
        }

        // Unkept tets glue across shared (automatically unkept) triangles;
        // open triangles glue to the cell gap (lattice) or outside (synthetic).
        for (std::size_t f = 0; f < mesh.triangles.size(); ++f) {
            const auto& inc = mesh.tri_tets[f];
            if (inc[0] >= 0 && inc[1] >= 0) {
                if (!snap.keep_tet[static_cast<std::size_t>(inc[0])] &&
                    !snap.keep_tet[static_cast<std::size_t>(inc[1])])
                    uf.unite(unkept_local[static_cast<std::size_t>(inc[0])],
                             unkept_local[static_cast<std::size_t>(inc[1])]);
                continue;
            }
            const Index t = inc[0] >= 0 ? inc[0] : inc[1];
            if (t < 0 || snap.keep_tet[static_cast<std::size_t>(t)]) continue;
            const Index local = unkept_local[static_cast<std::size_t>(t)];
            if (!lattice) {
                uf.unite(local, outside);
                continue;
            }
            // The open triangle carries the center vertex of the cell whose
            // uncovered space it borders.
            for (Index v : mesh.triangles[f]) {
                const Index cell = mesh.vertex_cell[static_cast<std::size_t>(v)];
                if (cell < 0) continue;
                const std::size_t c = static_cast<std::size_t>(cell);
                if (gap_id[c] >= 0) uf.unite(local, gap_node(c));
                else uf.unite(local, outside); // open face with no gap record
            }
        }

        std::int64_t cavities = 0;
        const Index outside_root = uf.find(outside);
        for (std::size_t i = 0; i < U + n_gaps + n_drops; ++i)
            if (uf.find(static_cast<Index>(i)) == static_cast<Index>(i) &&
                static_cast<Index>(i) != outside_root)
                ++cavities;
        out.beta[2] = cavities;
    }

    out.beta[1] = out.beta[0] + out.beta[2] - snap.euler_characteristic();
    if (out.beta[1] < 0)
        fail(ErrorCode::Internal, "union-find oracle produced negative beta1");
    return out;
}

} // namespace

BettiTriple oracle_betti(const AmbientMesh& mesh, const SnapshotComplex& snap,
                         OracleEngine engine, std::size_t gf2_limit) {
    if (snap.empty()) {
        BettiTriple out;
        out.engine = engine == OracleEngine::UnionFind ? OracleEngine::UnionFind
                                                       : OracleEngine::Gf2;
        return out;
    }
    if (engine == OracleEngine::Auto)
        engine = snap.tris.size() <= gf2_limit ? OracleEngine::Gf2
                                               : OracleEngine::UnionFind;
    return engine == OracleEngine::Gf2 ? betti_gf2(mesh, snap)
                                       : betti_unionfind(mesh, snap);
}

} // namespace evodrh
