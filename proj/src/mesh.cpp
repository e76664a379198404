#include "evodrh/mesh.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <numeric>

namespace evodrh {

namespace {

inline Vec3 sub(const Vec3& a, const Vec3& b) {
    return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}
inline double dot(const Vec3& a, const Vec3& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0]};
}

double signed_volume(const Vec3& p0, const Vec3& p1, const Vec3& p2, const Vec3& p3) {
    return dot(sub(p1, p0), cross(sub(p2, p0), sub(p3, p0))) / 6.0;
}

Vec3 circumcenter3(const Vec3& p0, const Vec3& p1, const Vec3& p2, const Vec3& p3) {
    Eigen::Matrix3d A;
    Eigen::Vector3d b;
    const Vec3 rows[3] = {sub(p1, p0), sub(p2, p0), sub(p3, p0)};
    for (int r = 0; r < 3; ++r) {
        A(r, 0) = rows[r][0];
        A(r, 1) = rows[r][1];
        A(r, 2) = rows[r][2];
        b(r) = 0.5 * dot(rows[r], rows[r]);
    }
    Eigen::Vector3d x = A.colPivHouseholderQr().solve(b);
    return {p0[0] + x(0), p0[1] + x(1), p0[2] + x(2)};
}

} // namespace

double AmbientMesh::tet_volume(Index t) const {
    const auto& T = tets[static_cast<std::size_t>(t)];
    return signed_volume(vertices[T[0]], vertices[T[1]], vertices[T[2]], vertices[T[3]]);
}

Vec3 AmbientMesh::tet_circumcenter(Index t) const {
    const auto& T = tets[static_cast<std::size_t>(t)];
    return circumcenter3(vertices[T[0]], vertices[T[1]], vertices[T[2]], vertices[T[3]]);
}

AmbientMesh AmbientMesh::from_tets(std::vector<Vec3> vertices,
                                   std::vector<std::array<Index, 4>> tets) {
    AmbientMesh mesh;
    mesh.vertices = std::move(vertices);
    mesh.tets = std::move(tets);

    // Canonical storage: ascending ids, then swap the last two if the signed
    // volume of the sorted order is negative.
    for (auto& T : mesh.tets) {
        std::sort(T.begin(), T.end());
        if (T[0] < 0 || T[3] >= static_cast<Index>(mesh.vertices.size()))
            fail(ErrorCode::InvalidArgument, "tet vertex id out of range");
        if (T[0] == T[1] || T[1] == T[2] || T[2] == T[3])
            fail(ErrorCode::InvalidArgument, "degenerate tet (repeated vertex)");
        const double vol = signed_volume(mesh.vertices[T[0]], mesh.vertices[T[1]],
                                         mesh.vertices[T[2]], mesh.vertices[T[3]]);
        if (vol == 0.0) fail(ErrorCode::InvalidArgument, "zero-volume tet");
        if (vol < 0.0) std::swap(T[2], T[3]);
    }

    const std::size_t nt = mesh.tets.size();

    // Triangles: sorted faces of each tet, deduplicated lexicographically.
    {
        struct FaceRef {
            std::array<Index, 3> key;
            Index tet;
            std::int8_t slot;
        };
        std::vector<FaceRef> refs;
        refs.reserve(nt * 4);
        for (std::size_t t = 0; t < nt; ++t) {
            std::array<Index, 4> s = mesh.tets[t];
            std::sort(s.begin(), s.end());
            const std::array<std::array<Index, 3>, 4> faces = {{
                {s[1], s[2], s[3]},
                {s[0], s[2], s[3]},
                {s[0], s[1], s[3]},
                {s[0], s[1], s[2]},
            }};
            for (int f = 0; f < 4; ++f)
                refs.push_back({faces[static_cast<std::size_t>(f)],
                                static_cast<Index>(t), static_cast<std::int8_t>(f)});
        }
        std::sort(refs.begin(), refs.end(), [](const FaceRef& a, const FaceRef& b) {
            if (a.key != b.key) return a.key < b.key;
            return a.tet < b.tet;
        });
        mesh.tet_faces.assign(nt, {-1, -1, -1, -1});
        for (std::size_t i = 0; i < refs.size();) {
            std::size_t j = i;
            while (j < refs.size() && refs[j].key == refs[i].key) ++j;
            if (j - i > 2)
                fail(ErrorCode::InvalidArgument,
                     "non-manifold input: triangle shared by more than two tets");
            const Index tri = static_cast<Index>(mesh.triangles.size());
            mesh.triangles.push_back(refs[i].key);
            std::array<Index, 2> inc = {-1, -1};
            for (std::size_t k = i; k < j; ++k) {
                inc[k - i] = refs[k].tet;
                mesh.tet_faces[static_cast<std::size_t>(refs[k].tet)]
                              [static_cast<std::size_t>(refs[k].slot)] = tri;
            }
            mesh.tri_tets.push_back(inc);
            i = j;
        }
    }

    // Edges from triangles, plus the edge -> triangle CSR table.
    {
        struct EdgeRef {
            std::array<Index, 2> key;
            Index tri;
            std::int8_t slot;
        };
        std::vector<EdgeRef> refs;
        refs.reserve(mesh.triangles.size() * 3);
        for (std::size_t f = 0; f < mesh.triangles.size(); ++f) {
            const auto& tri = mesh.triangles[f];
            const std::array<std::array<Index, 2>, 3> es = {{
                {tri[1], tri[2]},
                {tri[0], tri[2]},
                {tri[0], tri[1]},
            }};
            for (int e = 0; e < 3; ++e)
                refs.push_back({es[static_cast<std::size_t>(e)], static_cast<Index>(f),
                                static_cast<std::int8_t>(e)});
        }
        std::sort(refs.begin(), refs.end(), [](const EdgeRef& a, const EdgeRef& b) {
            if (a.key != b.key) return a.key < b.key;
            return a.tri < b.tri;
        });
        mesh.tri_edges.assign(mesh.triangles.size(), {-1, -1, -1});
        for (std::size_t i = 0; i < refs.size();) {
            std::size_t j = i;
            while (j < refs.size() && refs[j].key == refs[i].key) ++j;
            const Index e = static_cast<Index>(mesh.edges.size());
            mesh.edges.push_back(refs[i].key);
            for (std::size_t k = i; k < j; ++k)
                mesh.tri_edges[static_cast<std::size_t>(refs[k].tri)]
                              [static_cast<std::size_t>(refs[k].slot)] = e;
            i = j;
        }
    }

    return mesh;
}

std::size_t AmbientMesh::well_centered_violations(std::size_t max_checked) const {
    std::size_t bad = 0;
    const std::size_t nt = std::min(max_checked, tets.size());
    for (std::size_t t = 0; t < nt; ++t) {
        const auto& T = tets[t];
        const Vec3 cc = circumcenter3(vertices[T[0]], vertices[T[1]], vertices[T[2]],
                                      vertices[T[3]]);
        // The circumcenter must lie on the same side of every face as the
        // opposite vertex (closure of the tet, up to roundoff).
        const std::array<std::array<int, 4>, 4> faces = {
            {{1, 2, 3, 0}, {0, 2, 3, 1}, {0, 1, 3, 2}, {0, 1, 2, 3}}};
        for (const auto& f : faces) {
            const Vec3 &p0 = vertices[T[static_cast<std::size_t>(f[0])]],
                       &p1 = vertices[T[static_cast<std::size_t>(f[1])]],
                       &p2 = vertices[T[static_cast<std::size_t>(f[2])]],
                       &po = vertices[T[static_cast<std::size_t>(f[3])]];
            const double s_opp = signed_volume(p0, p1, p2, po);
            const double s_cc = signed_volume(p0, p1, p2, cc);
            if (s_cc * (s_opp >= 0.0 ? 1.0 : -1.0) < -1e-9 * std::abs(s_opp)) {
                ++bad;
                break;
            }
        }
    }
    // Triangle circumcenters must stay inside their triangles as well.
    const std::size_t nf = std::min(max_checked, triangles.size());
    for (std::size_t f = 0; f < nf; ++f) {
        const auto& tri = triangles[f];
        const Vec3 &a = vertices[tri[0]], &b = vertices[tri[1]], &c = vertices[tri[2]];
        const Vec3 ab = sub(b, a), ac = sub(c, a);
        const double d00 = dot(ab, ab), d01 = dot(ab, ac), d11 = dot(ac, ac);
        const double det = d00 * d11 - d01 * d01;
        // Circumcenter barycentric coordinates within the plane of (a,b,c).
        const double u = 0.5 * (d11 * d00 - d01 * d11) / det;
        const double v = 0.5 * (d00 * d11 - d01 * d00) / det;
        if (u < -1e-9 || v < -1e-9 || u + v > 1.0 + 1e-9) ++bad;
    }
    return bad;
}

AmbientMesh build_ambient(const DensityField& field, double min_density) {
    for (int a = 0; a < 3; ++a)
        if (field.dims[a] < 2)
            fail(ErrorCode::InvalidArgument, "field dims must be >= 2 per axis");

    const std::int64_t nx = field.dims[0], ny = field.dims[1], nz = field.dims[2];
    const std::int64_t cx = nx - 1, cy = ny - 1, cz = nz - 1;
    const std::int64_t n_nodes = nx * ny * nz;
    const std::int64_t n_cells = cx * cy * cz;

    // A cell is live when any corner reaches min_density: a tet between two
    // cells needs both center values (corner averages) above the snapshot
    // threshold, so dropped cells can never host kept simplices.
    std::vector<std::uint8_t> live(static_cast<std::size_t>(n_cells), 1);
    if (min_density > 0.0) {
        for (std::int64_t k = 0; k < cz; ++k)
            for (std::int64_t j = 0; j < cy; ++j)
                for (std::int64_t i = 0; i < cx; ++i) {
                    bool any = false;
                    for (int dk = 0; dk <= 1 && !any; ++dk)
                        for (int dj = 0; dj <= 1 && !any; ++dj)
                            for (int di = 0; di <= 1 && !any; ++di)
                                any = field.at(i + di, j + dj, k + dk) >= min_density;
                    live[static_cast<std::size_t>(i + cx * (j + cy * k))] = any;
                }
    }

    // Compact vertex numbering: lattice nodes used by a live cell, then one
    // center per live cell.
    std::vector<Index> node_map(static_cast<std::size_t>(n_nodes), -1);
    std::vector<Index> cell_map(static_cast<std::size_t>(n_cells), -1);
    std::vector<Vec3> verts;
    std::vector<double> density;
    std::vector<Index> vertex_cell;
    std::vector<std::uint8_t> box_vertex;
    auto cell_at = [&](std::int64_t i, std::int64_t j, std::int64_t k) {
        return live[static_cast<std::size_t>(i + cx * (j + cy * k))];
    };
    for (std::int64_t k = 0; k < nz; ++k)
        for (std::int64_t j = 0; j < ny; ++j)
            for (std::int64_t i = 0; i < nx; ++i) {
                bool used = false;
                for (int dk = -1; dk <= 0 && !used; ++dk)
                    for (int dj = -1; dj <= 0 && !used; ++dj)
                        for (int di = -1; di <= 0 && !used; ++di) {
                            const std::int64_t ci = i + di, cj = j + dj, ck = k + dk;
                            if (ci < 0 || cj < 0 || ck < 0 || ci >= cx || cj >= cy ||
                                ck >= cz)
                                continue;
                            used = cell_at(ci, cj, ck);
                        }
                if (!used) continue;
                node_map[static_cast<std::size_t>(field.index(i, j, k))] =
                    static_cast<Index>(verts.size());
                verts.push_back(field.node_position(i, j, k));
                density.push_back(field.at(i, j, k));
                vertex_cell.push_back(-1);
                box_vertex.push_back(i == 0 || j == 0 || k == 0 || i == nx - 1 ||
                                     j == ny - 1 || k == nz - 1);
            }
    const double h = field.spacing;
    for (std::int64_t k = 0; k < cz; ++k)
        for (std::int64_t j = 0; j < cy; ++j)
            for (std::int64_t i = 0; i < cx; ++i) {
                const std::int64_t c = i + cx * (j + cy * k);
                if (!live[static_cast<std::size_t>(c)]) continue;
                cell_map[static_cast<std::size_t>(c)] = static_cast<Index>(verts.size());
                verts.push_back({field.origin[0] + h * (static_cast<double>(i) + 0.5),
                                 field.origin[1] + h * (static_cast<double>(j) + 0.5),
                                 field.origin[2] + h * (static_cast<double>(k) + 0.5)});
                double sum = 0.0;
                for (int dk = 0; dk <= 1; ++dk)
                    for (int dj = 0; dj <= 1; ++dj)
                        for (int di = 0; di <= 1; ++di)
                            sum += field.at(i + di, j + dj, k + dk);
                density.push_back(sum / 8.0);
                vertex_cell.push_back(static_cast<Index>(c));
                box_vertex.push_back(0);
            }
    if (static_cast<std::int64_t>(verts.size()) > (std::int64_t{1} << 31) - 2)
        fail(ErrorCode::Resource, "mesh vertex count exceeds index range");

    // Four tets per shared face of two live cells: the centers joined with
    // each edge of the lattice face between them.
    std::vector<std::array<Index, 4>> tets;
    auto node_id = [&](std::int64_t i, std::int64_t j, std::int64_t k) {
        return node_map[static_cast<std::size_t>(field.index(i, j, k))];
    };
    auto emit_face = [&](Index c1, Index c2, Index q00, Index q10, Index q11,
                         Index q01) {
        tets.push_back({c1, c2, q00, q10});
        tets.push_back({c1, c2, q10, q11});
        tets.push_back({c1, c2, q11, q01});
        tets.push_back({c1, c2, q01, q00});
    };
    for (std::int64_t k = 0; k < cz; ++k)
        for (std::int64_t j = 0; j < cy; ++j)
            for (std::int64_t i = 0; i < cx; ++i) {
                const std::int64_t c = i + cx * (j + cy * k);
                if (!live[static_cast<std::size_t>(c)]) continue;
                const Index cv = cell_map[static_cast<std::size_t>(c)];
                if (i + 1 < cx && cell_at(i + 1, j, k))
                    emit_face(cv, cell_map[static_cast<std::size_t>(c + 1)],
                              node_id(i + 1, j, k), node_id(i + 1, j + 1, k),
                              node_id(i + 1, j + 1, k + 1), node_id(i + 1, j, k + 1));
                if (j + 1 < cy && cell_at(i, j + 1, k))
                    emit_face(cv, cell_map[static_cast<std::size_t>(c + cx)],
                              node_id(i, j + 1, k), node_id(i + 1, j + 1, k),
                              node_id(i + 1, j + 1, k + 1), node_id(i, j + 1, k + 1));
                if (k + 1 < cz && cell_at(i, j, k + 1))
                    emit_face(cv, cell_map[static_cast<std::size_t>(c + cx * cy)],
                              node_id(i, j, k + 1), node_id(i + 1, j, k + 1),
                              node_id(i + 1, j + 1, k + 1), node_id(i, j + 1, k + 1));
            }

    AmbientMesh mesh = AmbientMesh::from_tets(std::move(verts), std::move(tets));
    mesh.vertex_density = std::move(density);
    mesh.vertex_cell = std::move(vertex_cell);
    mesh.cell_dims = {cx, cy, cz};
    mesh.cell_live = std::move(live);
    mesh.box_vertex = std::move(box_vertex);
    return mesh;
}

namespace {

SnapshotComplex extract_impl(const AmbientMesh& mesh, const std::vector<double>& rho,
                             double c, double c_max) {
    if (rho.size() != mesh.vertex_count())
        fail(ErrorCode::InvalidArgument, "vertex density size mismatch");
    if (!(c > 0.0) || !(c < c_max))
        fail(ErrorCode::InvalidArgument, "isovalue must lie in (0, c_max)");

    // Collision guard against vertex values (symbolic-perturbation stand-in).
    constexpr double tol_crit = 1e-9;
    for (int attempt = 0; attempt < 8; ++attempt) {
        const double theta = c_max - c;
        bool collision = false;
        for (double v : rho)
            if (std::abs(v - theta) < tol_crit) {
                collision = true;
                break;
            }
        if (!collision) break;
        c += tol_crit;
    }

    SnapshotComplex snap;
    snap.isovalue = c;
    snap.threshold = c_max - c;

    const std::size_t nv = mesh.vertex_count();
    const std::size_t ne = mesh.edges.size();
    const std::size_t nf = mesh.triangles.size();
    const std::size_t nt = mesh.tets.size();
    snap.keep_vert.assign(nv, 0);
    snap.keep_edge.assign(ne, 0);
    snap.keep_tri.assign(nf, 0);
    snap.keep_tet.assign(nt, 0);

    for (std::size_t t = 0; t < nt; ++t) {
        const auto& T = mesh.tets[t];
        if (rho[T[0]] >= snap.threshold && rho[T[1]] >= snap.threshold &&
            rho[T[2]] >= snap.threshold && rho[T[3]] >= snap.threshold)
            snap.keep_tet[t] = 1;
    }
    // Closure of the kept tets; anything not reached is pruned.
    for (std::size_t t = 0; t < nt; ++t) {
        if (!snap.keep_tet[t]) continue;
        for (Index f : mesh.tet_faces[t]) snap.keep_tri[static_cast<std::size_t>(f)] = 1;
        for (Index v : mesh.tets[t]) snap.keep_vert[static_cast<std::size_t>(v)] = 1;
    }
    for (std::size_t f = 0; f < nf; ++f) {
        if (!snap.keep_tri[f]) continue;
        for (Index e : mesh.tri_edges[f]) snap.keep_edge[static_cast<std::size_t>(e)] = 1;
    }

    // Boundary flags: a kept triangle with exactly one kept tet, then the
    // closure of those triangles.
    snap.bnd_vert.assign(nv, 0);
    snap.bnd_edge.assign(ne, 0);
    snap.bnd_tri.assign(nf, 0);
    for (std::size_t f = 0; f < nf; ++f) {
        if (!snap.keep_tri[f]) continue;
        int inc = 0;
        for (Index t : mesh.tri_tets[f])
            if (t >= 0 && snap.keep_tet[static_cast<std::size_t>(t)]) ++inc;
        if (inc == 1) {
            snap.bnd_tri[f] = 1;
            for (Index e : mesh.tri_edges[f]) snap.bnd_edge[static_cast<std::size_t>(e)] = 1;
            for (Index v : mesh.triangles[f]) snap.bnd_vert[static_cast<std::size_t>(v)] = 1;
        }
    }

    auto collect = [](const std::vector<std::uint8_t>& keep, std::vector<Index>& ids,
                      std::vector<Index>& local) {
        local.assign(keep.size(), -1);
        for (std::size_t i = 0; i < keep.size(); ++i)
            if (keep[i]) {
                local[i] = static_cast<Index>(ids.size());
                ids.push_back(static_cast<Index>(i));
            }
    };
    collect(snap.keep_vert, snap.verts, snap.vert_local);
    collect(snap.keep_edge, snap.edges, snap.edge_local);
    collect(snap.keep_tri, snap.tris, snap.tri_local);
    collect(snap.keep_tet, snap.tets, snap.tet_local);
    return snap;
}

} // namespace

SnapshotComplex extract_snapshot(const AmbientMesh& mesh, const DensityField& field,
                                 double c) {
    if (mesh.vertex_density.size() != mesh.vertex_count())
        fail(ErrorCode::InvalidArgument,
             "mesh has no vertex densities (not built from a field)");
    return extract_impl(mesh, mesh.vertex_density, c, field.c_max);
}

SnapshotComplex extract_snapshot_values(const AmbientMesh& mesh,
                                        const std::vector<double>& vertex_density,
                                        double c, double c_max) {
    return extract_impl(mesh, vertex_density, c, c_max);
}

SnapshotComplex full_snapshot(const AmbientMesh& mesh) {
    std::vector<double> rho(mesh.vertex_count(), 1.0);
    return extract_impl(mesh, rho, 0.5, 1.0);
}

std::size_t connected_components(const AmbientMesh& mesh, const SnapshotComplex& snap,
                                 std::vector<Index>* labels) {
    const std::size_t nt = snap.tets.size();
    std::vector<Index> parent(nt);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<Index(Index)> find = [&](Index x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    };
    for (std::size_t f = 0; f < mesh.triangles.size(); ++f) {
        if (!snap.keep_tri[f]) continue;
        const auto& inc = mesh.tri_tets[f];
        if (inc[0] < 0 || inc[1] < 0) continue;
        if (!snap.keep_tet[static_cast<std::size_t>(inc[0])] ||
            !snap.keep_tet[static_cast<std::size_t>(inc[1])])
            continue;
        const Index a = find(snap.tet_local[static_cast<std::size_t>(inc[0])]);
        const Index b = find(snap.tet_local[static_cast<std::size_t>(inc[1])]);
        if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    }
    std::vector<Index> root_label(nt, -1);
    std::size_t count = 0;
    if (labels) labels->assign(nt, -1);
    for (std::size_t t = 0; t < nt; ++t) {
        const Index r = find(static_cast<Index>(t));
        if (root_label[static_cast<std::size_t>(r)] < 0)
            root_label[static_cast<std::size_t>(r)] = static_cast<Index>(count++);
        if (labels) (*labels)[t] = root_label[static_cast<std::size_t>(r)];
    }
    return count;
}

void export_off(const AmbientMesh& mesh, const SnapshotComplex& snap,
                const std::string& path) {
    std::ofstream out(path);
    if (!out) fail(ErrorCode::Io, "cannot write OFF file: " + path);
    std::vector<Index> vmap(mesh.vertex_count(), -1);
    std::vector<Index> vids;
    std::vector<std::size_t> faces;
    for (std::size_t f = 0; f < mesh.triangles.size(); ++f) {
        if (!snap.bnd_tri[f]) continue;
        faces.push_back(f);
        for (Index v : mesh.triangles[f])
            if (vmap[static_cast<std::size_t>(v)] < 0) {
                vmap[static_cast<std::size_t>(v)] = static_cast<Index>(vids.size());
                vids.push_back(v);
            }
    }
    out << "OFF\n" << vids.size() << " " << faces.size() << " 0\n";
    out.precision(12);
    for (Index v : vids) {
        const auto& p = mesh.vertices[static_cast<std::size_t>(v)];
        out << p[0] << " " << p[1] << " " << p[2] << "\n";
    }
    for (std::size_t f : faces) {
        const auto& tri = mesh.triangles[f];
        out << "3 " << vmap[static_cast<std::size_t>(tri[0])] << " "
            << vmap[static_cast<std::size_t>(tri[1])] << " "
            << vmap[static_cast<std::size_t>(tri[2])] << "\n";
    }
    if (!out) fail(ErrorCode::Io, "write failed: " + path);
}

void export_vtk(const AmbientMesh& mesh, const SnapshotComplex& snap,
                const std::string& path) {
    std::ofstream out(path);
    if (!out) fail(ErrorCode::Io, "cannot write VTK file: " + path);
    out << "# vtk DataFile Version 2.0\nevodrh snapshot c=" << snap.isovalue
        << "\nASCII\nDATASET UNSTRUCTURED_GRID\n";
    out << "POINTS " << snap.verts.size() << " double\n";
    out.precision(12);
    for (Index v : snap.verts) {
        const auto& p = mesh.vertices[static_cast<std::size_t>(v)];
        out << p[0] << " " << p[1] << " " << p[2] << "\n";
    }
    out << "CELLS " << snap.tets.size() << " " << 5 * snap.tets.size() << "\n";
    for (Index t : snap.tets) {
        const auto& T = mesh.tets[static_cast<std::size_t>(t)];
        out << "4 " << snap.vert_local[static_cast<std::size_t>(T[0])] << " "
            << snap.vert_local[static_cast<std::size_t>(T[1])] << " "
            << snap.vert_local[static_cast<std::size_t>(T[2])] << " "
            << snap.vert_local[static_cast<std::size_t>(T[3])] << "\n";
    }
    out << "CELL_TYPES " << snap.tets.size() << "\n";
    for (std::size_t i = 0; i < snap.tets.size(); ++i) out << "10\n";
    if (!out) fail(ErrorCode::Io, "write failed: " + path);
}

} // namespace evodrh
