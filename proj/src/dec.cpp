#include "evodrh/dec.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

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
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
inline Vec3 scale(const Vec3& a, double s) { return {a[0] * s, a[1] * s, a[2] * s}; }
inline Vec3 add(const Vec3& a, const Vec3& b) {
    return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}

double signed_volume(const Vec3& p0, const Vec3& p1, const Vec3& p2, const Vec3& p3) {
    return dot(sub(p1, p0), cross(sub(p2, p0), sub(p3, p0))) / 6.0;
}

Vec3 triangle_circumcenter(const Vec3& a, const Vec3& b, const Vec3& c) {
    const Vec3 ab = sub(b, a), ac = sub(c, a);
    const double d00 = dot(ab, ab), d01 = dot(ab, ac), d11 = dot(ac, ac);
    const double det = 2.0 * (d00 * d11 - d01 * d01);
    const double u = (d11 * (d00 - d01)) / det;
    const double v = (d00 * (d11 - d01)) / det;
    return add(a, add(scale(ab, u), scale(ac, v)));
}

} // namespace

IncidenceMatrices assemble_incidence(const AmbientMesh& mesh,
                                     const SnapshotComplex& snap) {
    IncidenceMatrices inc;
    using Trip = Eigen::Triplet<std::int64_t>;

    {
        std::vector<Trip> trips;
        trips.reserve(snap.edges.size() * 2);
        for (std::size_t le = 0; le < snap.edges.size(); ++le) {
            const auto& e = mesh.edges[static_cast<std::size_t>(snap.edges[le])];
            trips.emplace_back(static_cast<Index>(le),
                               snap.vert_local[static_cast<std::size_t>(e[0])], -1);
            trips.emplace_back(static_cast<Index>(le),
                               snap.vert_local[static_cast<std::size_t>(e[1])], +1);
        }
        inc.D0.resize(static_cast<Eigen::Index>(snap.edges.size()),
                      static_cast<Eigen::Index>(snap.verts.size()));
        inc.D0.setFromTriplets(trips.begin(), trips.end());
    }
    {
        // Sorted triangle (a,b,c): boundary = (b,c) - (a,c) + (a,b),
        // matching the edge slot order built in AmbientMesh::from_tets.
        static constexpr std::int64_t sign[3] = {+1, -1, +1};
        std::vector<Trip> trips;
        trips.reserve(snap.tris.size() * 3);
        for (std::size_t lf = 0; lf < snap.tris.size(); ++lf) {
            const auto& es = mesh.tri_edges[static_cast<std::size_t>(snap.tris[lf])];
            for (int s = 0; s < 3; ++s)
                trips.emplace_back(static_cast<Index>(lf),
                                   snap.edge_local[static_cast<std::size_t>(es[s])],
                                   sign[s]);
        }
        inc.D1.resize(static_cast<Eigen::Index>(snap.tris.size()),
                      static_cast<Eigen::Index>(snap.edges.size()));
        inc.D1.setFromTriplets(trips.begin(), trips.end());
    }
    {
        static constexpr std::int64_t sign[4] = {+1, -1, +1, -1};
        std::vector<Trip> trips;
        trips.reserve(snap.tets.size() * 4);
        for (std::size_t lt = 0; lt < snap.tets.size(); ++lt) {
            const auto& fs = mesh.tet_faces[static_cast<std::size_t>(snap.tets[lt])];
            for (int s = 0; s < 4; ++s)
                trips.emplace_back(static_cast<Index>(lt),
                                   snap.tri_local[static_cast<std::size_t>(fs[s])],
                                   sign[s]);
        }
        inc.D2.resize(static_cast<Eigen::Index>(snap.tets.size()),
                      static_cast<Eigen::Index>(snap.tris.size()));
        inc.D2.setFromTriplets(trips.begin(), trips.end());
    }
    return inc;
}

HodgeStars assemble_stars(const AmbientMesh& mesh, const SnapshotComplex& snap) {
    HodgeStars st;
    st.s0 = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(snap.verts.size()));
    st.s1 = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(snap.edges.size()));
    st.s2 = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(snap.tris.size()));
    st.s3 = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(snap.tets.size()));

    // One pass over kept tets accumulating the elementary circumcentric dual
    // pieces for every (vertex < edge < triangle < tet) chain.
    for (std::size_t lt = 0; lt < snap.tets.size(); ++lt) {
        const Index t = snap.tets[lt];
        const auto& T = mesh.tets[static_cast<std::size_t>(t)];
        std::array<Index, 4> s = T;
        std::sort(s.begin(), s.end());
        const Vec3 cT = mesh.tet_circumcenter(t);
        const double vol = std::abs(mesh.tet_volume(t));
        st.s3(static_cast<Eigen::Index>(lt)) = 1.0 / vol;

        const auto& faces = mesh.tet_faces[static_cast<std::size_t>(t)];
        for (int fs = 0; fs < 4; ++fs) {
            const Index f = faces[fs];
            const auto& tri = mesh.triangles[static_cast<std::size_t>(f)];
            const Vec3 &p = mesh.vertices[tri[0]], &q = mesh.vertices[tri[1]],
                       &r = mesh.vertices[tri[2]];
            const Vec3 cF = triangle_circumcenter(p, q, r);
            const Index opp = s[static_cast<std::size_t>(fs)]; // vertex omitted by slot fs
            const double side_T = signed_volume(p, q, r, cT);
            const double side_o = signed_volume(p, q, r, mesh.vertices[opp]);
            const double sT = (side_T * side_o >= 0.0) ? 1.0 : -1.0;

            st.s2(snap.tri_local[static_cast<std::size_t>(f)]) +=
                sT * norm(sub(cT, cF));

            const auto& tes = mesh.tri_edges[static_cast<std::size_t>(f)];
            for (int es = 0; es < 3; ++es) {
                const Index e = tes[es];
                const auto& ev = mesh.edges[static_cast<std::size_t>(e)];
                const Vec3 &u = mesh.vertices[ev[0]], &v = mesh.vertices[ev[1]];
                const Vec3 cE = scale(add(u, v), 0.5);
                const Index w = tri[static_cast<std::size_t>(es)]; // vertex opposite edge slot
                const Vec3 wv = mesh.vertices[static_cast<std::size_t>(w)];
                Vec3 edir = sub(v, u);
                edir = scale(edir, 1.0 / norm(edir));
                const Vec3 wrel = sub(wv, cE);
                const Vec3 perp = sub(wrel, scale(edir, dot(wrel, edir)));
                const double sF = (dot(sub(cF, cE), perp) >= 0.0) ? 1.0 : -1.0;

                const double area = 0.5 * norm(cross(sub(cF, cE), sub(cT, cE)));
                st.s1(snap.edge_local[static_cast<std::size_t>(e)]) += sT * sF * area;

                for (int uv = 0; uv < 2; ++uv) {
                    const Index vert = ev[uv];
                    const double piece =
                        std::abs(signed_volume(mesh.vertices[vert], cE, cF, cT));
                    st.s0(snap.vert_local[static_cast<std::size_t>(vert)]) +=
                        sT * sF * piece;
                }
            }
        }
    }

    // Divide by the primal measures (vertex measure is 1).
    for (std::size_t lf = 0; lf < snap.tris.size(); ++lf) {
        const auto& tri = mesh.triangles[static_cast<std::size_t>(snap.tris[lf])];
        const double area = 0.5 * norm(cross(sub(mesh.vertices[tri[1]], mesh.vertices[tri[0]]),
                                             sub(mesh.vertices[tri[2]], mesh.vertices[tri[0]])));
        st.s2(static_cast<Eigen::Index>(lf)) /= area;
    }
    for (std::size_t le = 0; le < snap.edges.size(); ++le) {
        const auto& e = mesh.edges[static_cast<std::size_t>(snap.edges[le])];
        st.s1(static_cast<Eigen::Index>(le)) /=
            norm(sub(mesh.vertices[e[1]], mesh.vertices[e[0]]));
    }

    // Clip numerically nonpositive entries (must not trigger on BCC meshes).
    for (Eigen::VectorXd* v : {&st.s0, &st.s1, &st.s2, &st.s3}) {
        if (v->size() == 0) continue;
        const double mean = v->sum() / static_cast<double>(v->size());
        const double floor = 1e-12 * mean;
        if (!(floor > 0.0) && v->minCoeff() <= 0.0)
            fail(ErrorCode::Internal, "hodge star diagonal is not positive (mesh quality)");
        for (Eigen::Index i = 0; i < v->size(); ++i)
            if ((*v)(i) <= 0.0) {
                (*v)(i) = floor;
                ++st.clipped;
            }
    }
    return st;
}

RestrictedOperator restrict_operator(const IncidenceMatrices& incidence,
                                     const SnapshotComplex& snap,
                                     BoundaryCondition bc, int k) {
    if (k < 0 || k > 2) fail(ErrorCode::InvalidArgument, "k must be 0, 1 or 2");
    RestrictedOperator out;
    out.k = k;
    out.bc = bc;

    const SparseI& D = (k == 0) ? incidence.D0 : (k == 1) ? incidence.D1 : incidence.D2;

    auto keep_rows = [&](const std::vector<Index>& ids,
                         const std::vector<std::uint8_t>& bnd) {
        std::vector<Index> kept;
        for (std::size_t i = 0; i < ids.size(); ++i)
            if (bc == BoundaryCondition::Tangential ||
                !bnd[static_cast<std::size_t>(ids[i])])
                kept.push_back(static_cast<Index>(i));
        return kept;
    };
    if (k == 0) {
        out.row_ids = keep_rows(snap.edges, snap.bnd_edge);
        out.col_ids = keep_rows(snap.verts, snap.bnd_vert);
    } else if (k == 1) {
        out.row_ids = keep_rows(snap.tris, snap.bnd_tri);
        out.col_ids = keep_rows(snap.edges, snap.bnd_edge);
    } else {
        out.row_ids.resize(snap.tets.size()); // tets are never boundary simplices
        for (std::size_t i = 0; i < snap.tets.size(); ++i)
            out.row_ids[i] = static_cast<Index>(i);
        out.col_ids = keep_rows(snap.tris, snap.bnd_tri);
    }

    std::vector<Index> row_map(static_cast<std::size_t>(D.rows()), -1);
    std::vector<Index> col_map(static_cast<std::size_t>(D.cols()), -1);
    for (std::size_t i = 0; i < out.row_ids.size(); ++i)
        row_map[static_cast<std::size_t>(out.row_ids[i])] = static_cast<Index>(i);
    for (std::size_t i = 0; i < out.col_ids.size(); ++i)
        col_map[static_cast<std::size_t>(out.col_ids[i])] = static_cast<Index>(i);

    std::vector<Eigen::Triplet<std::int64_t>> trips;
    trips.reserve(static_cast<std::size_t>(D.nonZeros()));
    for (int col = 0; col < D.outerSize(); ++col)
        for (SparseI::InnerIterator it(D, col); it; ++it) {
            const Index r = row_map[static_cast<std::size_t>(it.row())];
            const Index c = col_map[static_cast<std::size_t>(it.col())];
            if (r >= 0 && c >= 0) trips.emplace_back(r, c, it.value());
        }
    out.D.resize(static_cast<Eigen::Index>(out.row_ids.size()),
                 static_cast<Eigen::Index>(out.col_ids.size()));
    out.D.setFromTriplets(trips.begin(), trips.end());
    return out;
}

NormalizedOperator normalize_operator(const RestrictedOperator& restricted,
                                      const HodgeStars& stars) {
    const Eigen::VectorXd* srow = nullptr;
    const Eigen::VectorXd* scol = nullptr;
    switch (restricted.k) {
        case 0: srow = &stars.s1; scol = &stars.s0; break;
        case 1: srow = &stars.s2; scol = &stars.s1; break;
        case 2: srow = &stars.s3; scol = &stars.s2; break;
        default: fail(ErrorCode::InvalidArgument, "k must be 0, 1 or 2");
    }
    NormalizedOperator out;
    out.k = restricted.k;
    out.bc = restricted.bc;
    out.row_ids = restricted.row_ids;
    out.col_ids = restricted.col_ids;

    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(static_cast<std::size_t>(restricted.D.nonZeros()));
    for (int col = 0; col < restricted.D.outerSize(); ++col)
        for (SparseI::InnerIterator it(restricted.D, col); it; ++it) {
            const double sr = (*srow)(restricted.row_ids[static_cast<std::size_t>(it.row())]);
            const double sc = (*scol)(restricted.col_ids[static_cast<std::size_t>(it.col())]);
            trips.emplace_back(static_cast<Index>(it.row()), static_cast<Index>(it.col()),
                               static_cast<double>(it.value()) * std::sqrt(sr) / std::sqrt(sc));
        }
    out.Dbar.resize(restricted.D.rows(), restricted.D.cols());
    out.Dbar.setFromTriplets(trips.begin(), trips.end());
    return out;
}

DecOperators assemble_dec(const AmbientMesh& mesh, const SnapshotComplex& snap) {
    DecOperators ops;
    ops.incidence = assemble_incidence(mesh, snap);
    ops.stars = assemble_stars(mesh, snap);
    for (int k = 0; k < 3; ++k) {
        ops.tangential[k] = normalize_operator(
            restrict_operator(ops.incidence, snap, BoundaryCondition::Tangential, k),
            ops.stars);
        ops.normal[k] = normalize_operator(
            restrict_operator(ops.incidence, snap, BoundaryCondition::Normal, k),
            ops.stars);
    }
    return ops;
}

namespace {

template <typename Scalar>
void write_mm(const std::string& path, const Eigen::SparseMatrix<Scalar>& m,
              const char* field) {
    std::ofstream out(path);
    if (!out) fail(ErrorCode::Io, "cannot write matrix file: " + path);
    out << "%%MatrixMarket matrix coordinate " << field << " general\n";
    out << m.rows() << " " << m.cols() << " " << m.nonZeros() << "\n";
    out.precision(17);
    for (int col = 0; col < m.outerSize(); ++col)
        for (typename Eigen::SparseMatrix<Scalar>::InnerIterator it(m, col); it; ++it)
            out << (it.row() + 1) << " " << (it.col() + 1) << " " << it.value() << "\n";
    if (!out) fail(ErrorCode::Io, "write failed: " + path);
}

} // namespace

void write_matrix_market(const std::string& path, const SparseD& m) {
    write_mm(path, m, "real");
}
void write_matrix_market(const std::string& path, const SparseI& m) {
    write_mm(path, m, "integer");
}

} // namespace evodrh
