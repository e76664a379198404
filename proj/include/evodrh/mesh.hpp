#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "evodrh/density.hpp"

namespace evodrh {

using Index = std::int32_t;

/// One tetrahedral complex shared by every snapshot of a filtration.
///
/// Vertices are the density lattice nodes followed by one center node per
/// lattice cell; tets tile the box with congruent body-centered-cubic tets
/// (two adjacent cell centers joined across each edge of their shared face).
/// Tets are stored sorted by vertex id except for a possible swap of the last
/// two entries that makes the signed volume positive.
struct AmbientMesh {
    std::vector<Vec3> vertices;
    std::vector<double> vertex_density; // rho at each vertex (empty for synthetic meshes)
    std::vector<std::array<Index, 4>> tets;

    // Derived tables, all sorted tuples with deterministic ids.
    std::vector<std::array<Index, 2>> edges;
    std::vector<std::array<Index, 3>> triangles;
    std::vector<std::array<Index, 4>> tet_faces;  // triangle ids per tet
    std::vector<std::array<Index, 3>> tri_edges;  // edge ids per triangle
    std::vector<std::array<Index, 2>> tri_tets;   // incident tets (-1 if none)

    // Grid bookkeeping for lattice builds (empty for synthetic meshes):
    // the cell a center vertex belongs to (-1 for lattice nodes), the cell
    // grid dims, the live-cell mask, and the lattice nodes on the outer box
    // layer. Density-masked builds need these to count complement cavities.
    std::vector<Index> vertex_cell;
    std::array<std::int64_t, 3> cell_dims{};
    std::vector<std::uint8_t> cell_live;
    std::vector<std::uint8_t> box_vertex;

    std::size_t vertex_count() const { return vertices.size(); }
    std::size_t tet_count() const { return tets.size(); }

    double tet_volume(Index t) const;
    Vec3 tet_circumcenter(Index t) const;

    /// Build the derived tables for an arbitrary positive-volume tet soup.
    /// Fails if a triangle has more than two incident tets.
    static AmbientMesh from_tets(std::vector<Vec3> vertices,
                                 std::vector<std::array<Index, 4>> tets);

    /// Verify the circumcenter containment needed for positive circumcentric
    /// dual measures. Returns the number of violations (0 for BCC builds).
    std::size_t well_centered_violations(std::size_t max_checked = SIZE_MAX) const;
};

/// BCC tetrahedralization over the field lattice. Cells need live neighbors,
/// so tets appear only across interior cell faces; the density padding keeps
/// every level set of interest away from that boundary layer.
///
/// `min_density` > 0 drops cells whose eight corners all sample below it
/// (and lattice nodes touching no live cell). Snapshots at thresholds above
/// min_density are unaffected; the far field costs nothing.
AmbientMesh build_ambient(const DensityField& field, double min_density = 0.0);

/// The subcomplex occupied by the solid region {rho >= c_max - c}, with
/// boundary classification. A tet is kept iff all four vertex densities pass;
/// lower simplices are kept by closure (which also prunes danglers).
struct SnapshotComplex {
    double isovalue = 0.0;   // c, after any tie-breaking perturbation
    double threshold = 0.0;  // c_max - c

    std::vector<std::uint8_t> keep_vert, keep_edge, keep_tri, keep_tet;
    std::vector<std::uint8_t> bnd_vert, bnd_edge, bnd_tri;

    // Kept ambient ids in ascending order, and ambient -> local maps (-1 = not kept).
    std::vector<Index> verts, edges, tris, tets;
    std::vector<Index> vert_local, edge_local, tri_local, tet_local;

    std::size_t vertex_count() const { return verts.size(); }
    std::size_t edge_count() const { return edges.size(); }
    std::size_t triangle_count() const { return tris.size(); }
    std::size_t tet_count() const { return tets.size(); }
    bool empty() const { return tets.empty(); }

    std::int64_t euler_characteristic() const {
        return static_cast<std::int64_t>(vertex_count()) - static_cast<std::int64_t>(edge_count()) +
               static_cast<std::int64_t>(triangle_count()) - static_cast<std::int64_t>(tet_count());
    }
};

/// Extract the snapshot at isovalue c in (0, c_max). If c collides with a
/// vertex density value within 1e-9 it is bumped by 1e-9 (symbolic
/// perturbation stand-in); the adjusted c is recorded in the result.
SnapshotComplex extract_snapshot(const AmbientMesh& mesh, const DensityField& field,
                                 double c);

/// Snapshot from an explicit per-vertex density vector (synthetic test fields).
SnapshotComplex extract_snapshot_values(const AmbientMesh& mesh,
                                        const std::vector<double>& vertex_density,
                                        double c, double c_max);

/// Keep everything (used for hand-built complexes in tests).
SnapshotComplex full_snapshot(const AmbientMesh& mesh);

/// Union-find over kept tets glued across shared kept triangles.
/// labels[t] = component id per kept tet (local index); returns count.
std::size_t connected_components(const AmbientMesh& mesh, const SnapshotComplex& snap,
                                 std::vector<Index>* labels = nullptr);

/// Boundary surface to OFF, volume to legacy ASCII VTK.
void export_off(const AmbientMesh& mesh, const SnapshotComplex& snap,
                const std::string& path);
void export_vtk(const AmbientMesh& mesh, const SnapshotComplex& snap,
                const std::string& path);

} // namespace evodrh
