#pragma once

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include "evodrh/dec.hpp"
#include "evodrh/density.hpp"
#include "evodrh/mesh.hpp"
#include "evodrh/point_cloud.hpp"

namespace testutil {

using namespace evodrh;

/// Scratch directory, removed on destruction.
struct TempDir {
    std::filesystem::path path;
    explicit TempDir(const std::string& tag) {
        path = std::filesystem::temp_directory_path() /
               ("evodrh_" + tag + "_" + std::to_string(::getpid()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path, ec);
    }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

inline void write_text(const std::string& path, const std::string& body) {
    std::ofstream out(path);
    out << body;
}

/// A regular tetrahedron (well-centered), edge length sqrt(2).
inline AmbientMesh single_tet_mesh() {
    std::vector<Vec3> verts = {
        {0, 0, 0}, {1, 1, 0}, {1, 0, 1}, {0, 1, 1}};
    return AmbientMesh::from_tets(verts, {{0, 1, 2, 3}});
}

/// Field for one unit-weight point at the origin sampled on a small grid.
inline DensityField ball_field(double spacing = 0.4, double padding = 3.0,
                               double weight = 1.0) {
    PointCloud cloud;
    cloud.points.push_back({{0, 0, 0}, weight, "X"});
    return sample_grid(cloud, spacing, padding);
}

/// Synthetic radial shell density: high near |r - R| = 0. Snapshots at
/// moderate isovalues are thick spherical shells (beta = 1,0,1).
inline DensityField shell_field(double radius = 1.15, double width = 0.5,
                                double spacing = 0.38, double half_box = 2.6) {
    DensityField f;
    f.spacing = spacing;
    f.kappa = 2.0;
    for (int a = 0; a < 3; ++a) {
        f.origin[a] = -half_box;
        f.dims[a] = static_cast<std::int64_t>(std::floor(2 * half_box / spacing)) + 1;
    }
    f.values.resize(static_cast<std::size_t>(f.node_count()));
    for (std::int64_t k = 0; k < f.dims[2]; ++k)
        for (std::int64_t j = 0; j < f.dims[1]; ++j)
            for (std::int64_t i = 0; i < f.dims[0]; ++i) {
                const Vec3 p = f.node_position(i, j, k);
                const double r = std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
                const double d = (r - radius) / width;
                f.values[static_cast<std::size_t>(f.index(i, j, k))] = std::exp(-d * d);
            }
    f.c_max = *std::max_element(f.values.begin(), f.values.end());
    return f;
}

/// Synthetic solid-torus density around a circle of the given radius in the
/// xy-plane (beta = 1,1,0 at moderate isovalues).
inline DensityField torus_field(double ring_radius = 1.35, double width = 0.62,
                                double spacing = 0.42, double half_box = 2.9) {
    DensityField f;
    f.spacing = spacing;
    f.kappa = 2.0;
    for (int a = 0; a < 3; ++a) {
        f.origin[a] = -half_box;
        f.dims[a] = static_cast<std::int64_t>(std::floor(2 * half_box / spacing)) + 1;
    }
    f.values.resize(static_cast<std::size_t>(f.node_count()));
    for (std::int64_t k = 0; k < f.dims[2]; ++k)
        for (std::int64_t j = 0; j < f.dims[1]; ++j)
            for (std::int64_t i = 0; i < f.dims[0]; ++i) {
                const Vec3 p = f.node_position(i, j, k);
                const double rxy = std::sqrt(p[0] * p[0] + p[1] * p[1]);
                const double d2 = (rxy - ring_radius) * (rxy - ring_radius) + p[2] * p[2];
                f.values[static_cast<std::size_t>(f.index(i, j, k))] =
                    std::exp(-d2 / (width * width));
            }
    f.c_max = *std::max_element(f.values.begin(), f.values.end());
    return f;
}

/// Deterministic random clouds for property tests.
inline PointCloud random_cloud(std::uint32_t seed) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> npts(1, 4);
    std::uniform_real_distribution<double> coord(-1.2, 1.2);
    std::uniform_real_distribution<double> weight(0.8, 1.4);
    PointCloud cloud;
    const int n = npts(rng);
    for (int i = 0; i < n; ++i)
        cloud.points.push_back({{coord(rng), coord(rng), coord(rng)}, weight(rng), ""});
    return cloud;
}

} // namespace testutil
