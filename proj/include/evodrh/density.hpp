#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "evodrh/point_cloud.hpp"

namespace evodrh {

/// Correlation kernel exp(-(distance/eta)^kappa), in (0, 1].
double kernel(double distance, double eta, double kappa);

/// FRI density: sum of per-point kernels, each with its own eta.
double evaluate_density(const PointCloud& cloud, const Vec3& r, double kappa);

/// The density rho sampled on a regular lattice that covers the cloud.
/// Values are stored x-fastest; c_max is the maximum over sampled nodes.
struct DensityField {
    Vec3 origin{};
    double spacing = 0.0;
    std::array<std::int64_t, 3> dims{};
    std::vector<double> values;
    double kappa = 2.0;
    double c_max = 0.0;

    std::int64_t node_count() const { return dims[0] * dims[1] * dims[2]; }
    std::int64_t index(std::int64_t i, std::int64_t j, std::int64_t k) const {
        return i + dims[0] * (j + dims[1] * k);
    }
    double at(std::int64_t i, std::int64_t j, std::int64_t k) const {
        return values[static_cast<std::size_t>(index(i, j, k))];
    }
    Vec3 node_position(std::int64_t i, std::int64_t j, std::int64_t k) const {
        return {origin[0] + spacing * static_cast<double>(i),
                origin[1] + spacing * static_cast<double>(j),
                origin[2] + spacing * static_cast<double>(k)};
    }
    /// Largest value on the outermost node layer (decay diagnostic).
    double boundary_layer_max() const;
};

struct SampleOptions {
    double kappa = 2.0;
    std::int64_t node_budget = 20'000'000;
    double kernel_cutoff = 1e-12;
};

/// Sample the cloud density on a lattice: the point bounding box expanded by
/// `padding` on every side. Requires padding >= 3 * max weight so the level
/// sets of interest close well before the box edge. Kernel evaluations are
/// truncated at the per-point radius where the kernel falls below
/// `kernel_cutoff`.
DensityField sample_grid(const PointCloud& cloud, double spacing, double padding,
                         const SampleOptions& options = {});

/// Flat binary dump: origin (3 f64), spacing (f64), dims (3 u32), then values
/// (f64, x-fastest), all little-endian.
void write_field(const std::string& path, const DensityField& field);
DensityField read_field(const std::string& path);

} // namespace evodrh
