#include "evodrh/density.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>

namespace evodrh {

double kernel(double distance, double eta, double kappa) {
    return std::exp(-std::pow(distance / eta, kappa));
}

double evaluate_density(const PointCloud& cloud, const Vec3& r, double kappa) {
    double sum = 0.0;
    for (const auto& p : cloud.points) {
        const double dx = r[0] - p.position[0];
        const double dy = r[1] - p.position[1];
        const double dz = r[2] - p.position[2];
        sum += kernel(std::sqrt(dx * dx + dy * dy + dz * dz), p.weight, kappa);
    }
    return sum;
}

double DensityField::boundary_layer_max() const {
    double m = 0.0;
    for (std::int64_t k = 0; k < dims[2]; ++k)
        for (std::int64_t j = 0; j < dims[1]; ++j)
            for (std::int64_t i = 0; i < dims[0]; ++i) {
                if (i > 0 && i + 1 < dims[0] && j > 0 && j + 1 < dims[1] &&
                    k > 0 && k + 1 < dims[2])
                    continue;
                m = std::max(m, at(i, j, k));
            }
    return m;
}

DensityField sample_grid(const PointCloud& cloud, double spacing, double padding,
                         const SampleOptions& options) {
    cloud.validate();
    if (!(spacing > 0.0)) fail(ErrorCode::InvalidArgument, "spacing must be positive");
    if (!(options.kappa > 0.0)) fail(ErrorCode::InvalidArgument, "kappa must be positive");
    const double min_padding = 3.0 * cloud.max_weight();
    if (padding < min_padding)
        fail(ErrorCode::InvalidArgument,
             "padding " + std::to_string(padding) + " is below 3 * max weight = " +
                 std::to_string(min_padding));

    Vec3 lo = cloud.points[0].position;
    Vec3 hi = lo;
    for (const auto& p : cloud.points)
        for (int a = 0; a < 3; ++a) {
            lo[a] = std::min(lo[a], p.position[a]);
            hi[a] = std::max(hi[a], p.position[a]);
        }

    DensityField field;
    field.spacing = spacing;
    field.kappa = options.kappa;
    for (int a = 0; a < 3; ++a) {
        field.origin[a] = lo[a] - padding;
        const double span = (hi[a] + padding) - field.origin[a];
        field.dims[a] = static_cast<std::int64_t>(std::ceil(span / spacing - 1e-12)) + 1;
    }
    const std::int64_t nodes = field.node_count();
    if (nodes > options.node_budget)
        fail(ErrorCode::Resource,
             "grid needs " + std::to_string(nodes) + " nodes (budget " +
                 std::to_string(options.node_budget) + "): coarsen the spacing");

    field.values.assign(static_cast<std::size_t>(nodes), 0.0);

    // Accumulate per point over the nodes inside its cutoff ball. Point index
    // ascends in the outer loop, so every node sums contributions in the same
    // fixed order.
    const double log_cut = -std::log(options.kernel_cutoff);
    for (const auto& p : cloud.points) {
        const double cutoff = p.weight * std::pow(log_cut, 1.0 / options.kappa);
        std::array<std::int64_t, 3> a0{}, a1{};
        for (int a = 0; a < 3; ++a) {
            a0[a] = std::max<std::int64_t>(
                0, static_cast<std::int64_t>(
                       std::ceil((p.position[a] - cutoff - field.origin[a]) / spacing)));
            a1[a] = std::min<std::int64_t>(
                field.dims[a] - 1,
                static_cast<std::int64_t>(
                    std::floor((p.position[a] + cutoff - field.origin[a]) / spacing)));
        }
        const double cut2 = cutoff * cutoff;
        // Offsets are formed as (spacing * index) - (point - origin), which is
        // invariant under exactly-representable translations of cloud and box.
        const Vec3 rel = {p.position[0] - field.origin[0],
                          p.position[1] - field.origin[1],
                          p.position[2] - field.origin[2]};
        for (std::int64_t k = a0[2]; k <= a1[2]; ++k) {
            const double dz = spacing * static_cast<double>(k) - rel[2];
            for (std::int64_t j = a0[1]; j <= a1[1]; ++j) {
                const double dy = spacing * static_cast<double>(j) - rel[1];
                const double dyz2 = dy * dy + dz * dz;
                if (dyz2 > cut2) continue;
                double* row = field.values.data() + field.index(0, j, k);
                for (std::int64_t i = a0[0]; i <= a1[0]; ++i) {
                    const double dx = spacing * static_cast<double>(i) - rel[0];
                    const double d2 = dx * dx + dyz2;
                    if (d2 > cut2) continue;
                    row[i] += kernel(std::sqrt(d2), p.weight, options.kappa);
                }
            }
        }
    }

    field.c_max = *std::max_element(field.values.begin(), field.values.end());
    if (!(field.c_max > 0.0))
        fail(ErrorCode::Internal, "sampled density is identically zero");
    return field;
}

void write_field(const std::string& path, const DensityField& field) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorCode::Io, "cannot write field file: " + path);
    auto put = [&out](const void* p, std::size_t n) {
        out.write(static_cast<const char*>(p), static_cast<std::streamsize>(n));
    };
    put(field.origin.data(), 3 * sizeof(double));
    put(&field.spacing, sizeof(double));
    for (int a = 0; a < 3; ++a) {
        const std::uint32_t d = static_cast<std::uint32_t>(field.dims[a]);
        put(&d, sizeof(d));
    }
    put(field.values.data(), field.values.size() * sizeof(double));
    if (!out) fail(ErrorCode::Io, "write failed: " + path);
}

DensityField read_field(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::Io, "cannot open field file: " + path);
    DensityField field;
    auto get = [&in, &path](void* p, std::size_t n) {
        in.read(static_cast<char*>(p), static_cast<std::streamsize>(n));
        if (!in) fail(ErrorCode::Parse, "truncated field file: " + path);
    };
    get(field.origin.data(), 3 * sizeof(double));
    get(&field.spacing, sizeof(double));
    for (int a = 0; a < 3; ++a) {
        std::uint32_t d = 0;
        get(&d, sizeof(d));
        field.dims[a] = d;
    }
    field.values.resize(static_cast<std::size_t>(field.node_count()));
    get(field.values.data(), field.values.size() * sizeof(double));
    field.c_max = field.values.empty()
                      ? 0.0
                      : *std::max_element(field.values.begin(), field.values.end());
    return field;
}

} // namespace evodrh
