#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "evodrh/errors.hpp"

namespace evodrh {

using Vec3 = std::array<double, 3>;

/// One input site: a position plus its kernel width eta (a positive length,
/// typically scaling * van der Waals radius) and an optional element tag.
struct Point {
    Vec3 position{};
    double weight = 1.0;
    std::string label;
};

struct PointCloud {
    std::vector<Point> points;

    std::size_t size() const { return points.size(); }
    double max_weight() const;

    /// Throws InvalidArgument unless the cloud is nonempty with finite
    /// coordinates and strictly positive weights.
    void validate() const;
};

/// Bondi radii for the handful of elements the molecular examples need.
/// Unknown elements fall back to 1.0 (a warning is recorded by the loaders).
std::map<std::string, double> default_vdw_radii();

/// Parse a `key = value` radii override file on top of the built-in table.
std::map<std::string, double> load_radii_table(const std::string& path);

struct LoadReport {
    std::vector<std::string> warnings;
};

/// Read an XYZ file (optional 2-line count/comment header, then
/// `element x y z` per line). weight = eta_scale * radius(element).
PointCloud load_xyz(const std::string& path, double eta_scale,
                    const std::map<std::string, double>& radii,
                    LoadReport* report = nullptr);

/// Minimal ATOM/HETATM reader; element from columns 77-78 with a fallback
/// to the atom-name field.
PointCloud load_pdb(const std::string& path, double eta_scale,
                    const std::map<std::string, double>& radii,
                    LoadReport* report = nullptr);

void write_xyz(const std::string& path, const PointCloud& cloud);

/// Built-in point sets: two_body, four_body, eight_body (unit weights).
PointCloud make_lattice_cloud(const std::string& preset);

/// Apply a uniform kernel width to every point.
void set_uniform_weight(PointCloud& cloud, double eta);

} // namespace evodrh
