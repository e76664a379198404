#pragma once

#include <cmath>
#include <fstream>
#include <string>
#include <vector>

#include "evodrh/point_cloud.hpp"

namespace fixtures {

using evodrh::Vec3;

/// Benzene: carbon hexagon (C-C 1.397 A) with one hydrogen per carbon
/// (C-H 1.084 A), planar in z = 0.
inline void write_benzene_xyz(const std::string& path) {
    std::ofstream out(path);
    out << 12 << "\nbenzene\n";
    out.precision(10);
    const double rc = 1.397;
    const double rh = 1.397 + 1.084;
    for (int i = 0; i < 6; ++i) {
        const double a = M_PI / 3.0 * i;
        out << "C " << rc * std::cos(a) << " " << rc * std::sin(a) << " 0\n";
    }
    for (int i = 0; i < 6; ++i) {
        const double a = M_PI / 3.0 * i;
        out << "H " << rh * std::cos(a) << " " << rh * std::sin(a) << " 0\n";
    }
}

/// C60 on an ideal truncated icosahedron (uniform bond length), scaled to a
/// 1.42 A bond. Vertices: even permutations of (0, +-1, +-3p), (+-1, +-(2+p),
/// +-2p), (+-2, +-(1+2p), +-p) with p the golden ratio; all edges have
/// length 2 before scaling.
inline std::vector<Vec3> c60_coordinates(double bond = 1.42) {
    const double p = (1.0 + std::sqrt(5.0)) / 2.0;
    std::vector<Vec3> base;
    auto add_even_perms = [&base](double x, double y, double z) {
        base.push_back({x, y, z});
        base.push_back({z, x, y});
        base.push_back({y, z, x});
    };
    auto add_signs = [&](double x, double y, double z) {
        for (int sx : {-1, 1})
            for (int sy : {-1, 1})
                for (int sz : {-1, 1}) {
                    const double a = sx * x, b = sy * y, c = sz * z;
                    // skip sign flips of zero components (duplicates)
                    if ((x == 0.0 && sx < 0) || (y == 0.0 && sy < 0) ||
                        (z == 0.0 && sz < 0))
                        continue;
                    add_even_perms(a, b, c);
                }
    };
    add_signs(0.0, 1.0, 3.0 * p);
    add_signs(1.0, 2.0 + p, 2.0 * p);
    add_signs(2.0, 1.0 + 2.0 * p, p);
    const double scale = bond / 2.0;
    for (auto& v : base)
        for (int a = 0; a < 3; ++a) v[a] *= scale;
    return base;
}

inline void write_c60_xyz(const std::string& path) {
    const auto coords = c60_coordinates();
    std::ofstream out(path);
    out << coords.size() << "\nC60 truncated icosahedron\n";
    out.precision(10);
    for (const auto& v : coords)
        out << "C " << v[0] << " " << v[1] << " " << v[2] << "\n";
}

} // namespace fixtures
