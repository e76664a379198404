#include "evodrh/point_cloud.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

namespace evodrh {

double PointCloud::max_weight() const {
    double m = 0.0;
    for (const auto& p : points) m = std::max(m, p.weight);
    return m;
}

void PointCloud::validate() const {
    if (points.empty()) fail(ErrorCode::InvalidArgument, "point cloud is empty");
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto& p = points[i];
        for (double c : p.position)
            if (!std::isfinite(c))
                fail(ErrorCode::InvalidArgument,
                     "non-finite coordinate at point " + std::to_string(i));
        if (!(p.weight > 0.0) || !std::isfinite(p.weight))
            fail(ErrorCode::InvalidArgument,
                 "non-positive weight at point " + std::to_string(i));
    }
}

std::map<std::string, double> default_vdw_radii() {
    return {{"H", 1.2}, {"C", 1.7}, {"N", 1.55}, {"O", 1.52}, {"S", 1.8}};
}

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::string normalize_element(std::string e) {
    e = trim(e);
    if (e.empty()) return e;
    e[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(e[0])));
    for (std::size_t i = 1; i < e.size(); ++i)
        e[i] = static_cast<char>(std::tolower(static_cast<unsigned char>(e[i])));
    return e;
}

double radius_for(const std::string& element,
                  const std::map<std::string, double>& radii,
                  LoadReport* report) {
    auto it = radii.find(element);
    if (it != radii.end()) return it->second;
    if (report)
        report->warnings.push_back("unknown element '" + element +
                                   "': using radius 1.0");
    return 1.0;
}

} // namespace

std::map<std::string, double> load_radii_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::Io, "cannot open radii file: " + path);
    auto table = default_vdw_radii();
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            fail(ErrorCode::Parse, path + ":" + std::to_string(lineno) +
                                       ": expected element = radius");
        std::string key = normalize_element(line.substr(0, eq));
        double value = 0.0;
        try {
            value = std::stod(trim(line.substr(eq + 1)));
        } catch (const std::exception&) {
            fail(ErrorCode::Parse, path + ":" + std::to_string(lineno) +
                                       ": bad radius value");
        }
        if (!(value > 0.0))
            fail(ErrorCode::Parse, path + ":" + std::to_string(lineno) +
                                       ": radius must be positive");
        table[key] = value;
    }
    return table;
}

PointCloud load_xyz(const std::string& path, double eta_scale,
                    const std::map<std::string, double>& radii,
                    LoadReport* report) {
    if (!(eta_scale > 0.0))
        fail(ErrorCode::InvalidArgument, "eta_scale must be positive");
    std::ifstream in(path);
    if (!in) fail(ErrorCode::Io, "cannot open XYZ file: " + path);

    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);

    // Optional XYZ header: a bare atom count on line 1, free comment on line 2.
    std::size_t first = 0;
    if (!lines.empty()) {
        std::istringstream head(lines[0]);
        long count = -1;
        std::string extra;
        if ((head >> count) && !(head >> extra) && count >= 0 && lines.size() >= 2)
            first = 2;
    }

    PointCloud cloud;
    for (std::size_t i = first; i < lines.size(); ++i) {
        std::string body = trim(lines[i]);
        if (body.empty() || body[0] == '#') continue;
        std::istringstream ls(body);
        std::string element;
        double x, y, z;
        if (!(ls >> element >> x >> y >> z))
            fail(ErrorCode::Parse,
                 path + ":" + std::to_string(i + 1) + ": expected `element x y z`");
        Point p;
        p.label = normalize_element(element);
        p.position = {x, y, z};
        p.weight = eta_scale * radius_for(p.label, radii, report);
        cloud.points.push_back(p);
    }
    if (cloud.points.empty())
        fail(ErrorCode::Parse, path + ": no points found");
    cloud.validate();
    return cloud;
}

PointCloud load_pdb(const std::string& path, double eta_scale,
                    const std::map<std::string, double>& radii,
                    LoadReport* report) {
    if (!(eta_scale > 0.0))
        fail(ErrorCode::InvalidArgument, "eta_scale must be positive");
    std::ifstream in(path);
    if (!in) fail(ErrorCode::Io, "cannot open PDB file: " + path);

    PointCloud cloud;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.rfind("ATOM", 0) != 0 && line.rfind("HETATM", 0) != 0) continue;
        if (line.size() < 54)
            fail(ErrorCode::Parse,
                 path + ":" + std::to_string(lineno) + ": truncated ATOM record");
        Point p;
        try {
            p.position = {std::stod(line.substr(30, 8)),
                          std::stod(line.substr(38, 8)),
                          std::stod(line.substr(46, 8))};
        } catch (const std::exception&) {
            fail(ErrorCode::Parse,
                 path + ":" + std::to_string(lineno) + ": bad coordinates");
        }
        std::string element;
        if (line.size() >= 78) element = normalize_element(line.substr(76, 2));
        if (element.empty()) {
            // Fall back to the first alphabetic character of the atom name.
            std::string name = line.substr(12, 4);
            for (char c : name)
                if (std::isalpha(static_cast<unsigned char>(c))) {
                    element = normalize_element(std::string(1, c));
                    break;
                }
        }
        if (element.empty())
            fail(ErrorCode::Parse,
                 path + ":" + std::to_string(lineno) + ": no element");
        p.label = element;
        p.weight = eta_scale * radius_for(element, radii, report);
        cloud.points.push_back(p);
    }
    if (cloud.points.empty())
        fail(ErrorCode::Parse, path + ": no ATOM/HETATM records");
    cloud.validate();
    return cloud;
}

void write_xyz(const std::string& path, const PointCloud& cloud) {
    std::ofstream out(path);
    if (!out) fail(ErrorCode::Io, "cannot write XYZ file: " + path);
    out << cloud.points.size() << "\n";
    out << "written by evodrh\n";
    out.precision(17);
    for (const auto& p : cloud.points) {
        out << (p.label.empty() ? "X" : p.label) << " " << p.position[0] << " "
            << p.position[1] << " " << p.position[2] << "\n";
    }
    if (!out) fail(ErrorCode::Io, "write failed: " + path);
}

PointCloud make_lattice_cloud(const std::string& preset) {
    PointCloud cloud;
    auto add = [&cloud](double x, double y, double z) {
        cloud.points.push_back(Point{{x, y, z}, 1.0, ""});
    };
    if (preset == "two_body") {
        add(-1.5, 0, 0);
        add(1.5, 0, 0);
    } else if (preset == "four_body") {
        // two_body duplicated at y = +-1.5: a planar square with side 3.
        for (double y : {-1.5, 1.5}) {
            add(-1.5, y, 0);
            add(1.5, y, 0);
        }
    } else if (preset == "eight_body") {
        // four_body duplicated at z = +-1.5: a cube with edge 3.
        for (double z : {-1.5, 1.5})
            for (double y : {-1.5, 1.5}) {
                add(-1.5, y, z);
                add(1.5, y, z);
            }
    } else {
        fail(ErrorCode::InvalidArgument, "unknown preset: " + preset);
    }
    return cloud;
}

void set_uniform_weight(PointCloud& cloud, double eta) {
    if (!(eta > 0.0)) fail(ErrorCode::InvalidArgument, "eta must be positive");
    for (auto& p : cloud.points) p.weight = eta;
}

} // namespace evodrh
