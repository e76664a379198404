#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"

using namespace evodrh;
using testutil::TempDir;
using testutil::write_text;

TEST_CASE("xyz: single carbon line scales by eta and radius") {
    TempDir tmp("xyz1");
    write_text(tmp.file("c.xyz"), "C 0 0 0\n");
    const PointCloud cloud = load_xyz(tmp.file("c.xyz"), 0.5, default_vdw_radii());
    REQUIRE(cloud.size() == 1);
    CHECK(cloud.points[0].weight == doctest::Approx(0.85).epsilon(1e-12));
    CHECK(cloud.points[0].label == "C");
}

TEST_CASE("xyz: header variant, comments, uniform weight") {
    TempDir tmp("xyz2");
    write_text(tmp.file("two.xyz"),
               "2\ntwo body\nX -1.5 0 0\nX 1.5 0 0\n");
    LoadReport report;
    PointCloud cloud = load_xyz(tmp.file("two.xyz"), 1.0, default_vdw_radii(), &report);
    REQUIRE(cloud.size() == 2);
    CHECK(report.warnings.size() == 2); // unknown element X
    set_uniform_weight(cloud, 1.19);
    CHECK(cloud.points[0].position[0] == doctest::Approx(-1.5));
    CHECK(cloud.points[1].position[0] == doctest::Approx(1.5));
    CHECK(cloud.points[0].weight == doctest::Approx(1.19));
}

TEST_CASE("xyz: benzene weights order carbon above hydrogen") {
    TempDir tmp("xyz3");
    std::string body;
    for (int i = 0; i < 6; ++i) body += "C 1.397 0 0\n";
    for (int i = 0; i < 6; ++i) body += "H 2.481 0 0\n";
    write_text(tmp.file("benzene.xyz"), body);
    const PointCloud cloud = load_xyz(tmp.file("benzene.xyz"), 0.45, default_vdw_radii());
    REQUIRE(cloud.size() == 12);
    CHECK(cloud.points[0].weight == doctest::Approx(0.45 * 1.7));
    CHECK(cloud.points[6].weight == doctest::Approx(0.45 * 1.2));
    CHECK(cloud.points[0].weight > cloud.points[6].weight);
}

TEST_CASE("xyz: parse failure carries the line number") {
    TempDir tmp("xyz4");
    write_text(tmp.file("bad.xyz"), "C 0 0 0\nC nope 0 0\n");
    try {
        load_xyz(tmp.file("bad.xyz"), 1.0, default_vdw_radii());
        FAIL("expected parse error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Parse);
        CHECK(std::string(e.what()).find(":2") != std::string::npos);
    }
}

TEST_CASE("xyz: empty file is an error") {
    TempDir tmp("xyz5");
    write_text(tmp.file("empty.xyz"), "");
    CHECK_THROWS_AS(load_xyz(tmp.file("empty.xyz"), 1.0, default_vdw_radii()), Error);
}

TEST_CASE("xyz round-trip reproduces positions and weights") {
    TempDir tmp("xyz6");
    PointCloud cloud = make_lattice_cloud("four_body");
    set_uniform_weight(cloud, 1.19);
    for (auto& p : cloud.points) p.label = "C";
    write_xyz(tmp.file("rt.xyz"), cloud);
    const PointCloud back = load_xyz(tmp.file("rt.xyz"), 1.19 / 1.7, default_vdw_radii());
    REQUIRE(back.size() == cloud.size());
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        for (int a = 0; a < 3; ++a)
            CHECK(back.points[i].position[a] ==
                  doctest::Approx(cloud.points[i].position[a]).epsilon(1e-12));
        CHECK(back.points[i].weight == doctest::Approx(cloud.points[i].weight).epsilon(1e-12));
    }
}

TEST_CASE("pdb: minimal ATOM records with element column") {
    TempDir tmp("pdb1");
    write_text(tmp.file("m.pdb"),
               "ATOM      1  C   MOL A   1       1.000   2.000   3.000  1.00  0.00"
               "           C \n"
               "HETATM    2  O1  MOL A   1      -1.000   0.000   0.500  1.00  0.00"
               "           O \n"
               "END\n");
    const PointCloud cloud = load_pdb(tmp.file("m.pdb"), 1.0, default_vdw_radii());
    REQUIRE(cloud.size() == 2);
    CHECK(cloud.points[0].label == "C");
    CHECK(cloud.points[0].position[1] == doctest::Approx(2.0));
    CHECK(cloud.points[1].label == "O");
    CHECK(cloud.points[1].weight == doctest::Approx(1.52));
}

TEST_CASE("radii override file on top of the builtin table") {
    TempDir tmp("radii");
    write_text(tmp.file("r.txt"), "# custom\nC = 2.0\nXx = 0.7\n");
    const auto table = load_radii_table(tmp.file("r.txt"));
    CHECK(table.at("C") == doctest::Approx(2.0));
    CHECK(table.at("Xx") == doctest::Approx(0.7));
    CHECK(table.at("H") == doctest::Approx(1.2)); // builtin preserved
}

TEST_CASE("presets: exact point sets of the lattice families") {
    const PointCloud two = make_lattice_cloud("two_body");
    REQUIRE(two.size() == 2);
    CHECK(two.points[0].position == Vec3{-1.5, 0, 0});
    CHECK(two.points[1].position == Vec3{1.5, 0, 0});

    const PointCloud four = make_lattice_cloud("four_body");
    REQUIRE(four.size() == 4);
    for (const auto& p : four.points) {
        CHECK(std::abs(p.position[0]) == doctest::Approx(1.5));
        CHECK(std::abs(p.position[1]) == doctest::Approx(1.5));
        CHECK(p.position[2] == doctest::Approx(0.0));
    }

    const PointCloud eight = make_lattice_cloud("eight_body");
    REQUIRE(eight.size() == 8);
    for (const auto& p : eight.points)
        for (int a = 0; a < 3; ++a) CHECK(std::abs(p.position[a]) == doctest::Approx(1.5));

    CHECK_THROWS_AS(make_lattice_cloud("nine_body"), Error);
}

TEST_CASE("presets are symmetric under the stated reflections") {
    auto contains = [](const PointCloud& c, const Vec3& q) {
        for (const auto& p : c.points) {
            bool same = true;
            for (int a = 0; a < 3; ++a)
                if (std::abs(p.position[a] - q[a]) > 1e-15) same = false;
            if (same) return true;
        }
        return false;
    };
    for (const char* name : {"two_body", "four_body", "eight_body"}) {
        const PointCloud c = make_lattice_cloud(name);
        for (const auto& p : c.points) {
            CHECK(contains(c, {-p.position[0], p.position[1], p.position[2]}));
            if (std::string(name) != "two_body")
                CHECK(contains(c, {p.position[0], -p.position[1], p.position[2]}));
            if (std::string(name) == "eight_body")
                CHECK(contains(c, {p.position[0], p.position[1], -p.position[2]}));
        }
    }
}

TEST_CASE("cloud validation rejects bad inputs") {
    PointCloud empty;
    CHECK_THROWS_AS(empty.validate(), Error);
    PointCloud bad;
    bad.points.push_back({{0, 0, 0}, -1.0, ""});
    CHECK_THROWS_AS(bad.validate(), Error);
}
