// Acceptance suite: runs the desk-scale systems end to end and prints one
// pass/fail line per criterion. Returns the number of failed criteria.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "evodrh/homology.hpp"
#include "evodrh/pipeline.hpp"
#include "acceptance_fixtures.hpp"

using namespace evodrh;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(const std::string& name, bool pass, const std::string& detail = "") {
    std::printf("%s  %s%s%s\n", pass ? "PASS" : "FAIL", name.c_str(),
                detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

/// Distinct consecutive Betti triples of a run.
std::vector<std::array<std::int64_t, 3>> betti_sequence(const FiltrationResult& r) {
    std::vector<std::array<std::int64_t, 3>> seq;
    for (const auto& row : r.rows)
        if (seq.empty() || seq.back() != row.betti) seq.push_back(row.betti);
    return seq;
}

std::string seq_str(const std::vector<std::array<std::int64_t, 3>>& seq) {
    std::ostringstream os;
    for (const auto& b : seq) os << "(" << b[0] << "," << b[1] << "," << b[2] << ")";
    return os.str();
}

/// Rows bracketing the transition where `pick` changes; returns fractions of
/// c_max (last row before, first row after).
struct Bracket {
    double before = -1.0, after = -1.0;
    std::size_t row = 0;
    bool found = false;
};
template <typename Pick>
Bracket find_transition(const FiltrationResult& r, Pick pick) {
    Bracket b;
    for (std::size_t i = 0; i + 1 < r.rows.size(); ++i) {
        if (pick(r.rows[i]) != pick(r.rows[i + 1])) {
            b.before = r.rows[i].c / r.c_max;
            b.after = r.rows[i + 1].c / r.c_max;
            b.row = i;
            b.found = true;
            return b;
        }
    }
    return b;
}

bool has_hit(const FiltrationResult& r, int trace, std::size_t row) {
    for (const auto& h : r.discontinuities)
        if (h.trace == trace && h.row == row) return true;
    return false;
}
int count_hits(const FiltrationResult& r, int trace) {
    int n = 0;
    for (const auto& h : r.discontinuities)
        if (h.trace == trace) ++n;
    return n;
}

const fs::path kOutRoot = fs::temp_directory_path() / "evodrh_acceptance";

RunConfig base_config(const std::string& tag) {
    RunConfig cfg;
    cfg.out_dir = (kOutRoot / tag).string();
    return cfg;
}

// --------------------------------------------------------------------------
// Criteria 1-3: the lattice families.
// --------------------------------------------------------------------------

FiltrationResult run_two_body() {
    RunConfig cfg = base_config("two_body");
    cfg.preset = "two_body";
    cfg.eta = 1.19;
    cfg.spacing = 0.3;
    cfg.sched_start = 0.10;
    cfg.sched_stop = 0.94;
    cfg.sched_step = 0.04;
    return run_sweep(cfg);
}

void criterion1(const FiltrationResult& r) {
    bool ok = true;
    std::string detail;

    std::vector<std::array<std::int64_t, 3>> want = {{2, 0, 0}, {1, 0, 0}};
    const auto seq = betti_sequence(r);
    if (seq != want) {
        ok = false;
        detail = "betti sequence " + seq_str(seq);
    }
    const Bracket t = find_transition(r, [](const SpectrumSet& s) { return s.betti[0]; });
    if (!t.found || t.before < 0.55 || t.after > 0.70) {
        ok = false;
        detail += " transition at (" + fmt(t.before) + "," + fmt(t.after) + ")";
    }
    // fiedler_T discontinuous exactly at the transition row.
    if (!(count_hits(r, 0) == 1 && t.found && has_hit(r, 0, t.row))) {
        ok = false;
        detail += " fiedler_T hits=" + std::to_string(count_hits(r, 0));
    }
    if (count_hits(r, 1) != 0 || count_hits(r, 2) != 0) {
        ok = false;
        detail += " fiedler_C hits=" + std::to_string(count_hits(r, 1)) +
                  " fiedler_N hits=" + std::to_string(count_hits(r, 2));
    }
    report("criterion 1: two-body beta0 2->1 in [0.55,0.70], fiedler_T jump only", ok,
           detail.empty() ? "transition in (" + fmt(t.before) + "," + fmt(t.after) + ")"
                          : detail);
}

FiltrationResult run_four_body() {
    RunConfig cfg = base_config("four_body");
    cfg.preset = "four_body";
    cfg.eta = 1.19;
    cfg.spacing = 0.3;
    cfg.sched_start = 0.10;
    cfg.sched_stop = 0.92;
    cfg.sched_step = 0.03;
    return run_sweep(cfg);
}

void criterion2(const FiltrationResult& r) {
    bool ok = true;
    std::string detail;
    std::vector<std::array<std::int64_t, 3>> want = {{4, 0, 0}, {1, 1, 0}, {1, 0, 0}};
    const auto seq = betti_sequence(r);
    if (seq != want) {
        ok = false;
        detail = "betti sequence " + seq_str(seq);
    }
    // The paper's x-axis values (c = 0.80 and 1.02 with max(rho) ~ 1.2) map to
    // fractions 0.80/1.2 and 1.02/1.2; the stated +-0.08 c_max tolerance
    // applies to the fractions.
    const Bracket merge = find_transition(r, [](const SpectrumSet& s) { return s.betti[0]; });
    const double merge_lo = 0.80 / 1.2 - 0.08, merge_hi = 0.80 / 1.2 + 0.08;
    if (!merge.found || merge.after < merge_lo || merge.before > merge_hi) {
        ok = false;
        detail += " beta0 transition at (" + fmt(merge.before) + "," + fmt(merge.after) + ")";
    }
    Bracket death;
    for (std::size_t i = 0; i + 1 < r.rows.size(); ++i)
        if (r.rows[i].betti[1] == 1 && r.rows[i + 1].betti[1] == 0) {
            death.before = r.rows[i].c / r.c_max;
            death.after = r.rows[i + 1].c / r.c_max;
            death.row = i;
            death.found = true;
        }
    const double death_lo = 1.02 / 1.2 - 0.08, death_hi = 1.02 / 1.2 + 0.08;
    if (!death.found || death.after < death_lo || death.before > death_hi) {
        ok = false;
        detail += " beta1 death at (" + fmt(death.before) + "," + fmt(death.after) + ")";
    }
    // fiedler_C jumps at the beta1 death but not at the beta1 birth.
    const Bracket birth = find_transition(r, [](const SpectrumSet& s) { return s.betti[1]; });
    if (!(death.found && has_hit(r, 1, death.row))) {
        ok = false;
        detail += " no fiedler_C hit at the beta1 death";
    }
    if (birth.found && has_hit(r, 1, birth.row)) {
        ok = false;
        detail += " fiedler_C hit at the beta1 birth";
    }
    report("criterion 2: four-body (4,0,0)->(1,1,0)->(1,0,0), fiedler_C at death only",
           ok,
           detail.empty() ? "merge (" + fmt(merge.before) + "," + fmt(merge.after) +
                                "), death (" + fmt(death.before) + "," +
                                fmt(death.after) + ")"
                          : detail);
}

FiltrationResult run_eight_body() {
    RunConfig cfg = base_config("eight_body");
    cfg.preset = "eight_body";
    cfg.eta = 1.53;
    cfg.spacing = 0.3;
    // Fine where the transitions live, coarse across the wide beta1 plateau
    // (each of those rows carries a large interior eigenproblem).
    cfg.sched_explicit = {0.06, 0.09, 0.12, 0.15, 0.18, 0.21,  0.24,  0.27,
                          0.31, 0.36, 0.41, 0.45, 0.475, 0.50, 0.525, 0.55,
                          0.575, 0.60, 0.625, 0.65, 0.675};
    return run_sweep(cfg);
}

void criterion3(const FiltrationResult& r) {
    bool ok = true;
    std::string detail;
    std::vector<std::array<std::int64_t, 3>> want = {
        {8, 0, 0}, {1, 5, 0}, {1, 0, 1}, {1, 0, 0}};
    const auto seq = betti_sequence(r);
    if (seq != want) {
        ok = false;
        detail = "betti sequence " + seq_str(seq);
    }
    Bracket death;
    for (std::size_t i = 0; i + 1 < r.rows.size(); ++i)
        if (r.rows[i].betti[2] == 1 && r.rows[i + 1].betti[2] == 0) {
            death.row = i;
            death.found = true;
        }
    if (!(death.found && has_hit(r, 2, death.row))) {
        ok = false;
        detail += " no fiedler_N hit at the beta2 death";
    }
    report("criterion 3: eight-body (8,0,0)->(1,5,0)->(1,0,1)->(1,0,0), fiedler_N hit",
           ok, detail.empty() ? seq_str(seq) : detail);
}

// --------------------------------------------------------------------------
// Criteria 4-5: molecules (qualitative Betti sequences, oracle route).
// --------------------------------------------------------------------------

void criterion4() {
    const fs::path xyz = kOutRoot / "benzene.xyz";
    fixtures::write_benzene_xyz(xyz.string());
    RunConfig cfg = base_config("benzene");
    cfg.input = xyz.string();
    cfg.eta_scale = 0.45;
    cfg.spacing = 0.13;
    cfg.betti_only = true;
    cfg.track_persistence = false;
    cfg.oracle = "auto";
    cfg.sched_start = 0.10;
    cfg.sched_stop = 0.88;
    cfg.sched_step = 0.02;
    const FiltrationResult r = run_sweep(cfg);

    std::vector<std::int64_t> b0_seq, b1_seq;
    for (const auto& row : r.rows) {
        if (b0_seq.empty() || b0_seq.back() != row.betti[0]) b0_seq.push_back(row.betti[0]);
        if (b1_seq.empty() || b1_seq.back() != row.betti[1]) b1_seq.push_back(row.betti[1]);
    }
    bool ok = (b0_seq == std::vector<std::int64_t>{12, 6, 1}) &&
              (b1_seq == std::vector<std::int64_t>{0, 1, 0});
    for (const auto& row : r.rows) ok = ok && row.betti[2] == 0;
    std::ostringstream os;
    os << "beta0:";
    for (auto v : b0_seq) os << " " << v;
    os << ", beta1:";
    for (auto v : b1_seq) os << " " << v;
    report("criterion 4: benzene beta0 12->6->1 and beta1 0->1->0", ok, os.str());
}

void criterion5() {
    const fs::path xyz = kOutRoot / "c60.xyz";
    fixtures::write_c60_xyz(xyz.string());
    RunConfig cfg = base_config("c60");
    cfg.input = xyz.string();
    cfg.eta_scale = 0.5;
    cfg.spacing = 0.17;
    cfg.betti_only = true;
    cfg.track_persistence = false;
    cfg.oracle = "auto";
    std::vector<double> sched;
    for (double f = 0.05; f < 0.30; f += 0.01) sched.push_back(f);
    for (double f = 0.30; f <= 0.72; f += 0.025) sched.push_back(f);
    cfg.sched_explicit = sched;
    const FiltrationResult r = run_sweep(cfg);

    std::vector<std::int64_t> b0_seq, b1_seq, b2_seq;
    for (const auto& row : r.rows) {
        if (b0_seq.empty() || b0_seq.back() != row.betti[0]) b0_seq.push_back(row.betti[0]);
        if (b1_seq.empty() || b1_seq.back() != row.betti[1]) b1_seq.push_back(row.betti[1]);
        if (b2_seq.empty() || b2_seq.back() != row.betti[2]) b2_seq.push_back(row.betti[2]);
    }
    bool ok = b0_seq == std::vector<std::int64_t>{60, 12, 1};
    // beta1 peaks at 31 and passes through 19 on the way down.
    std::int64_t peak = 0;
    for (auto v : b1_seq) peak = std::max(peak, v);
    ok = ok && peak == 31;
    bool saw31 = false, ok19 = false;
    for (auto v : b1_seq) {
        if (v == 31) saw31 = true;
        if (saw31 && v == 19) ok19 = true;
    }
    ok = ok && ok19;
    ok = ok && b2_seq == std::vector<std::int64_t>{0, 1};
    std::ostringstream os;
    os << "beta0:";
    for (auto v : b0_seq) os << " " << v;
    os << "; beta1:";
    for (auto v : b1_seq) os << " " << v;
    os << "; beta2:";
    for (auto v : b2_seq) os << " " << v;
    report("criterion 5: C60 beta0 60->12->1, beta1 peak 31 through 19, beta2 0->1",
           ok, os.str());
}

// --------------------------------------------------------------------------
// Criteria 6-8, 10, 11: properties over every snapshot of systems 1-3 plus
// randomized small clouds.
// --------------------------------------------------------------------------

struct SystemReplay {
    std::string name;
    PointCloud cloud;
    double spacing;
    const FiltrationResult* result;
};

double max_abs(const SparseD& m) {
    double v = 0;
    for (int col = 0; col < m.outerSize(); ++col)
        for (SparseD::InnerIterator it(m, col); it; ++it)
            v = std::max(v, std::abs(it.value()));
    return v;
}
std::int64_t max_abs_int(const SparseI& m) {
    std::int64_t v = 0;
    for (int col = 0; col < m.outerSize(); ++col)
        for (SparseI::InnerIterator it(m, col); it; ++it)
            v = std::max(v, std::abs(it.value()));
    return v;
}

struct PropertyTally {
    std::int64_t snapshots = 0;
    std::int64_t chain_fail = 0;      // criterion 6
    std::int64_t betti_fail = 0;      // criterion 7 (spectra vs oracle)
    std::int64_t euler_fail = 0;      // criterion 7 (Euler identity)
    std::int64_t union_full = 0;      // criterion 8 bookkeeping
    std::int64_t union_window = 0;
    std::int64_t union_fail = 0;
    std::string first_fail;
};

void check_snapshot(PropertyTally& tally, const AmbientMesh& mesh,
                    const SnapshotComplex& snap, const SpectrumSet* row,
                    const std::string& where) {
    ++tally.snapshots;
    auto note = [&](const std::string& what) {
        if (tally.first_fail.empty()) tally.first_fail = what + " at " + where;
    };

    const BettiTriple oracle = oracle_betti(mesh, snap);
    if (snap.empty()) {
        if (oracle.beta != std::array<std::int64_t, 3>{0, 0, 0}) {
            ++tally.betti_fail;
            note("nonzero betti on empty snapshot");
        }
        return;
    }

    const DecOperators ops = assemble_dec(mesh, snap);

    // Criterion 6: exact integer chain property and the normalized bound.
    const SparseI d1d0 = (ops.incidence.D1 * ops.incidence.D0).pruned();
    const SparseI d2d1 = (ops.incidence.D2 * ops.incidence.D1).pruned();
    if (max_abs_int(d1d0) != 0 || max_abs_int(d2d1) != 0) {
        ++tally.chain_fail;
        note("integer chain property");
    }
    for (int k = 0; k + 1 < 3; ++k) {
        for (const NormalizedOperator* set :
             {&ops.tangential[0], &ops.normal[0]}) {
            const SparseD prod = (set[k + 1].Dbar * set[k].Dbar).pruned();
            const double scale =
                std::max(1.0, max_abs(set[k + 1].Dbar) * max_abs(set[k].Dbar));
            if (max_abs(prod) > 1e-12 * scale) {
                ++tally.chain_fail;
                note("normalized chain bound");
            }
        }
    }

    // Criterion 7: spectra Betti equals the oracle, Euler identity exact.
    SpectraParams params;
    const SpectrumSet computed =
        row ? *row : compute_spectrum_set(ops, snap.isovalue, params, &oracle.beta);
    if (computed.betti != oracle.beta) {
        ++tally.betti_fail;
        note("betti_from_spectra != oracle");
    }
    if (oracle.beta[0] - oracle.beta[1] + oracle.beta[2] !=
        snap.euler_characteristic()) {
        ++tally.euler_fail;
        note("Euler identity");
    }

    // Criterion 8: Laplacian union property. Full multiset check when every
    // side is dense-eligible, else the smallest-window check against the
    // independently solved factors.
    const std::int64_t V = ops.tangential[0].Dbar.cols();
    const std::int64_t E = ops.tangential[0].Dbar.rows();
    const std::int64_t F = ops.tangential[1].Dbar.rows();
    SpectraParams dp;
    dp.mode = SolverMode::Dense;
    if (std::max({V, E, F}) <= 1200) {
        ++tally.union_full;
        const auto T = singular_spectrum(ops.tangential[0], dp);
        const auto C = singular_spectrum(ops.tangential[1], dp);
        const auto lap1 = laplacian_spectrum(ops, BoundaryCondition::Tangential, 1, dp);
        const double scale =
            std::max({1.0, T.empty() ? 0.0 : T.back() * T.back(),
                      C.empty() ? 0.0 : C.back() * C.back()});
        const double eps = 1e-8 * scale;
        std::vector<double> expected;
        for (double s : T)
            if (s * s > eps) expected.push_back(s * s);
        for (double s : C)
            if (s * s > eps) expected.push_back(s * s);
        std::sort(expected.begin(), expected.end());
        std::vector<double> got;
        for (double v : lap1)
            if (v > eps) got.push_back(v);
        bool same = got.size() == expected.size();
        for (std::size_t i = 0; same && i < got.size(); ++i)
            same = std::abs(got[i] - expected[i]) <= 1e-8 * std::max(1.0, expected[i]);
        if (!same) {
            ++tally.union_fail;
            note("dense union property");
        }
    } else if (computed.spectra_valid && !computed.lap1_low.empty()) {
        ++tally.union_window;
        // merge(zeros, T nonzeros^2, curl values^2) must reproduce the
        // smallest window of Lbar_1.
        const double scale = std::max(1.0, computed.lap1_low.back());
        const double eps = 1e-7 * scale;
        std::vector<double> expected;
        for (std::int64_t z = 0; z < computed.betti[1]; ++z) expected.push_back(0.0);
        for (double s : computed.T_low) {
            const double v = s * s;
            if (v > eps) expected.push_back(v);
        }
        for (double s : computed.C_low) {
            const double v = s * s;
            if (v > eps) expected.push_back(v);
        }
        std::sort(expected.begin(), expected.end());
        bool same = true;
        const std::size_t nw = std::min<std::size_t>(
            {computed.lap1_low.size(), expected.size() + 0});
        for (std::size_t i = 0; i < nw && same; ++i) {
            const double a = computed.lap1_low[i];
            const double b = i < expected.size() ? expected[i] : -1.0;
            if (a <= eps && b <= eps) continue;
            same = b >= 0.0 && std::abs(a - b) <= 1e-6 * std::max(1.0, a);
        }
        if (!same) {
            ++tally.union_fail;
            note("windowed union property");
        }
    }
}

void criteria_properties(const std::vector<SystemReplay>& systems) {
    PropertyTally tally;

    for (const auto& sys : systems) {
        const DensityField field = sample_grid(sys.cloud, sys.spacing,
                                               3.0 * sys.cloud.max_weight());
        const AmbientMesh mesh = build_ambient(field);
        for (const auto& row : sys.result->rows) {
            const SnapshotComplex snap = extract_snapshot(mesh, field, row.c);
            check_snapshot(tally, mesh, snap, &row, sys.name + " c=" + fmt(row.c));
        }
    }

    // 50 randomized small clouds, three isovalues each.
    std::mt19937 rng(4242);
    std::uniform_int_distribution<int> npts(1, 3);
    std::uniform_real_distribution<double> coord(-0.8, 0.8);
    std::uniform_real_distribution<double> weight(0.6, 0.9);
    for (int trial = 0; trial < 50; ++trial) {
        PointCloud cloud;
        const int n = npts(rng);
        for (int i = 0; i < n; ++i)
            cloud.points.push_back({{coord(rng), coord(rng), coord(rng)}, weight(rng), ""});
        const DensityField field = sample_grid(cloud, 0.4, 3.0 * cloud.max_weight());
        const AmbientMesh mesh = build_ambient(field);
        for (double frac : {0.45, 0.65, 0.85}) {
            const SnapshotComplex snap = extract_snapshot(mesh, field, frac * field.c_max);
            check_snapshot(tally, mesh, snap, nullptr,
                           "cloud " + std::to_string(trial) + " f=" + fmt(frac));
        }
    }

    std::ostringstream os;
    os << tally.snapshots << " snapshots; union checks full=" << tally.union_full
       << " windowed=" << tally.union_window;
    if (!tally.first_fail.empty()) os << "; first failure: " << tally.first_fail;
    report("criterion 6: D1 D0 = 0, D2 D1 = 0 exactly; normalized chain <= 1e-12",
           tally.chain_fail == 0, os.str());
    report("criterion 7: betti_from_spectra == oracle and Euler identity (exact)",
           tally.betti_fail == 0 && tally.euler_fail == 0, os.str());
    report("criterion 8: Laplacian spectra are unions of squared singular values",
           tally.union_fail == 0, os.str());
}

// --------------------------------------------------------------------------
// Criterion 9: duality convergence on a solid ball under refinement.
// --------------------------------------------------------------------------

void criterion9() {
    PointCloud cloud;
    cloud.points.push_back({{0, 0, 0}, 1.0, ""});
    std::vector<double> gaps;
    for (double spacing : {0.4, 0.3, 0.2}) {
        const DensityField field = sample_grid(cloud, spacing, 3.0);
        const AmbientMesh mesh = build_ambient(field);
        const SnapshotComplex snap = extract_snapshot(mesh, field, 0.7 * field.c_max);
        const DecOperators ops = assemble_dec(mesh, snap);

        SpectraParams params;
        params.lanczos_m = 16;
        // Tangential gradient: eigenvalues of Lbar_0 (one zero for the ball).
        const SparseD L0 =
            (SparseD(ops.tangential[0].Dbar.transpose()) * ops.tangential[0].Dbar)
                .pruned();
        const EigenPairs t = L0.rows() <= 1200 ? dense_eig(L0)
                                               : lanczos_smallest(L0, 16);
        // Normal divergence side: Dbar_{2,n} Dbar_{2,n}^T over tets (one
        // kernel vector per component).
        const SparseD A2 =
            (ops.normal[2].Dbar * SparseD(ops.normal[2].Dbar.transpose())).pruned();
        const EigenPairs nrm = A2.rows() <= 1200 ? dense_eig(A2)
                                                 : lanczos_smallest(A2, 16);

        auto nonzeros = [](const EigenPairs& p, int count) {
            std::vector<double> out;
            const double scale = p.values.size() ? std::abs(p.values(p.values.size() - 1)) : 1.0;
            for (Eigen::Index i = 0; i < p.values.size(); ++i)
                if (p.values(i) > 1e-8 * std::max(1.0, scale) &&
                    static_cast<int>(out.size()) < count)
                    out.push_back(std::sqrt(std::max(p.values(i), 0.0)));
            return out;
        };
        const auto st = nonzeros(t, 5);
        const auto sn = nonzeros(nrm, 5);
        double gap = 0.0;
        for (std::size_t i = 0; i < 5 && i < st.size() && i < sn.size(); ++i)
            gap += std::abs(st[i] - sn[i]) / st[i];
        gaps.push_back(gap / 5.0);
    }
    const bool ok = gaps.size() == 3 && gaps[1] <= gaps[0] * (1 + 1e-9) &&
                    gaps[2] <= gaps[1] * (1 + 1e-9);
    std::ostringstream os;
    os << "relative gaps at h=0.4/0.3/0.2: " << fmt(gaps[0]) << " " << fmt(gaps[1])
       << " " << fmt(gaps[2]);
    report("criterion 9: tangential/normal duality gap shrinks under refinement", ok,
           os.str());
}

// --------------------------------------------------------------------------
// Criteria 10-11 from the recorded runs.
// --------------------------------------------------------------------------

void criterion10(const std::vector<SystemReplay>& systems) {
    // run_sweep aborts unless the generator intervals reproduce the oracle
    // Betti trace row by row; re-verify here from the emitted intervals.
    bool ok = true;
    std::string detail;
    for (const auto& sys : systems) {
        const FiltrationResult& r = *sys.result;
        for (std::size_t i = 0; i < r.rows.size(); ++i) {
            std::array<std::int64_t, 3> alive = {0, 0, 0};
            for (const auto& iv : r.intervals)
                if (iv.birth <= r.rows[i].c && r.rows[i].c < iv.death)
                    ++alive[static_cast<std::size_t>(iv.dim)];
            if (alive != r.rows[i].betti) {
                ok = false;
                if (detail.empty())
                    detail = sys.name + " row " + std::to_string(i);
            }
        }
    }
    report("criterion 10: persistence intervals reproduce the Betti trace", ok, detail);
}

void criterion11(const std::vector<SystemReplay>& systems) {
    bool ok = true;
    double worst = 0.0;
    for (const auto& sys : systems) {
        worst = std::max(worst, sys.result->max_padding_residual);
        if (sys.result->max_padding_residual > 1e-9) ok = false;
    }
    report("criterion 11: zero-padded transfers stay closed (<= 1e-9)", ok,
           "max residual " + fmt(worst));
}

} // namespace

int main() {
    fs::create_directories(kOutRoot);
    std::printf("evodrh acceptance suite (outputs under %s)\n", kOutRoot.c_str());

    try {
        const FiltrationResult two = run_two_body();
        criterion1(two);
        const FiltrationResult four = run_four_body();
        criterion2(four);
        const FiltrationResult eight = run_eight_body();
        criterion3(eight);
        criterion4();
        criterion5();

        PointCloud two_cloud = make_lattice_cloud("two_body");
        set_uniform_weight(two_cloud, 1.19);
        PointCloud four_cloud = make_lattice_cloud("four_body");
        set_uniform_weight(four_cloud, 1.19);
        PointCloud eight_cloud = make_lattice_cloud("eight_body");
        set_uniform_weight(eight_cloud, 1.53);
        const std::vector<SystemReplay> systems = {
            {"two_body", two_cloud, 0.3, &two},
            {"four_body", four_cloud, 0.3, &four},
            {"eight_body", eight_cloud, 0.3, &eight},
        };
        criteria_properties(systems);
        criterion9();
        criterion10(systems);
        criterion11(systems);
    } catch (const Error& e) {
        report("acceptance run", false, e.what());
    }

    std::printf("%d criterion(s) failed\n", g_failures);
    return g_failures == 0 ? 0 : 1;
}
