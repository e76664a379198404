#include "evodrh/pipeline.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

namespace evodrh {

namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

bool parse_bool(const std::string& v) {
    if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
    if (v == "0" || v == "false" || v == "no" || v == "off") return false;
    fail(ErrorCode::Parse, "expected a boolean, got '" + v + "'");
}

double parse_double(const std::string& v) {
    try {
        std::size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        fail(ErrorCode::Parse, "expected a number, got '" + v + "'");
    }
}

std::int64_t parse_int(const std::string& v) {
    try {
        std::size_t pos = 0;
        const long long i = std::stoll(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return i;
    } catch (const std::exception&) {
        fail(ErrorCode::Parse, "expected an integer, got '" + v + "'");
    }
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

} // namespace

void RunConfig::set(const std::string& key, const std::string& value) {
    if (key == "preset") preset = value;
    else if (key == "input") input = value;
    else if (key == "radii") radii_file = value;
    else if (key == "eta_scale") eta_scale = parse_double(value);
    else if (key == "eta") eta = parse_double(value);
    else if (key == "kappa") kappa = parse_double(value);
    else if (key == "spacing") spacing = parse_double(value);
    else if (key == "padding") padding = parse_double(value);
    else if (key == "node_budget") node_budget = parse_int(value);
    else if (key == "schedule") {
        sched_explicit.clear();
        if (value.find(':') != std::string::npos) {
            std::istringstream ss(value);
            std::string a, b, c;
            if (!std::getline(ss, a, ':') || !std::getline(ss, b, ':') ||
                !std::getline(ss, c))
                fail(ErrorCode::Parse, "schedule must be start:stop:step or a list");
            sched_start = parse_double(trim(a));
            sched_stop = parse_double(trim(b));
            sched_step = parse_double(trim(c));
        } else {
            std::istringstream ss(value);
            std::string item;
            while (std::getline(ss, item, ','))
                sched_explicit.push_back(parse_double(trim(item)));
            if (sched_explicit.empty())
                fail(ErrorCode::Parse, "empty schedule list");
        }
    } else if (key == "raw_isovalues") raw_isovalues = parse_bool(value);
    else if (key == "mode") {
        if (value == "dense") mode = SolverMode::Dense;
        else if (value == "lanczos") mode = SolverMode::Lanczos;
        else if (value == "auto") mode = SolverMode::Auto;
        else fail(ErrorCode::Parse, "mode must be dense, lanczos or auto");
    } else if (key == "lanczos_m") lanczos_m = static_cast<int>(parse_int(value));
    else if (key == "dense_cap") dense_cap = parse_int(value);
    else if (key == "zero_rel") zero_rel = parse_double(value);
    else if (key == "residual_tol") residual_tol = parse_double(value);
    else if (key == "seed") seed = static_cast<std::uint64_t>(parse_int(value));
    else if (key == "workers") workers = static_cast<int>(parse_int(value));
    else if (key == "betti_only") betti_only = parse_bool(value);
    else if (key == "persistence") track_persistence = parse_bool(value);
    else if (key == "oracle") {
        if (value != "gf2" && value != "unionfind" && value != "auto")
            fail(ErrorCode::Parse, "oracle must be gf2, unionfind or auto");
        oracle = value;
    } else if (key == "gf2_limit") gf2_limit = parse_int(value);
    else if (key == "detector_ratio") detector_ratio = parse_double(value);
    else if (key == "out") out_dir = value;
    else if (key == "dump_field") dump_field = value;
    else if (key == "export_snapshots") export_snapshots = parse_bool(value);
    else fail(ErrorCode::Parse, "unknown config key '" + key + "'");
}

RunConfig RunConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::Io, "cannot open config file: " + path);
    RunConfig cfg;
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
            fail(ErrorCode::Parse,
                 path + ":" + std::to_string(lineno) + ": expected key = value");
        try {
            cfg.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
        } catch (const Error& e) {
            fail(e.code(), path + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    return cfg;
}

std::map<std::string, std::string> RunConfig::echo() const {
    std::map<std::string, std::string> m;
    m["preset"] = preset;
    m["input"] = input;
    m["radii"] = radii_file;
    m["eta_scale"] = fmt(eta_scale);
    m["eta"] = fmt(eta);
    m["kappa"] = fmt(kappa);
    m["spacing"] = fmt(spacing);
    m["padding"] = fmt(padding);
    if (!sched_explicit.empty()) {
        std::string s;
        for (double v : sched_explicit) s += (s.empty() ? "" : ",") + fmt(v);
        m["schedule"] = s;
    } else {
        m["schedule"] = fmt(sched_start) + ":" + fmt(sched_stop) + ":" + fmt(sched_step);
    }
    m["raw_isovalues"] = raw_isovalues ? "true" : "false";
    m["mode"] = mode == SolverMode::Dense ? "dense"
               : mode == SolverMode::Lanczos ? "lanczos" : "auto";
    m["lanczos_m"] = std::to_string(lanczos_m);
    m["dense_cap"] = std::to_string(dense_cap);
    m["zero_rel"] = fmt(zero_rel);
    m["workers"] = std::to_string(workers);
    m["betti_only"] = betti_only ? "true" : "false";
    m["persistence"] = track_persistence ? "true" : "false";
    m["oracle"] = oracle;
    m["detector_ratio"] = fmt(detector_ratio);
    m["seed"] = std::to_string(seed);
    return m;
}

std::vector<DetectorHit> detect_discontinuities(const std::vector<SpectrumSet>& rows,
                                                double ratio) {
    std::vector<DetectorHit> hits;
    const std::size_t n = rows.size();
    if (n < 2) return hits;

    // Maximal intervals of constant Betti triple.
    std::vector<std::pair<std::size_t, std::size_t>> intervals; // [first, last]
    std::size_t start = 0;
    for (std::size_t i = 1; i <= n; ++i) {
        if (i == n || rows[i].betti != rows[start].betti) {
            intervals.emplace_back(start, i - 1);
            start = i;
        }
    }
    std::vector<std::size_t> interval_of(n, 0);
    for (std::size_t k = 0; k < intervals.size(); ++k)
        for (std::size_t i = intervals[k].first; i <= intervals[k].second; ++i)
            interval_of[i] = k;

    // A pair is discontinuous when its relative (log-scale) jump dwarfs the
    // nearby steps: spectral traces decay geometrically, so the log step is
    // the natural unit. The one pair immediately after a Betti transition is
    // exempt: a newborn eigenvalue climbs steeply from near zero, which the
    // spectra treat as continuous behaviour following the jump.
    for (int trace = 0; trace < 3; ++trace) {
        auto value = [&](std::size_t i) {
            return rows[i].fiedler[static_cast<std::size_t>(trace)];
        };
        auto log_step = [&](std::size_t i) {
            const double a = value(i), b = value(i + 1);
            if (!(a > 0.0) || !(b > 0.0)) return 0.0;
            return std::abs(std::log(b / a));
        };
        auto usable = [&](std::size_t i) {
            return std::isfinite(value(i)) && std::isfinite(value(i + 1));
        };
        const double log_floor = 1e-12;

        // Steps within one interval, nearest to pair i first.
        auto local_pool = [&](std::size_t k, std::size_t i, std::size_t budget,
                              std::vector<std::size_t>& out) {
            const std::size_t lo = intervals[k].first, hi = intervals[k].second;
            if (hi == lo) return;
            for (std::size_t d = 0; d < hi - lo && out.size() < budget; ++d) {
                for (long s : {-1L, +1L}) {
                    if (out.size() >= budget) break;
                    const long cand = static_cast<long>(i) + (s < 0 ? -static_cast<long>(d) - 1 : static_cast<long>(d) + 1);
                    if (cand < static_cast<long>(lo) || cand >= static_cast<long>(hi))
                        continue;
                    const std::size_t c = static_cast<std::size_t>(cand);
                    if (c == i || !usable(c)) continue;
                    out.push_back(c);
                }
            }
        };
        auto median_of = [](std::vector<double> v) {
            std::sort(v.begin(), v.end());
            return v[v.size() / 2];
        };

        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (!usable(i)) continue;
            const bool transition = interval_of[i] != interval_of[i + 1];
            bool hit = false;
            double jump = 0.0, reference = 0.0;
            if (transition || i == 0 || interval_of[i - 1] == interval_of[i]) {
                // Jump rule; the settling pair right after a transition is
                // exempt (handled by the condition above).
                std::vector<std::size_t> pool;
                if (transition) {
                    local_pool(interval_of[i], i, 3, pool);
                    local_pool(interval_of[i + 1], i, 3, pool);
                } else {
                    local_pool(interval_of[i], i, 6, pool);
                }
                if (pool.size() >= 3) {
                    std::vector<double> log_steps;
                    for (std::size_t p : pool) log_steps.push_back(log_step(p));
                    const double log_ref = median_of(log_steps);
                    if (log_step(i) > ratio * log_ref + log_floor) {
                        hit = true;
                        jump = log_step(i);
                        reference = log_ref;
                    }
                }
            }
            if (transition && !hit && i >= 1 && i + 2 < n && usable(i - 1) &&
                usable(i + 1)) {
                // Kink rule: a topology change may only break the slope of a
                // trace ("non-differentiable"); compare the step change across
                // the transition with the interior second differences.
                auto step = [&](std::size_t j) { return value(j + 1) - value(j); };
                const bool pre_ok = interval_of[i - 1] == interval_of[i];
                const bool post_ok = interval_of[i + 1] == interval_of[i + 2];
                if (pre_ok && post_ok) {
                    const double mu = std::max(std::abs(step(i) - step(i - 1)),
                                               std::abs(step(i + 1) - step(i)));
                    std::vector<double> refs;
                    auto collect = [&](std::size_t k) {
                        for (std::size_t j = intervals[k].first + 1;
                             j + 1 <= intervals[k].second; ++j) {
                            if (j == i || j - 1 == i || j == i + 1) continue;
                            if (usable(j - 1) && usable(j))
                                refs.push_back(std::abs(step(j) - step(j - 1)));
                        }
                    };
                    collect(interval_of[i]);
                    collect(interval_of[i + 1]);
                    double scale = 0.0;
                    for (std::size_t j = 0; j < n; ++j)
                        if (std::isfinite(value(j)))
                            scale = std::max(scale, std::abs(value(j)));
                    if (refs.size() >= 3 &&
                        mu > ratio * median_of(refs) + 1e-12 * scale) {
                        hit = true;
                        jump = mu;
                        reference = median_of(refs);
                    }
                }
            }
            if (hit) {
                DetectorHit h;
                h.trace = trace;
                h.row = i;
                h.jump = jump;
                h.reference = reference;
                h.at_transition = transition;
                hits.push_back(h);
            }
        }
    }
    return hits;
}

namespace {

struct RowWork {
    SpectrumSet row;
    BettiTriple oracle;
    std::array<HarmonicBasis, 3> bases; // index k-1 holds form degree k = 1,2,3
    SparseD dbar_n1, dbar_n2;           // normal differentials for closedness
    bool computed = false;
};

OracleEngine oracle_engine_of(const std::string& name) {
    if (name == "gf2") return OracleEngine::Gf2;
    if (name == "unionfind") return OracleEngine::UnionFind;
    return OracleEngine::Auto;
}

void append_row_csv(std::ostream& out, const SpectrumSet& row) {
    auto cell = [&out](double v) {
        out << ",";
        if (std::isfinite(v)) out << fmt(v);
    };
    out << fmt(row.c) << "," << row.betti[0] << "," << row.betti[1] << ","
        << row.betti[2];
    if (row.spectra_valid) {
        cell(row.fiedler[0]);
        cell(row.fiedler[1]);
        cell(row.fiedler[2]);
    } else {
        out << ",,,";
    }
    auto lows = [&](const std::vector<double>& v) {
        for (std::size_t i = 0; i < 20; ++i) {
            out << ",";
            if (row.spectra_valid && i < v.size()) out << fmt(v[i]);
        }
    };
    lows(row.T_low);
    lows(row.C_low);
    lows(row.N_low);
    out << "\n";
}

const char* kCsvHeader =
    "c,beta0,beta1,beta2,fiedler_T,fiedler_C,fiedler_N";

std::string csv_header() {
    std::string h = kCsvHeader;
    for (const char* p : {"T", "C", "N"})
        for (int i = 1; i <= 20; ++i) h += "," + std::string(p) + "_" + std::to_string(i);
    return h + "\n";
}

} // namespace

FiltrationResult run_sweep(const RunConfig& config) {
    const auto t_total = Clock::now();
    FiltrationResult result;
    result.config_echo = config.echo();

    // ---- input cloud -------------------------------------------------------
    PointCloud cloud;
    LoadReport report;
    if (!config.preset.empty() && !config.input.empty())
        fail(ErrorCode::InvalidArgument, "give either a preset or an input file");
    if (!config.preset.empty()) {
        cloud = make_lattice_cloud(config.preset);
    } else if (!config.input.empty()) {
        const auto radii = config.radii_file.empty() ? default_vdw_radii()
                                                     : load_radii_table(config.radii_file);
        const std::string ext = fs::path(config.input).extension().string();
        if (ext == ".pdb")
            cloud = load_pdb(config.input, config.eta_scale, radii, &report);
        else
            cloud = load_xyz(config.input, config.eta_scale, radii, &report);
    } else {
        fail(ErrorCode::InvalidArgument, "no input: set preset or input");
    }
    if (config.eta > 0.0) set_uniform_weight(cloud, config.eta);
    for (auto& w : report.warnings) result.warnings.push_back(w);

    // ---- density field and ambient mesh ------------------------------------
    const auto t_field = Clock::now();
    SampleOptions sopt;
    sopt.kappa = config.kappa;
    sopt.node_budget = config.node_budget;
    const double padding =
        config.padding > 0.0 ? config.padding : 3.0 * cloud.max_weight();
    const DensityField field = sample_grid(cloud, config.spacing, padding, sopt);
    result.c_max = field.c_max;
    if (field.boundary_layer_max() >= 1e-3 * field.c_max)
        result.warnings.push_back("density does not decay below 1e-3*c_max at the box edge");
    if (!config.dump_field.empty()) write_field(config.dump_field, field);
    result.timings_ms["density"] = ms_since(t_field);

    // ---- schedule -----------------------------------------------------------
    std::vector<double> fractions = config.sched_explicit;
    if (fractions.empty()) {
        if (!(config.sched_step > 0.0))
            fail(ErrorCode::InvalidArgument, "schedule step must be positive");
        for (double f = config.sched_start; f <= config.sched_stop + 1e-12;
             f += config.sched_step)
            fractions.push_back(f);
    }
    std::vector<double> isovalues;
    for (double f : fractions) {
        const double c = config.raw_isovalues ? f : f * field.c_max;
        if (!(c > 0.0) || !(c < field.c_max))
            fail(ErrorCode::InvalidArgument,
                 "schedule value " + fmt(f) + " falls outside (0, c_max)");
        isovalues.push_back(c);
    }
    if (isovalues.empty())
        fail(ErrorCode::InvalidArgument, "schedule produced no isovalues");
    for (std::size_t i = 1; i < isovalues.size(); ++i)
        if (!(isovalues[i] > isovalues[i - 1]))
            fail(ErrorCode::InvalidArgument, "schedule must be strictly increasing");
    const std::size_t n_rows = isovalues.size();

    // Cells whose density can never reach a scheduled threshold (with slack
    // for the pinch scan) carry no kept simplex; dropping them keeps fine
    // grids over large mostly-empty boxes affordable.
    const auto t_mesh = Clock::now();
    const double mask_threshold =
        std::max(0.0, field.c_max - isovalues.back() - 0.12 * field.c_max);
    const AmbientMesh mesh = build_ambient(field, mask_threshold);
    result.timings_ms["mesh"] = ms_since(t_mesh);

    // ---- incremental writer -------------------------------------------------
    std::ofstream stream_csv;
    if (!config.out_dir.empty()) {
        fs::create_directories(config.out_dir);
        stream_csv.open(fs::path(config.out_dir) / "spectra.csv");
        stream_csv << csv_header();
        stream_csv.flush();
    }

    // ---- snapshot jobs ------------------------------------------------------
    SpectraParams sparams;
    sparams.mode = config.mode;
    sparams.lanczos_m = config.lanczos_m;
    sparams.dense_cap = config.dense_cap;
    sparams.zero_rel = config.zero_rel;
    sparams.residual_tol = config.residual_tol;
    sparams.seed = config.seed;
    const OracleEngine engine = oracle_engine_of(config.oracle);

    std::vector<RowWork> work(n_rows);
    std::mutex mtx;
    std::condition_variable cv;
    std::size_t next_consumed = 0; // fold frontier, guarded by mtx
    std::atomic<std::size_t> next_job{0};
    std::exception_ptr first_error;

    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const int n_workers =
        config.workers > 0 ? config.workers : static_cast<int>(std::min(hw, 8u));
    const std::size_t window = static_cast<std::size_t>(n_workers) + 2;

    // Vertex-rule complexes pass through non-manifold "pinch" windows around
    // merges (blobs sharing only a vertex): the complex homology and the
    // tangential spectra stay correct there, but the normal-side harmonic
    // spaces lose their Betti identification (Lefschetz duality needs a
    // manifold). Persistence bases therefore come from the nearest following
    // isovalue on a fixed microgrid at which no pinch remains.
    const double pinch_grid = 1e-3 * field.c_max;

    auto compute_bases = [&](RowWork& w, const SnapshotComplex& snap,
                             const DecOperators& ops) {
        for (int k = 1; k <= 3; ++k) {
            const std::int64_t expect = w.oracle.beta[static_cast<std::size_t>(3 - k)];
            if (expect > 0 || k == 3) {
                w.bases[static_cast<std::size_t>(k - 1)] =
                    harmonic_basis(mesh, snap, ops, k, sparams, expect);
            } else {
                // Empty basis still carries the interior DOF keys.
                HarmonicBasis hb;
                hb.k = k;
                const auto& ids = (k == 1) ? snap.edges : snap.tris;
                const auto& bnd = (k == 1) ? snap.bnd_edge : snap.bnd_tri;
                for (Index a : ids)
                    if (!bnd[static_cast<std::size_t>(a)]) hb.dof_ambient.push_back(a);
                hb.vectors.resize(static_cast<Eigen::Index>(hb.dof_ambient.size()), 0);
                w.bases[static_cast<std::size_t>(k - 1)] = std::move(hb);
            }
        }
        w.dbar_n1 = ops.normal[1].Dbar;
        w.dbar_n2 = ops.normal[2].Dbar;
    };

    auto job = [&](std::size_t idx) {
        RowWork& w = work[idx];
        const SnapshotComplex snap = extract_snapshot(mesh, field, isovalues[idx]);
        w.oracle = oracle_betti(mesh, snap, engine,
                                static_cast<std::size_t>(config.gf2_limit));

        if (config.betti_only) {
            w.row = SpectrumSet{};
            w.row.c = snap.isovalue;
            w.row.betti = w.oracle.beta;
            w.row.fiedler = {std::nan(""), std::nan(""), std::nan("")};
            w.row.spectra_valid = false;
            return;
        }

        const DecOperators ops = assemble_dec(mesh, snap);
        w.row = compute_spectrum_set(ops, snap.isovalue, sparams, &w.oracle.beta);
        if (ops.stars.clipped > 0)
            w.row.notes.push_back("hodge star clipped " +
                                  std::to_string(ops.stars.clipped) + " entries");

        if (w.row.betti != w.oracle.beta) {
            if (w.row.ambiguous) {
                w.row.notes.push_back("ambiguous zero gap: resolved via oracle");
                w.row.betti = w.oracle.beta;
            } else {
                std::string diag;
                if (!config.out_dir.empty()) {
                    const auto path = fs::path(config.out_dir) /
                                      ("mismatch_" + std::to_string(idx) + ".off");
                    export_off(mesh, snap, path.string());
                    diag = "; snapshot dumped to " + path.string();
                }
                fail(ErrorCode::OracleMismatch,
                     "betti from spectra (" + std::to_string(w.row.betti[0]) + "," +
                         std::to_string(w.row.betti[1]) + "," +
                         std::to_string(w.row.betti[2]) + ") != oracle (" +
                         std::to_string(w.oracle.beta[0]) + "," +
                         std::to_string(w.oracle.beta[1]) + "," +
                         std::to_string(w.oracle.beta[2]) + ") at c=" +
                         fmt(snap.isovalue) + diag);
            }
        }

        if (config.track_persistence) {
            bool done = false;
            const std::int64_t comps =
                static_cast<std::int64_t>(connected_components(mesh, snap));
            if (comps == w.oracle.beta[0]) {
                try {
                    compute_bases(w, snap, ops);
                    done = true;
                } catch (const Error& e) {
                    if (e.code() != ErrorCode::OracleMismatch) throw;
                }
            }
            // Scan forward on the absolute microgrid (monotone across rows,
            // so the basis chain stays nested).
            double cstar = isovalues[idx];
            for (int attempt = 0; !done; ++attempt) {
                if (attempt >= 80)
                    fail(ErrorCode::Internal,
                         "no manifold snapshot found near c=" + fmt(isovalues[idx]));
                cstar = pinch_grid *
                        std::floor(cstar / pinch_grid + 1.0 + 1e-9);
                if (cstar >= 0.999 * field.c_max)
                    fail(ErrorCode::Internal,
                         "pinch scan ran past c_max at c=" + fmt(isovalues[idx]));
                const SnapshotComplex s2 = extract_snapshot(mesh, field, cstar);
                const BettiTriple o2 = oracle_betti(
                    mesh, s2, engine, static_cast<std::size_t>(config.gf2_limit));
                if (o2.beta != w.oracle.beta) {
                    // The window runs into the next topology change; treat the
                    // row itself as critical.
                    fail(ErrorCode::Internal,
                         "pinched snapshot at c=" + fmt(isovalues[idx]) +
                             " extends into the next transition; refine the schedule");
                }
                const std::int64_t c2 =
                    static_cast<std::int64_t>(connected_components(mesh, s2));
                if (c2 != o2.beta[0]) continue;
                const DecOperators ops2 = assemble_dec(mesh, s2);
                try {
                    compute_bases(w, s2, ops2);
                    done = true;
                    w.row.notes.push_back(
                        "persistence bases taken from manifold snapshot at c=" +
                        fmt(s2.isovalue));
                } catch (const Error& e) {
                    if (e.code() != ErrorCode::OracleMismatch) throw;
                }
            }
        }
        if (config.export_snapshots && !config.out_dir.empty()) {
            const auto path = fs::path(config.out_dir) /
                              ("snapshot_" + std::to_string(idx) + ".off");
            export_off(mesh, snap, path.string());
        }
    };

    auto worker_loop = [&]() {
        for (;;) {
            std::size_t idx;
            {
                std::unique_lock<std::mutex> lk(mtx);
                cv.wait(lk, [&] {
                    return first_error != nullptr ||
                           next_job.load() >= n_rows ||
                           next_job.load() < next_consumed + window;
                });
                if (first_error || next_job.load() >= n_rows) return;
                idx = next_job.fetch_add(1);
                if (idx >= n_rows) return;
            }
            try {
                job(idx);
            } catch (...) {
                std::lock_guard<std::mutex> lk(mtx);
                if (!first_error) first_error = std::current_exception();
                cv.notify_all();
                return;
            }
            {
                std::lock_guard<std::mutex> lk(mtx);
                work[idx].computed = true;
            }
            cv.notify_all();
        }
    };

    const auto t_rows = Clock::now();
    std::vector<std::thread> pool;
    for (int i = 0; i < n_workers; ++i) pool.emplace_back(worker_loop);

    // ---- ordered fold: flush rows, build persistence chains -----------------
    std::array<std::vector<HarmonicBasis>, 3> chains; // by form degree k-1
    for (std::size_t idx = 0; idx < n_rows; ++idx) {
        {
            std::unique_lock<std::mutex> lk(mtx);
            cv.wait(lk, [&] { return work[idx].computed || first_error != nullptr; });
            if (first_error) break;
        }
        RowWork& w = work[idx];
        result.rows.push_back(w.row);
        if (stream_csv.is_open()) {
            append_row_csv(stream_csv, w.row);
            stream_csv.flush();
        }
        if (config.track_persistence && !config.betti_only) {
            for (int k = 1; k <= 3; ++k) {
                auto& chain = chains[static_cast<std::size_t>(k - 1)];
                auto& basis = w.bases[static_cast<std::size_t>(k - 1)];
                if (!chain.empty() && k < 3 && chain.back().dim() > 0) {
                    const SparseD& dn = (k == 1) ? w.dbar_n1 : w.dbar_n2;
                    const double resid = padding_closedness(chain.back(), basis, dn);
                    result.max_padding_residual =
                        std::max(result.max_padding_residual, resid);
                }
                chain.push_back(std::move(basis));
            }
            w.dbar_n1.resize(0, 0);
            w.dbar_n2.resize(0, 0);
        }
        {
            std::lock_guard<std::mutex> lk(mtx);
            next_consumed = idx + 1;
        }
        cv.notify_all();
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
    result.timings_ms["rows"] = ms_since(t_rows);

    // ---- persistence pairing -------------------------------------------------
    if (config.track_persistence && !config.betti_only && n_rows > 0) {
        const auto t_pers = Clock::now();
        int id_offset = 0;
        for (int k = 3; k >= 1; --k) { // homology dims 0, 1, 2
            const auto& chain = chains[static_cast<std::size_t>(k - 1)];
            PersistencePairing pairing = pair_generators(chain, 3 - k, id_offset);
            result.persistence_ambiguous |= pairing.ambiguous;
            for (const auto& g : pairing.generators) {
                Interval iv;
                iv.dim = g.homology_dim;
                iv.generator = g.id;
                iv.birth = result.rows[g.birth_row].c;
                iv.death = g.alive() ? std::numeric_limits<double>::infinity()
                                     : result.rows[g.death_row].c;
                result.intervals.push_back(iv);
                id_offset = std::max(id_offset, g.id + 1);
            }
            // Reconciliation: the generator intervals must reproduce the
            // Betti trace at every row.
            for (std::size_t i = 0; i < n_rows; ++i) {
                std::int64_t alive = 0;
                for (const auto& g : pairing.generators)
                    if (g.birth_row <= i && i < g.death_row) ++alive;
                if (alive != result.rows[i].betti[static_cast<std::size_t>(3 - k)])
                    fail(ErrorCode::Internal,
                         "persistence trace mismatch at row " + std::to_string(i) +
                             " (dim " + std::to_string(3 - k) + ")");
            }
        }
        if (result.max_padding_residual > 1e-9)
            result.warnings.push_back("padding closedness residual " +
                                      fmt(result.max_padding_residual) +
                                      " exceeds 1e-9");
        result.timings_ms["persistence"] = ms_since(t_pers);
    }

    result.discontinuities = detect_discontinuities(result.rows, config.detector_ratio);
    if (result.persistence_ambiguous)
        result.warnings.push_back(
            "transfer matrix has singular values in [1e-8, 1e-6): refine the schedule");
    result.timings_ms["total"] = ms_since(t_total);

    if (!config.out_dir.empty()) emit_outputs(result, config.out_dir);
    return result;
}

void emit_outputs(const FiltrationResult& result, const std::string& dir) {
    fs::create_directories(dir);

    {
        std::ofstream out(fs::path(dir) / "spectra.csv");
        if (!out) fail(ErrorCode::Io, "cannot write spectra.csv");
        out << csv_header();
        for (const auto& row : result.rows) append_row_csv(out, row);
    }
    {
        std::ofstream out(fs::path(dir) / "intervals.csv");
        if (!out) fail(ErrorCode::Io, "cannot write intervals.csv");
        out << "dimension,birth,death,generator\n";
        for (const auto& iv : result.intervals) {
            out << iv.dim << "," << fmt(iv.birth) << ",";
            if (std::isinf(iv.death)) out << "inf";
            else out << fmt(iv.death);
            out << "," << iv.generator << "\n";
        }
    }
    {
        nlohmann::ordered_json j;
        j["c_max"] = result.c_max;
        j["rows"] = result.rows.size();
        j["config"] = result.config_echo;
        j["timings_ms"] = result.timings_ms;
        j["warnings"] = result.warnings;
        j["max_padding_residual"] = result.max_padding_residual;
        j["persistence_ambiguous"] = result.persistence_ambiguous;
        nlohmann::ordered_json hits = nlohmann::ordered_json::array();
        for (const auto& h : result.discontinuities) {
            nlohmann::ordered_json e;
            e["trace"] = (h.trace == 0) ? "fiedler_T" : (h.trace == 1) ? "fiedler_C" : "fiedler_N";
            e["row"] = h.row;
            e["c_from"] = result.rows[h.row].c;
            e["c_to"] = result.rows[h.row + 1].c;
            e["log_jump"] = h.jump;
            e["log_median_step"] = h.reference;
            e["at_betti_transition"] = h.at_transition;
            hits.push_back(e);
        }
        j["discontinuities"] = hits;
        nlohmann::ordered_json notes = nlohmann::ordered_json::array();
        for (std::size_t i = 0; i < result.rows.size(); ++i)
            for (const auto& n : result.rows[i].notes) {
                nlohmann::ordered_json e;
                e["row"] = i;
                e["note"] = n;
                notes.push_back(e);
            }
        j["row_notes"] = notes;
        std::ofstream out(fs::path(dir) / "run.json");
        if (!out) fail(ErrorCode::Io, "cannot write run.json");
        out << j.dump(2) << "\n";
    }
    {
        std::ofstream out(fs::path(dir) / "plot.gp");
        if (!out) fail(ErrorCode::Io, "cannot write plot.gp");
        out << "# gnuplot script: Fiedler values and Betti numbers vs isovalue\n"
               "set datafile separator ','\n"
               "set terminal pngcairo size 1500,500\n"
               "set output 'spectra.png'\n"
               "set multiplot layout 1,3\n"
               "set key top right\n"
               "set xlabel 'c'\n"
               "set y2tics\n"
               "set ytics nomirror\n"
               "plot 'spectra.csv' using 1:5 with points pt 6 title 'fiedler T', \\\n"
               "     'spectra.csv' using 1:2 with lines axes x1y2 title 'beta0'\n"
               "plot 'spectra.csv' using 1:6 with points pt 6 title 'fiedler C', \\\n"
               "     'spectra.csv' using 1:3 with lines axes x1y2 title 'beta1'\n"
               "plot 'spectra.csv' using 1:7 with points pt 6 title 'fiedler N', \\\n"
               "     'spectra.csv' using 1:4 with lines axes x1y2 title 'beta2'\n"
               "unset multiplot\n";
    }
}

} // namespace evodrh
