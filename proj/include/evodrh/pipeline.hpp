#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "evodrh/persistence.hpp"

namespace evodrh {

struct RunConfig {
    // Input: either a preset name or a structure file.
    std::string preset;       // two_body | four_body | eight_body
    std::string input;        // .xyz or .pdb path
    std::string radii_file;   // optional key=value radii override
    double eta_scale = 1.0;   // weight = eta_scale * radius(element) for files
    double eta = 0.0;         // > 0: uniform kernel width for every point
    double kappa = 2.0;

    // Grid.
    double spacing = 0.25;
    double padding = 0.0;     // 0 => 3 * max weight
    std::int64_t node_budget = 20'000'000;

    // Isovalue schedule; fractions of c_max unless raw_isovalues.
    double sched_start = 0.05, sched_stop = 0.95, sched_step = 0.05;
    std::vector<double> sched_explicit;
    bool raw_isovalues = false;

    // Solvers.
    SolverMode mode = SolverMode::Auto;
    int lanczos_m = 24;
    std::int64_t dense_cap = 6000;
    double zero_rel = 1e-8;
    double residual_tol = 1e-9;
    std::uint64_t seed = 20240214u;
    int workers = 0;          // 0 => hardware concurrency, capped at 8
    bool betti_only = false;  // skip eigensolves; rows carry oracle Betti only
    bool track_persistence = true;
    std::string oracle = "auto"; // gf2 | unionfind | auto
    std::int64_t gf2_limit = 400'000;
    double detector_ratio = 5.0;

    // Outputs.
    std::string out_dir;      // non-empty: flush rows incrementally
    std::string dump_field;   // optional binary field dump path
    bool export_snapshots = false; // OFF surface per row into out_dir

    /// Uniform key=value interface shared by the config file, the C API and
    /// CLI overrides. Unknown keys and malformed values throw Parse errors.
    void set(const std::string& key, const std::string& value);
    static RunConfig from_file(const std::string& path);
    std::map<std::string, std::string> echo() const;
};

struct Interval {
    int dim = 0;       // homology dimension
    int generator = 0;
    double birth = 0.0;
    double death = 0.0; // +inf when open-ended
};

struct DetectorHit {
    int trace = 0;       // 0 = fiedler_T, 1 = fiedler_C, 2 = fiedler_N
    std::size_t row = 0; // jump between row and row+1
    double jump = 0.0;      // |log f[row+1] - log f[row]|
    double reference = 0.0; // median nearby log step used for the comparison
    bool at_transition = false;
};

struct FiltrationResult {
    double c_max = 0.0;
    std::vector<SpectrumSet> rows; // sorted by isovalue
    std::vector<Interval> intervals;
    std::vector<DetectorHit> discontinuities;
    std::vector<std::string> warnings;
    std::map<std::string, double> timings_ms;
    std::map<std::string, std::string> config_echo;
    double max_padding_residual = 0.0; // worst ||Dbar_n pad(v)|| over transfers
    bool persistence_ambiguous = false;
};

/// Execute the full sweep: density, snapshots, operators, spectra (oracle-
/// verified), harmonic persistence. Snapshot jobs fan out to a worker pool;
/// the result is assembled in isovalue order and is deterministic for a
/// fixed config regardless of the worker count.
FiltrationResult run_sweep(const RunConfig& config);

/// Write spectra.csv, intervals.csv, run.json and plot.gp into dir.
void emit_outputs(const FiltrationResult& result, const std::string& dir);

/// Adjacent-step jump detector used on the Fiedler traces: a pair counts as
/// discontinuous when its log-scale step exceeds `ratio` times the median of
/// the nearby steps in its constant-Betti interval (the flanking intervals'
/// steps are pooled across a transition, and the settling pair right after a
/// transition is exempt).
std::vector<DetectorHit> detect_discontinuities(const std::vector<SpectrumSet>& rows,
                                                double ratio);

} // namespace evodrh
