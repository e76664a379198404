#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "evodrh/dec.hpp"
#include "evodrh/eigensolve.hpp"

namespace evodrh {

enum class SolverMode { Dense, Lanczos, Auto };

struct SpectraParams {
    SolverMode mode = SolverMode::Auto;
    int lanczos_m = 24;
    Eigen::Index dense_cap = 6000;  // hard limit for explicit dense mode
    Eigen::Index auto_dense = 1200; // auto switches to Lanczos above this
    double zero_rel = 1e-8;    // eps_zero = zero_rel * max(1, spectral scale)
    double residual_tol = 1e-9;
    std::uint64_t seed = 20240214u;
};

/// Singular values of Dbar (the domain-side convention: the spectrum of
/// Dbar^T Dbar, so zeros count kernel dimensions of the k-cochain space).
/// Dense mode returns the whole sorted list; Lanczos the smallest m.
std::vector<double> singular_spectrum(const NormalizedOperator& op,
                                      const SpectraParams& params);

/// Zero multiplicity of a sorted eigenvalue list lambda with the relative
/// threshold; flags an ambiguity when a value falls inside [eps, 10 eps).
struct ZeroCount {
    std::int64_t count = 0;
    bool ambiguous = false;
    double eps = 0.0;
};
ZeroCount count_zeros(const std::vector<double>& lambdas_sorted, double scale,
                      double zero_rel);

/// Betti numbers from the three full tangential spectra (sigma lists, domain
/// side): beta0 = zmult(T); beta1 = zmult(C) - rank(D0); beta2 = zmult(N) -
/// rank(D1). Requires full spectra (dense mode).
struct BettiFromSpectra {
    std::array<std::int64_t, 3> betti{};
    bool ambiguous = false;
};
BettiFromSpectra betti_from_spectra(const std::vector<double>& T,
                                    const std::vector<double>& C,
                                    const std::vector<double>& N, double zero_rel);

/// Hodge Laplacian Lbar_k = Dbar_k^T Dbar_k + Dbar_{k-1} Dbar_{k-1}^T for one
/// boundary condition (terms absent at k = 0 and k = 3). Returns eigenvalues
/// of the normalized operator == generalized eigenvalues of (L_k, S_k).
SparseD assemble_laplacian(const DecOperators& ops, BoundaryCondition bc, int k);
std::vector<double> laplacian_spectrum(const DecOperators& ops, BoundaryCondition bc,
                                       int k, const SpectraParams& params);

/// Everything one filtration row reports.
struct SpectrumSet {
    double c = 0.0;
    std::array<std::int64_t, 3> zero_mult{};  // zmult of T / C / N (domain side)
    std::array<std::int64_t, 3> betti{};
    std::array<double, 3> fiedler{};          // lambda = sigma^2; NaN when absent
    std::vector<double> T_low, C_low, N_low;  // lowest singular values (with zeros)
    std::vector<double> lap1_low; // smallest eigenvalues of Lbar_1 (diagnostics)
    std::vector<double> curl_low; // curl-family eigenvalues found in that window
    bool ambiguous = false;
    bool spectra_valid = false;  // false for betti-only rows
    std::vector<std::string> notes;
};

/// Per-snapshot spectral computation. Dense when every operator side fits
/// under dense_cap, otherwise certified shift-invert windows on Lbar_0,
/// Lbar_1 and Dbar_2 Dbar_2^T. `betti_hint` (e.g. from the homology oracle)
/// only sizes the Lanczos window; all reported numbers are spectral.
SpectrumSet compute_spectrum_set(const DecOperators& ops, double c,
                                 const SpectraParams& params,
                                 const std::array<std::int64_t, 3>* betti_hint = nullptr);

} // namespace evodrh
