#include "evodrh/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace evodrh {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<double> to_sigmas(const Eigen::VectorXd& lambdas) {
    std::vector<double> out(static_cast<std::size_t>(lambdas.size()));
    for (Eigen::Index i = 0; i < lambdas.size(); ++i)
        out[static_cast<std::size_t>(i)] = std::sqrt(std::max(lambdas(i), 0.0));
    return out;
}

SparseD gram_domain(const SparseD& D) { // D^T D
    SparseD At = D.transpose();
    SparseD out = At * D;
    out.makeCompressed();
    return out;
}

SparseD gram_range(const SparseD& D) { // D D^T
    SparseD At = D.transpose();
    SparseD out = D * At;
    out.makeCompressed();
    return out;
}

} // namespace

ZeroCount count_zeros(const std::vector<double>& lambdas_sorted, double scale,
                      double zero_rel) {
    ZeroCount zc;
    zc.eps = zero_rel * std::max(1.0, scale);
    for (double v : lambdas_sorted) {
        if (v <= zc.eps)
            ++zc.count;
        else if (v < 10.0 * zc.eps)
            zc.ambiguous = true;
    }
    return zc;
}

std::vector<double> singular_spectrum(const NormalizedOperator& op,
                                      const SpectraParams& params) {
    if (op.cols() == 0) return {};
    const SparseD A = gram_domain(op.Dbar);
    const bool dense =
        params.mode == SolverMode::Dense ||
        (params.mode == SolverMode::Auto &&
         A.rows() <= std::min(params.auto_dense, params.dense_cap));
    if (params.mode == SolverMode::Dense && A.rows() > params.dense_cap)
        fail(ErrorCode::InvalidArgument,
             "dense mode refused: dimension " + std::to_string(A.rows()) +
                 " exceeds the cap " + std::to_string(params.dense_cap));
    EigenPairs pairs = dense ? dense_eig(A)
                             : lanczos_smallest(A, params.lanczos_m,
                                                params.residual_tol, params.seed);
    return to_sigmas(pairs.values);
}

BettiFromSpectra betti_from_spectra(const std::vector<double>& T,
                                    const std::vector<double>& C,
                                    const std::vector<double>& N, double zero_rel) {
    auto lam = [](const std::vector<double>& s) {
        std::vector<double> l(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) l[i] = s[i] * s[i];
        return l;
    };
    const auto lamT = lam(T), lamC = lam(C), lamN = lam(N);
    auto scale_of = [](const std::vector<double>& l) {
        return l.empty() ? 0.0 : l.back();
    };
    const ZeroCount zT = count_zeros(lamT, scale_of(lamT), zero_rel);
    const ZeroCount zC = count_zeros(lamC, scale_of(lamC), zero_rel);
    const ZeroCount zN = count_zeros(lamN, scale_of(lamN), zero_rel);

    BettiFromSpectra out;
    out.ambiguous = zT.ambiguous || zC.ambiguous || zN.ambiguous;
    const std::int64_t rank_d0 = static_cast<std::int64_t>(T.size()) - zT.count;
    const std::int64_t rank_d1 = static_cast<std::int64_t>(C.size()) - zC.count;
    out.betti[0] = zT.count;
    out.betti[1] = zC.count - rank_d0;
    out.betti[2] = zN.count - rank_d1;
    return out;
}

SparseD assemble_laplacian(const DecOperators& ops, BoundaryCondition bc, int k) {
    if (k < 0 || k > 3) fail(ErrorCode::InvalidArgument, "k must be in 0..3");
    const NormalizedOperator* set =
        bc == BoundaryCondition::Tangential ? ops.tangential : ops.normal;
    SparseD L;
    if (k <= 2) {
        L = gram_domain(set[k].Dbar);
        if (k >= 1) L = (L + gram_range(set[k - 1].Dbar)).eval();
    } else {
        L = gram_range(set[2].Dbar);
    }
    L.makeCompressed();
    return L;
}

std::vector<double> laplacian_spectrum(const DecOperators& ops, BoundaryCondition bc,
                                       int k, const SpectraParams& params) {
    const SparseD L = assemble_laplacian(ops, bc, k);
    if (L.rows() == 0) return {};
    const bool dense =
        params.mode == SolverMode::Dense ||
        (params.mode == SolverMode::Auto &&
         L.rows() <= std::min(params.auto_dense, params.dense_cap));
    EigenPairs pairs = dense ? dense_eig(L)
                             : lanczos_smallest(L, params.lanczos_m,
                                                params.residual_tol, params.seed);
    std::vector<double> out(static_cast<std::size_t>(pairs.values.size()));
    for (Eigen::Index i = 0; i < pairs.values.size(); ++i)
        out[static_cast<std::size_t>(i)] = std::max(pairs.values(i), 0.0);
    return out;
}

namespace {

struct WindowResult {
    EigenPairs pairs;
    double scale = 0.0;
    ZeroCount zeros;
};

/// Smallest-window eigenpairs with a certified zero count: the window is
/// grown until a nonzero eigenvalue is visible (or the space is exhausted).
WindowResult certified_window(const SparseD& A, int m, const SpectraParams& params,
                              std::vector<std::string>* notes, const char* tag) {
    WindowResult res;
    res.scale = gershgorin_bound(A);
    const int n = static_cast<int>(A.rows());
    int want = std::min(std::max(m, 2), n);
    for (int attempt = 0; attempt < 4; ++attempt) {
        const bool dense = n <= 256;
        res.pairs = dense ? dense_eig(A)
                          : lanczos_smallest(A, want, params.residual_tol, params.seed);
        std::vector<double> vals(res.pairs.values.data(),
                                 res.pairs.values.data() + res.pairs.values.size());
        res.zeros = count_zeros(vals, res.scale, params.zero_rel);
        const bool window_covers =
            res.pairs.full || res.zeros.count < res.pairs.values.size();
        if (window_covers) return res;
        if (want >= n || want >= 192) break;
        want = std::min({2 * want, n, 192});
    }
    if (notes)
        notes->push_back(std::string(tag) +
                         ": window exhausted while counting kernel values");
    res.zeros.ambiguous = true;
    return res;
}

double first_above(const Eigen::VectorXd& vals, double eps) {
    for (Eigen::Index i = 0; i < vals.size(); ++i)
        if (vals(i) > eps) return vals(i);
    return kNaN;
}

/// Eigenvalues of Lbar_1 belonging to the curl family, extracted by summing
/// ||Dbar_1 v||^2 / lambda over each degenerate cluster.
std::vector<double> curl_values(const EigenPairs& pairs, const SparseD& dbar1,
                                double eps) {
    std::vector<double> out;
    const Eigen::Index n = pairs.values.size();
    Eigen::Index i = 0;
    while (i < n) {
        const double lambda = pairs.values(i);
        if (lambda <= eps) {
            ++i;
            continue;
        }
        Eigen::Index j = i;
        double curl_weight = 0.0;
        while (j < n && pairs.values(j) <= lambda * (1.0 + 1e-7)) {
            curl_weight += (dbar1 * pairs.vectors.col(j)).squaredNorm() / pairs.values(j);
            ++j;
        }
        const int members = static_cast<int>(std::llround(curl_weight));
        for (int k = 0; k < members; ++k) out.push_back(lambda);
        i = j;
    }
    return out;
}

} // namespace

SpectrumSet compute_spectrum_set(const DecOperators& ops, double c,
                                 const SpectraParams& params,
                                 const std::array<std::int64_t, 3>* betti_hint) {
    SpectrumSet row;
    row.c = c;
    row.fiedler = {kNaN, kNaN, kNaN};

    const std::int64_t V = ops.tangential[0].Dbar.cols();
    const std::int64_t E = ops.tangential[0].Dbar.rows();
    const std::int64_t F = ops.tangential[1].Dbar.rows();
    const std::int64_t T = ops.tangential[2].Dbar.rows();
    if (T == 0) { // empty snapshot: all-zero row
        row.spectra_valid = true;
        return row;
    }

    if (params.mode == SolverMode::Dense && std::max({V, E, F}) > params.dense_cap)
        fail(ErrorCode::InvalidArgument,
             "dense mode refused: operator side exceeds the cap");
    const bool auto_dense =
        std::max({V, E, F}) <= std::min(params.auto_dense, params.dense_cap);

    if (params.mode == SolverMode::Dense ||
        (params.mode == SolverMode::Auto && auto_dense)) {
        const std::vector<double> sT = singular_spectrum(ops.tangential[0], params);
        const std::vector<double> sC = singular_spectrum(ops.tangential[1], params);
        const std::vector<double> sN = singular_spectrum(ops.tangential[2], params);
        auto lam = [](const std::vector<double>& s) {
            std::vector<double> l(s.size());
            for (std::size_t i = 0; i < s.size(); ++i) l[i] = s[i] * s[i];
            return l;
        };
        const auto lamT = lam(sT), lamC = lam(sC), lamN = lam(sN);
        const ZeroCount zT = count_zeros(lamT, lamT.empty() ? 0 : lamT.back(), params.zero_rel);
        const ZeroCount zC = count_zeros(lamC, lamC.empty() ? 0 : lamC.back(), params.zero_rel);
        const ZeroCount zN = count_zeros(lamN, lamN.empty() ? 0 : lamN.back(), params.zero_rel);
        row.zero_mult = {zT.count, zC.count, zN.count};
        const BettiFromSpectra bs = betti_from_spectra(sT, sC, sN, params.zero_rel);
        row.betti = bs.betti;
        row.ambiguous = bs.ambiguous;
        auto fied = [&](const std::vector<double>& l, const ZeroCount& z) {
            return (z.count < static_cast<std::int64_t>(l.size()))
                       ? l[static_cast<std::size_t>(z.count)]
                       : kNaN;
        };
        row.fiedler = {fied(lamT, zT), fied(lamC, zC), fied(lamN, zN)};
        row.T_low = sT;
        row.C_low = sC;
        row.N_low = sN;
        row.spectra_valid = true;
        return row;
    }

    // Large snapshot: certified smallest windows on the three cheap symmetric
    // forms. Kernel counts of Lbar_0 and Lbar_1 are beta_0 and beta_1; the
    // tet-side Dbar_2 Dbar_2^T is nonsingular for complexes embedded in flat
    // 3-space, which pins rank(Dbar_2) = T and closes the rank bookkeeping.
    int m = params.lanczos_m;
    if (betti_hint) {
        m = std::max<int>(m, static_cast<int>((*betti_hint)[0]) + 6);
        m = std::max<int>(m, static_cast<int>((*betti_hint)[1]) + 6);
    }

    const SparseD L0 = gram_domain(ops.tangential[0].Dbar);
    const SparseD L1 =
        (gram_domain(ops.tangential[1].Dbar) + gram_range(ops.tangential[0].Dbar)).eval();
    const SparseD A2 = gram_range(ops.tangential[2].Dbar);

    const WindowResult w0 = certified_window(L0, m, params, &row.notes, "T");
    const WindowResult w1 = certified_window(L1, m, params, &row.notes, "C");
    const WindowResult w2 = certified_window(A2, std::max(4, params.lanczos_m / 2),
                                             params, &row.notes, "N");

    const std::int64_t k0 = w0.zeros.count;
    const std::int64_t k1 = w1.zeros.count;
    row.ambiguous = w0.zeros.ambiguous || w1.zeros.ambiguous || w2.zeros.ambiguous;

    if (w2.pairs.values.size() && w2.pairs.values(0) <= w2.zeros.eps) {
        row.notes.push_back("N: tet-side operator unexpectedly rank-deficient");
        row.ambiguous = true;
    }

    row.fiedler[0] = first_above(w0.pairs.values, w0.zeros.eps);
    row.fiedler[2] =
        w2.pairs.values.size() ? std::max(w2.pairs.values(0), 0.0) : kNaN;

    // fiedler_C: the smallest nonzero eigenvalue of Lbar_1 that carries curl
    // energy. Vectors inside a degenerate cluster may mix the gradient and
    // curl families, so the curl ratios are summed per cluster; the total
    // counts how many cluster members belong to the curl family.
    std::vector<double> curl_vals = curl_values(w1.pairs, ops.tangential[1].Dbar,
                                                w1.zeros.eps);
    if (curl_vals.empty() && !w1.pairs.full) {
        // The window may have been filled by gradient values; widen once.
        const int wide = std::min<int>({4 * std::max(m, 8), static_cast<int>(E), 192});
        if (wide > w1.pairs.values.size()) {
            const EigenPairs more =
                lanczos_smallest(L1, wide, params.residual_tol, params.seed);
            curl_vals = curl_values(more, ops.tangential[1].Dbar, w1.zeros.eps);
        }
    }
    if (!curl_vals.empty())
        row.fiedler[1] = curl_vals.front();
    else
        row.notes.push_back("C: no curl-type value inside the solver window");

    row.zero_mult = {k0, (V - k0) + k1, F - T};
    const std::int64_t rank_d1 = E - row.zero_mult[1];
    row.betti = {k0, k1, row.zero_mult[2] - rank_d1};

    row.T_low = to_sigmas(w0.pairs.values);
    auto zeros_then = [](std::int64_t zeros, const std::vector<double>& tail,
                         std::size_t cap) {
        std::vector<double> out;
        for (std::int64_t i = 0; i < zeros && out.size() < cap; ++i) out.push_back(0.0);
        for (double v : tail)
            if (out.size() < cap) out.push_back(std::sqrt(std::max(v, 0.0)));
        return out;
    };
    row.C_low = zeros_then(row.zero_mult[1], curl_vals, 20);
    {
        std::vector<double> nt(w2.pairs.values.data(),
                               w2.pairs.values.data() + w2.pairs.values.size());
        row.N_low = zeros_then(row.zero_mult[2], nt, 20);
    }
    row.lap1_low.assign(w1.pairs.values.data(),
                        w1.pairs.values.data() + w1.pairs.values.size());
    row.curl_low = curl_vals;
    row.spectra_valid = true;
    return row;
}

} // namespace evodrh
