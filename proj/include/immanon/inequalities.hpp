#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <thread>

#include "immanon/scattering.hpp"

namespace immanon {

namespace detail {

// Uniform in [0,1) from the top 53 bits of the engine output. Hand-rolled so
// that a fixed seed reproduces bit-identical matrices across platforms
// (std::normal_distribution is implementation-defined).
struct GaussianSource {
    std::mt19937_64 rng;
    double spare = 0.0;
    bool has_spare = false;

    explicit GaussianSource(std::uint64_t seed) : rng(seed) {}

    double uniform() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

    double operator()() {
        if (has_spare) {
            has_spare = false;
            return spare;
        }
        const double u1 = 1.0 - uniform();  // in (0, 1], keeps the log finite
        const double u2 = uniform();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * M_PI * u2;
        spare = radius * std::sin(angle);
        has_spare = true;
        return radius * std::cos(angle);
    }
};

}  // namespace detail

/// Random hermitian PSD matrix with exactly unit diagonal: Gaussian Gram
/// matrix G G^dagger rescaled by its diagonal. Deterministic per seed.
inline DistinguishabilityMatrix random_psd_unit_diagonal(int n, std::uint64_t seed) {
    if (n < 1) {
        throw std::invalid_argument("random_psd_unit_diagonal: n must be >= 1");
    }
    detail::GaussianSource gauss(seed);
    ComplexMatrix g(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) g(i, j) = Complex(gauss(), gauss());
    }
    ComplexMatrix s(n);
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            Complex acc = 0.0;
            for (int k = 0; k < n; ++k) acc += g(i, k) * std::conj(g(j, k));
            s(i, j) = acc;
            s(j, i) = std::conj(acc);
        }
    }
    std::vector<double> scale(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double d = s(i, i).real();
        if (!(d > 0.0)) {
            throw std::runtime_error("random_psd_unit_diagonal: degenerate Gram diagonal");
        }
        scale[static_cast<std::size_t>(i)] = 1.0 / std::sqrt(d);
    }
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            s(i, j) *= scale[static_cast<std::size_t>(i)] * scale[static_cast<std::size_t>(j)];
        }
        s(i, i) = 1.0;
    }
    return DistinguishabilityMatrix(std::move(s));
}

struct HadamardMarcusBounds {
    double det_value = 0.0;
    double perm_value = 0.0;
    double worst_slack = 0.0;
    bool ok = false;
};

/// 0 <= det(S) <= 1 <= perm(S) <= n!, slack tolerance 1e-9.
inline HadamardMarcusBounds check_hadamard_marcus(const DistinguishabilityMatrix& s) {
    const int n = s.dim();
    HadamardMarcusBounds bounds;
    bounds.det_value = determinant(s.matrix()).real();
    bounds.perm_value = permanent(s.matrix()).real();
    const double order = static_cast<double>(factorial(n));
    bounds.worst_slack = std::min(std::min(bounds.det_value, 1.0 - bounds.det_value),
                                  std::min(bounds.perm_value - 1.0, order - bounds.perm_value));
    bounds.ok = bounds.worst_slack >= -1e-9;
    return bounds;
}

struct LiebFisherBounds {
    double perm_full = 0.0, perm_block_product = 0.0;
    double det_full = 0.0, det_block_product = 0.0;
    double worst_slack = 0.0;
    bool ok = false;
};

/// Block bounds for the split S = [[A, B], [B^dagger, C]] with A the leading
/// k x k block: perm(S) >= perm(A) perm(C) >= 1 and det(S) <= det(A) det(C) <= 1.
inline LiebFisherBounds check_lieb_fisher(const DistinguishabilityMatrix& s, int split) {
    const int n = s.dim();
    if (split < 1 || split >= n) {
        throw std::invalid_argument("check_lieb_fisher: split must satisfy 1 <= k < n");
    }
    ComplexMatrix a(split);
    for (int i = 0; i < split; ++i) {
        for (int j = 0; j < split; ++j) a(i, j) = s(i, j);
    }
    ComplexMatrix c(n - split);
    for (int i = split; i < n; ++i) {
        for (int j = split; j < n; ++j) c(i - split, j - split) = s(i, j);
    }
    LiebFisherBounds bounds;
    bounds.perm_full = permanent(s.matrix()).real();
    bounds.perm_block_product = (permanent(a) * permanent(c)).real();
    bounds.det_full = determinant(s.matrix()).real();
    bounds.det_block_product = (determinant(a) * determinant(c)).real();
    bounds.worst_slack = std::min(
        std::min(bounds.perm_full - bounds.perm_block_product, bounds.perm_block_product - 1.0),
        std::min(bounds.det_block_product - bounds.det_full, 1.0 - bounds.det_block_product));
    bounds.ok = bounds.worst_slack >= -1e-9;
    return bounds;
}

/// Per-species normalized immanants of one matrix together with the proven
/// lower bound (every value above the determinant) and the conjectured upper
/// bound (every value below the permanent). Margins are normalized by 1 for
/// the lower bound and by perm(S) for the upper one.
struct InequalityReport {
    std::uint64_t matrix_id = 0;
    int n = 0;
    std::vector<Partition> partitions;
    std::vector<double> normalized_immanants;
    double det_value = 0.0;
    double perm_value = 0.0;
    double schur_margin = 0.0;
    double dominance_margin = 0.0;
    bool schur_ok = false;
    bool dominance_ok = false;
};

inline InequalityReport check_schur_dominance(const DistinguishabilityMatrix& s,
                                              std::uint64_t matrix_id = 0) {
    const int n = s.dim();
    if (n > 7) {
        throw std::out_of_range("check_schur_dominance: supports n <= 7");
    }
    InequalityReport report;
    report.matrix_id = matrix_id;
    report.n = n;
    report.partitions = enumerate_partitions(n);
    report.det_value = determinant(s.matrix()).real();
    report.perm_value = permanent(s.matrix()).real();
    const double perm_scale = std::max(report.perm_value, 1e-300);

    // The alternating row saturates the lower bound and the trivial row the
    // upper one by definition; margins are therefore taken over the other
    // species, while the pass/fail verdicts cover every row.
    report.schur_margin = std::numeric_limits<double>::quiet_NaN();
    report.dominance_margin = std::numeric_limits<double>::quiet_NaN();
    report.schur_ok = true;
    report.dominance_ok = true;
    for (const auto& lambda : report.partitions) {
        const double value = bunching_factor(lambda, s);
        report.normalized_immanants.push_back(value);
        const double schur_slack = value - report.det_value;
        const double dominance_slack = (report.perm_value - value) / perm_scale;
        report.schur_ok = report.schur_ok && schur_slack >= -1e-9;
        report.dominance_ok = report.dominance_ok && dominance_slack >= -1e-9;
        if (!detail::is_alternating(lambda) &&
            !(schur_slack >= report.schur_margin)) {  // NaN-aware min
            report.schur_margin = schur_slack;
        }
        if (!detail::is_trivial(lambda) && !(dominance_slack >= report.dominance_margin)) {
            report.dominance_margin = dominance_slack;
        }
    }
    return report;
}

struct ViolationRecord {
    std::uint64_t seed = 0;
    ComplexMatrix matrix;
    InequalityReport report;
};

struct CampaignSummary {
    int n = 0;
    long long trials = 0;
    long long schur_violations = 0;
    long long dominance_violations = 0;
    double min_schur_margin = std::numeric_limits<double>::quiet_NaN();
    double min_dominance_margin = std::numeric_limits<double>::quiet_NaN();
    double max_dominance_margin = std::numeric_limits<double>::quiet_NaN();
    double wall_time_s = 0.0;
};

/// Monte-Carlo stress run over random unit-diagonal PSD matrices. Per-trial
/// seeds are seed+index, so the result does not depend on the worker count.
/// Conjecture violations never abort the run; they are collected (with the
/// offending matrix) for independent re-verification.
inline CampaignSummary dominance_campaign(int n, long long trials, std::uint64_t seed,
                                          int jobs = 1,
                                          std::vector<ViolationRecord>* violations = nullptr) {
    if (n > 7) {
        throw std::out_of_range("dominance_campaign: supports n <= 7");
    }
    const auto start = std::chrono::steady_clock::now();

    std::vector<double> schur_margins(static_cast<std::size_t>(trials));
    std::vector<double> dominance_margins(static_cast<std::size_t>(trials));
    std::vector<char> schur_ok(static_cast<std::size_t>(trials), 1);
    std::vector<char> dominance_ok(static_cast<std::size_t>(trials), 1);

    auto run_range = [&](long long begin, long long end) {
        for (long long t = begin; t < end; ++t) {
            const std::uint64_t trial_seed = seed + static_cast<std::uint64_t>(t);
            const DistinguishabilityMatrix s = random_psd_unit_diagonal(n, trial_seed);
            const InequalityReport report = check_schur_dominance(s, trial_seed);
            schur_margins[static_cast<std::size_t>(t)] = report.schur_margin;
            dominance_margins[static_cast<std::size_t>(t)] = report.dominance_margin;
            schur_ok[static_cast<std::size_t>(t)] = report.schur_ok ? 1 : 0;
            dominance_ok[static_cast<std::size_t>(t)] = report.dominance_ok ? 1 : 0;
        }
    };
    const int workers = static_cast<int>(std::max<long long>(
        1, std::min<long long>(jobs, trials)));
    if (workers <= 1) {
        run_range(0, trials);
    } else {
        std::vector<std::thread> pool;
        const long long chunk = (trials + workers - 1) / workers;
        for (int w = 0; w < workers; ++w) {
            const long long begin = std::min<long long>(trials, w * chunk);
            const long long end = std::min<long long>(trials, begin + chunk);
            if (begin < end) pool.emplace_back(run_range, begin, end);
        }
        for (auto& t : pool) t.join();
    }

    CampaignSummary summary;
    summary.n = n;
    summary.trials = trials;
    for (long long t = 0; t < trials; ++t) {
        const auto i = static_cast<std::size_t>(t);
        if (!schur_ok[i]) ++summary.schur_violations;
        if (!dominance_ok[i]) ++summary.dominance_violations;
        if (t == 0) {
            summary.min_schur_margin = schur_margins[i];
            summary.min_dominance_margin = dominance_margins[i];
            summary.max_dominance_margin = dominance_margins[i];
        } else {
            summary.min_schur_margin = std::min(summary.min_schur_margin, schur_margins[i]);
            summary.min_dominance_margin =
                std::min(summary.min_dominance_margin, dominance_margins[i]);
            summary.max_dominance_margin =
                std::max(summary.max_dominance_margin, dominance_margins[i]);
        }
        if (violations && (!schur_ok[i] || !dominance_ok[i])) {
            const std::uint64_t trial_seed = seed + static_cast<std::uint64_t>(t);
            const DistinguishabilityMatrix s = random_psd_unit_diagonal(n, trial_seed);
            violations->push_back(
                ViolationRecord{trial_seed, s.matrix(), check_schur_dominance(s, trial_seed)});
        }
    }
    summary.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return summary;
}

}  // namespace immanon
