#pragma once

#include <optional>
#include <thread>

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "immanon/immanant.hpp"
#include "immanon/state.hpp"

namespace immanon {

namespace detail {

inline Eigen::MatrixXcd to_eigen(const ComplexMatrix& m) {
    Eigen::MatrixXcd e(m.dim(), m.dim());
    for (int i = 0; i < m.dim(); ++i) {
        for (int j = 0; j < m.dim(); ++j) e(i, j) = m(i, j);
    }
    return e;
}

}  // namespace detail

/// Names the first violated distinguishability-matrix constraint, or nullopt
/// for a valid matrix: hermitian within 1e-12, unit diagonal within 1e-12,
/// positive semi-definite with eigenvalues >= -1e-10.
inline std::optional<std::string> distinguishability_failure(const ComplexMatrix& s) {
    const int n = s.dim();
    for (int i = 0; i < n; ++i) {
        if (std::abs(s(i, i) - Complex(1.0)) > 1e-12) {
            return "diagonal entry differs from 1";
        }
        for (int j = i + 1; j < n; ++j) {
            if (std::abs(s(i, j) - std::conj(s(j, i))) > 1e-12) {
                return "matrix is not hermitian";
            }
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(detail::to_eigen(s),
                                                           Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().minCoeff() < -1e-10) {
        return "matrix is not positive semi-definite";
    }
    return std::nullopt;
}

/// Hermitian PSD matrix of mutual internal-state scalar products, unit diagonal.
class DistinguishabilityMatrix {
public:
    explicit DistinguishabilityMatrix(ComplexMatrix s) : s_(std::move(s)) {
        if (const auto failure = distinguishability_failure(s_)) {
            throw std::invalid_argument("DistinguishabilityMatrix: " + *failure);
        }
    }

    int dim() const { return s_.dim(); }
    const ComplexMatrix& matrix() const { return s_; }
    Complex operator()(int i, int j) const { return s_(i, j); }

private:
    ComplexMatrix s_;
};

/// Single-particle mode map of the linear network. Not necessarily unitary;
/// unitarity is detected on construction and tracked as a flag.
class ScatteringMatrix {
public:
    explicit ScatteringMatrix(ComplexMatrix m) : m_(std::move(m)) {
        const int n = m_.dim();
        unitary_ = true;
        for (int i = 0; i < n && unitary_; ++i) {
            for (int j = 0; j < n; ++j) {
                Complex acc = 0.0;
                for (int k = 0; k < n; ++k) acc += std::conj(m_(k, i)) * m_(k, j);
                if (std::abs(acc - (i == j ? Complex(1.0) : Complex(0.0))) > 1e-10) {
                    unitary_ = false;
                    break;
                }
            }
        }
    }

    int dim() const { return m_.dim(); }
    bool unitary() const { return unitary_; }
    const ComplexMatrix& matrix() const { return m_; }
    Complex operator()(int i, int j) const { return m_(i, j); }

private:
    ComplexMatrix m_;
    bool unitary_ = false;
};

/// Effective matrix for a multiply-occupied arrangement: column k of M is
/// repeated s_k times, blocks in ascending mode order.
inline ComplexMatrix expand_columns(const ComplexMatrix& m, const OccupationVector& s) {
    const int n = m.dim();
    if (s.modes() != n || s.total() != n) {
        throw std::invalid_argument("expand_columns: occupation must list n modes summing to n");
    }
    ComplexMatrix e(n);
    int col = 0;
    for (int mode = 0; mode < n; ++mode) {
        for (int rep = 0; rep < s.counts[static_cast<std::size_t>(mode)]; ++rep) {
            for (int row = 0; row < n; ++row) e(row, col) = m(row, mode);
            ++col;
        }
    }
    return e;
}

namespace detail {

// Exchange-symmetry double sum over the permutation group:
//   (1/chi(e)) sum_{eta} chi(eta) (prod_j S[j][eta_j]) *
//              sum_{tau} prod_j conj(E[j][tau_j]) E[eta_j][tau_j]
// The inner tau sum is the permanent of B with B[j][k] = conj(E[j][k]) E[eta_j][k].
inline double exchange_probability_sum(const Partition& lambda, const ComplexMatrix& e,
                                       const ComplexMatrix& s) {
    const int n = e.dim();
    const auto& class_of = class_rank_table(n);
    const std::vector<double> chi = characters_by_class(lambda);
    const double dimension = static_cast<double>(hook_dimension(lambda));

    Complex acc = 0.0;
    std::size_t rank = 0;
    std::vector<int> eta(static_cast<std::size_t>(n));
    std::iota(eta.begin(), eta.end(), 0);
    ComplexMatrix b(n);
    do {
        const double weight = chi[class_of[rank++]];
        if (weight == 0.0) continue;
        Complex s_part = 1.0;
        for (int j = 0; j < n; ++j) s_part *= s(j, eta[static_cast<std::size_t>(j)]);
        if (s_part == Complex(0.0)) continue;
        for (int j = 0; j < n; ++j) {
            const int ej = eta[static_cast<std::size_t>(j)];
            for (int k = 0; k < n; ++k) b(j, k) = std::conj(e(j, k)) * e(ej, k);
        }
        acc += weight * s_part * permanent(b);
    } while (std::next_permutation(eta.begin(), eta.end()));

    double p = acc.real() / dimension;
    if (p < 0.0 && p > -1e-9) p = 0.0;
    return p;
}

inline void require_scatter_dims(const Partition& lambda, int m_dim, int s_dim) {
    if (lambda.size() != m_dim || m_dim != s_dim) {
        throw std::invalid_argument("scattering: partition, M and S dimensions must agree");
    }
    if (m_dim > 6) {
        throw std::out_of_range("scattering: closed-form sums support n <= 6");
    }
}

}  // namespace detail

/// Probability of one particle in each output mode.
inline double coincidence_probability(const Partition& lambda, const ScatteringMatrix& m,
                                      const DistinguishabilityMatrix& s) {
    detail::require_scatter_dims(lambda, m.dim(), s.dim());
    return detail::exchange_probability_sum(lambda, m.matrix(), s.matrix());
}

/// Probability of the output arrangement s (counts per mode), via the
/// column-expanded effective matrix and the 1/prod(s_j!) multiple-counting
/// correction.
inline double arrangement_probability(const Partition& lambda, const ScatteringMatrix& m,
                                      const DistinguishabilityMatrix& s,
                                      const OccupationVector& occupation) {
    detail::require_scatter_dims(lambda, m.dim(), s.dim());
    const ComplexMatrix expanded = expand_columns(m.matrix(), occupation);
    const double raw = detail::exchange_probability_sum(lambda, expanded, s.matrix());
    return raw / static_cast<double>(occupation.occupancy_factorials());
}

/// Fully indistinguishable limit: mean squared magnitude of the immanants of
/// the column-permuted effective matrix, with the occupancy correction.
inline double indistinguishable_probability(const Partition& lambda, const ScatteringMatrix& m,
                                            const OccupationVector& occupation) {
    if (lambda.size() != m.dim()) {
        throw std::invalid_argument("indistinguishable_probability: dimension mismatch");
    }
    if (m.dim() > 6) {
        throw std::out_of_range("indistinguishable_probability: supports n <= 6");
    }
    const ComplexMatrix expanded = expand_columns(m.matrix(), occupation);
    double acc = 0.0;
    for (const Complex& v : column_permuted_immanants(lambda, expanded)) {
        acc += std::norm(v);
    }
    const double denom = static_cast<double>(factorial(m.dim())) *
                         static_cast<double>(occupation.occupancy_factorials());
    return acc / denom;
}

/// Fully distinguishable limit: permanent of the element-wise |M|^2 of the
/// effective matrix. Species-independent by construction.
inline double distinguishable_probability(const ScatteringMatrix& m,
                                          const OccupationVector& occupation) {
    const int n = m.dim();
    if (n > 20) {
        throw std::out_of_range("distinguishable_probability: supports n <= 20");
    }
    const ComplexMatrix expanded = expand_columns(m.matrix(), occupation);
    ComplexMatrix squared(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) squared(i, j) = std::norm(expanded(i, j));
    }
    return permanent(squared).real() / static_cast<double>(occupation.occupancy_factorials());
}

/// Ratio of the all-particles-in-one-mode probability to its classical
/// combinatorial value: imm_lambda(S) / chi_lambda(e). Real for hermitian
/// PSD S; the float imaginary residue is dropped.
inline double bunching_factor(const Partition& lambda, const DistinguishabilityMatrix& s) {
    if (lambda.size() != s.dim()) {
        throw std::invalid_argument("bunching_factor: partition size must match S dimension");
    }
    return normalized_immanant(lambda, s.matrix()).real();
}

/// Distinguishability matrix with every pairwise scalar product equal to x.
/// PSD exactly for x in [0, 1] (eigenvalues 1-x and 1+(n-1)x).
inline DistinguishabilityMatrix transition_matrix(int n, double x) {
    if (x < 0.0 || x > 1.0) {
        throw std::out_of_range("transition_matrix: x must lie in [0, 1]");
    }
    ComplexMatrix s = ComplexMatrix::constant(n, x);
    for (int i = 0; i < n; ++i) s(i, i) = 1.0;
    return DistinguishabilityMatrix(std::move(s));
}

/// Bunching factors for every species of n particles over a grid of pairwise
/// overlaps. Rows follow the canonical partition order (a linear extension of
/// majorization); cells can be evaluated on a worker pool, the layout is
/// independent of scheduling.
struct SweepTable {
    std::vector<Partition> partitions;
    std::vector<double> xs;
    std::vector<std::vector<double>> factors;  // [partition][x]

    std::string to_csv() const {
        std::string out = "lambda,x,bunching_factor\n";
        char buf[96];
        for (std::size_t r = 0; r < partitions.size(); ++r) {
            for (std::size_t c = 0; c < xs.size(); ++c) {
                std::snprintf(buf, sizeof(buf), "%s,%.12g,%.12g\n", partitions[r].label().c_str(),
                              xs[c], factors[r][c]);
                out += buf;
            }
        }
        return out;
    }
};

inline SweepTable transition_sweep(int n, std::span<const double> grid, int jobs = 1) {
    if (n > 6) {
        throw std::out_of_range("transition_sweep: supports n <= 6");
    }
    for (double x : grid) {
        if (x < 0.0 || x > 1.0) {
            throw std::out_of_range("transition_sweep: grid values must lie in [0, 1]");
        }
    }
    SweepTable table;
    table.partitions = enumerate_partitions(n);
    table.xs.assign(grid.begin(), grid.end());
    table.factors.assign(table.partitions.size(), std::vector<double>(table.xs.size(), 0.0));

    const std::size_t cells = table.partitions.size() * table.xs.size();
    const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(cells)));
    auto run_range = [&](std::size_t begin, std::size_t end) {
        for (std::size_t cell = begin; cell < end; ++cell) {
            const std::size_t r = cell / table.xs.size();
            const std::size_t c = cell % table.xs.size();
            table.factors[r][c] =
                bunching_factor(table.partitions[r], transition_matrix(n, table.xs[c]));
        }
    };
    if (workers == 1) {
        run_range(0, cells);
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (cells + workers - 1) / workers;
        for (int w = 0; w < workers; ++w) {
            const std::size_t begin = std::min(cells, static_cast<std::size_t>(w) * chunk);
            const std::size_t end = std::min(cells, begin + chunk);
            if (begin < end) pool.emplace_back(run_range, begin, end);
        }
        for (auto& t : pool) t.join();
    }
    return table;
}

/// Internal single-particle states realizing the prescribed Gram matrix:
/// S = L L^dagger via Cholesky, falling back to the eigen-decomposition
/// square root when S is singular (e.g. the fully indistinguishable limit).
/// Vector j is the conjugated j-th row of L, so <phi_j|phi_k> = S[j][k].
inline std::vector<ComplexVector> internal_states_from(const DistinguishabilityMatrix& s) {
    const int n = s.dim();
    const Eigen::MatrixXcd es = detail::to_eigen(s.matrix());
    Eigen::MatrixXcd l;
    Eigen::LLT<Eigen::MatrixXcd> llt(es);
    if (llt.info() == Eigen::Success) {
        l = llt.matrixL();
    } else {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(es);
        Eigen::VectorXd eigenvalues = solver.eigenvalues();
        for (int i = 0; i < n; ++i) eigenvalues(i) = std::sqrt(std::max(0.0, eigenvalues(i)));
        l = solver.eigenvectors() * eigenvalues.asDiagonal();
    }
    std::vector<ComplexVector> states;
    states.reserve(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        ComplexVector v(static_cast<std::size_t>(n));
        for (int m = 0; m < n; ++m) v[static_cast<std::size_t>(m)] = std::conj(l(j, m));
        states.push_back(std::move(v));
    }
    return states;
}

/// All occupation vectors of `total` particles over `modes` modes, first mode
/// filled greedily (deterministic enumeration order).
inline std::vector<OccupationVector> all_occupations(int modes, int total) {
    std::vector<OccupationVector> out;
    std::vector<int> counts(static_cast<std::size_t>(modes), 0);
    auto rec = [&](auto&& self, int mode, int remaining) -> void {
        if (mode == modes - 1) {
            counts[static_cast<std::size_t>(mode)] = remaining;
            out.push_back(OccupationVector(counts));
            return;
        }
        for (int take = remaining; take >= 0; --take) {
            counts[static_cast<std::size_t>(mode)] = take;
            self(self, mode + 1, remaining - take);
        }
    };
    if (modes >= 1) rec(rec, 0, total);
    return out;
}

}  // namespace immanon
