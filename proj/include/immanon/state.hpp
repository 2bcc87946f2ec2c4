#pragma once

#include <cmath>
#include <map>
#include <span>
#include <vector>

#include "immanon/immanant.hpp"
#include "immanon/matrix.hpp"
#include "immanon/partition.hpp"

namespace immanon {

/// Single-particle Hilbert space: external modes tensor an internal label.
struct SingleParticleSpace {
    int ext_modes = 1;
    int internal_dim = 1;

    SingleParticleSpace(int ext, int internal) : ext_modes(ext), internal_dim(internal) {
        if (ext < 1 || internal < 1) {
            throw std::invalid_argument("SingleParticleSpace: dimensions must be >= 1");
        }
    }

    int dim() const { return ext_modes * internal_dim; }

    /// Combined basis index of |mode, internal>.
    int basis_index(int mode, int internal) const { return mode * internal_dim + internal; }

    int mode_of(int basis) const { return basis / internal_dim; }
};

using ComplexVector = std::vector<Complex>;

/// Explicit amplitude vector over the n-fold tensor product of single-particle
/// spaces. Index layout is little-endian in the particle number: the basis
/// index of particle q is digit q of the amplitude index in base d.
class DenseState {
public:
    DenseState(SingleParticleSpace space, int particles)
        : space_(space), n_(particles), amp_(checked_dim(space, particles), Complex(0.0)) {}

    /// Separable state with the given per-particle factors.
    static DenseState product(SingleParticleSpace space, std::span<const ComplexVector> factors) {
        DenseState state(space, static_cast<int>(factors.size()));
        const int d = space.dim();
        for (const auto& f : factors) {
            if (static_cast<int>(f.size()) != d) {
                throw std::invalid_argument("DenseState::product: factor dimension mismatch");
            }
        }
        for (std::size_t idx = 0; idx < state.amp_.size(); ++idx) {
            Complex value = 1.0;
            std::size_t rest = idx;
            for (int q = 0; q < state.n_; ++q) {
                value *= factors[static_cast<std::size_t>(q)][rest % static_cast<std::size_t>(d)];
                rest /= static_cast<std::size_t>(d);
            }
            state.amp_[idx] = value;
        }
        return state;
    }

    const SingleParticleSpace& space() const { return space_; }
    int particles() const { return n_; }
    std::size_t dim() const { return amp_.size(); }

    Complex amplitude(std::size_t idx) const { return amp_[idx]; }
    Complex& amplitude(std::size_t idx) { return amp_[idx]; }
    const std::vector<Complex>& amplitudes() const { return amp_; }

    int digit(std::size_t idx, int particle) const {
        const int d = space_.dim();
        std::size_t rest = idx;
        for (int q = 0; q < particle; ++q) rest /= static_cast<std::size_t>(d);
        return static_cast<int>(rest % static_cast<std::size_t>(d));
    }

    double norm() const {
        double acc = 0.0;
        for (const Complex& a : amp_) acc += std::norm(a);
        return std::sqrt(acc);
    }

    DenseState& operator+=(const DenseState& other) {
        require_compatible(other);
        for (std::size_t i = 0; i < amp_.size(); ++i) amp_[i] += other.amp_[i];
        return *this;
    }

    DenseState& operator-=(const DenseState& other) {
        require_compatible(other);
        for (std::size_t i = 0; i < amp_.size(); ++i) amp_[i] -= other.amp_[i];
        return *this;
    }

    DenseState& operator*=(Complex c) {
        for (Complex& a : amp_) a *= c;
        return *this;
    }

private:
    void require_compatible(const DenseState& other) const {
        if (other.n_ != n_ || other.space_.dim() != space_.dim()) {
            throw std::invalid_argument("DenseState: incompatible state dimensions");
        }
    }

    static std::size_t checked_dim(SingleParticleSpace space, int particles) {
        if (particles < 1) {
            throw std::invalid_argument("DenseState: particle count must be >= 1");
        }
        constexpr std::size_t kMaxAmplitudes = 10'000'000;
        std::size_t dim = 1;
        for (int q = 0; q < particles; ++q) {
            dim *= static_cast<std::size_t>(space.dim());
            if (dim > kMaxAmplitudes) {
                throw std::out_of_range("DenseState: d^n exceeds the 1e7 amplitude guard");
            }
        }
        return dim;
    }

    SingleParticleSpace space_;
    int n_;
    std::vector<Complex> amp_;
};

inline Complex inner_product(const DenseState& a, const DenseState& b) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("inner_product: dimension mismatch");
    }
    Complex acc = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        acc += std::conj(a.amplitude(i)) * b.amplitude(i);
    }
    return acc;
}

/// Particle-label permutation: slot q of the result carries what slot
/// sigma(q) carried before. Unitary re-indexing of the amplitudes.
/// Operators compose as Q_sigma Q_tau = Q_{tau o sigma}; this ordering is
/// what makes the projector idempotency and the Gram-matrix overlap
/// reduction come out right (both are under test).
inline DenseState permutation_operator(std::span<const int> sigma, const DenseState& state) {
    const int n = state.particles();
    if (static_cast<int>(sigma.size()) != n) {
        throw std::invalid_argument("permutation_operator: permutation size mismatch");
    }
    cycle_type_of(sigma);  // validates bijectivity
    const int d = state.space().dim();
    DenseState out(state.space(), n);

    std::vector<int> digits(static_cast<std::size_t>(n));
    std::vector<std::size_t> weight(static_cast<std::size_t>(n));
    std::size_t w = 1;
    for (int q = 0; q < n; ++q) {
        weight[static_cast<std::size_t>(q)] = w;
        w *= static_cast<std::size_t>(d);
    }
    for (std::size_t idx = 0; idx < state.dim(); ++idx) {
        std::size_t rest = idx;
        for (int q = 0; q < n; ++q) {
            digits[static_cast<std::size_t>(q)] = static_cast<int>(rest % static_cast<std::size_t>(d));
            rest /= static_cast<std::size_t>(d);
        }
        std::size_t target = 0;
        for (int q = 0; q < n; ++q) {
            target += weight[static_cast<std::size_t>(q)] *
                      static_cast<std::size_t>(digits[static_cast<std::size_t>(sigma[static_cast<std::size_t>(q)])]);
        }
        out.amplitude(target) = state.amplitude(idx);
    }
    return out;
}

/// Projector onto the exchange-symmetry sector of lambda:
/// (chi_lambda(e)/n!) * sum_sigma chi_lambda(sigma) Q_sigma. Dense application
/// is supported for n <= 6.
inline DenseState symmetrizer(const Partition& lambda, const DenseState& state) {
    const int n = state.particles();
    if (lambda.size() != n) {
        throw std::invalid_argument("symmetrizer: partition size must match particle count");
    }
    if (n > 6) {
        throw std::out_of_range("symmetrizer: dense application supports n <= 6");
    }
    const double dimension = static_cast<double>(hook_dimension(lambda));
    const double order = static_cast<double>(factorial(n));

    DenseState out(state.space(), n);
    for (const auto& sigma : all_permutations(n)) {
        const double chi = static_cast<double>(character(lambda, cycle_type_of(sigma)));
        if (chi == 0.0) continue;
        DenseState permuted = permutation_operator(sigma, state);
        permuted *= Complex(chi * dimension / order);
        out += permuted;
    }
    return out;
}

/// Symmetrized n-particle state (1/sqrt(n!)) sum_sigma chi_lambda(sigma)
/// (tensor_j seed[sigma(j)]). Unit norm whenever the seed vectors are
/// mutually orthonormal. Each seed vector must be normalized.
inline DenseState immanon_state(const Partition& lambda, std::span<const ComplexVector> seeds,
                                SingleParticleSpace space) {
    const int n = lambda.size();
    if (static_cast<int>(seeds.size()) != n) {
        throw std::invalid_argument("immanon_state: seed count must equal partition size");
    }
    const int d = space.dim();
    for (const auto& seed : seeds) {
        if (static_cast<int>(seed.size()) != d) {
            throw std::invalid_argument("immanon_state: seed dimension mismatch");
        }
        double norm2 = 0.0;
        for (const Complex& x : seed) norm2 += std::norm(x);
        if (std::abs(norm2 - 1.0) > 1e-10) {
            throw std::invalid_argument("immanon_state: seed vectors must be normalized");
        }
    }

    DenseState out(space, n);
    const double inv_sqrt_order = 1.0 / std::sqrt(static_cast<double>(factorial(n)));
    for (const auto& sigma : all_permutations(n)) {
        const double chi = static_cast<double>(character(lambda, cycle_type_of(sigma)));
        if (chi == 0.0) continue;
        const double weight = chi * inv_sqrt_order;
        for (std::size_t idx = 0; idx < out.dim(); ++idx) {
            Complex value = 1.0;
            std::size_t rest = idx;
            for (int q = 0; q < n; ++q) {
                const auto& seed = seeds[static_cast<std::size_t>(sigma[static_cast<std::size_t>(q)])];
                value *= seed[rest % static_cast<std::size_t>(d)];
                rest /= static_cast<std::size_t>(d);
            }
            out.amplitude(idx) += weight * value;
        }
    }
    return out;
}

/// Scalar product of two same-species symmetrized states, evaluated through
/// the single-particle Gram matrix: imm_lambda(M) / chi_lambda(e) with
/// M[j][k] = <phi_j | psi_k>.
inline Complex overlap(const Partition& lambda, std::span<const ComplexVector> phi_seed,
                       std::span<const ComplexVector> psi_seed) {
    const int n = lambda.size();
    if (static_cast<int>(phi_seed.size()) != n || static_cast<int>(psi_seed.size()) != n) {
        throw std::invalid_argument("overlap: seed count must equal partition size");
    }
    const std::size_t d = phi_seed.empty() ? 0 : phi_seed[0].size();
    for (int j = 0; j < n; ++j) {
        if (phi_seed[static_cast<std::size_t>(j)].size() != d ||
            psi_seed[static_cast<std::size_t>(j)].size() != d) {
            throw std::invalid_argument("overlap: seed vectors must share one dimension");
        }
    }
    ComplexMatrix gram(n);
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
            Complex acc = 0.0;
            for (std::size_t c = 0; c < d; ++c) {
                acc += std::conj(phi_seed[static_cast<std::size_t>(j)][c]) *
                       psi_seed[static_cast<std::size_t>(k)][c];
            }
            gram(j, k) = acc;
        }
    }
    return normalized_immanant(lambda, gram);
}

struct PauliCheckResult {
    double projection_norm = 0.0;
    bool majorization_allows = false;
};

/// Projects the occupation pattern eta (particles filled into modes in blocks,
/// k_1 particles in mode 0, k_2 in mode 1, ...) onto the lambda sector and
/// reports the norm together with the majorization verdict eta <= lambda.
inline PauliCheckResult partial_pauli_check(const Partition& lambda, const Partition& eta) {
    const int n = lambda.size();
    if (eta.size() != n) {
        throw std::invalid_argument("partial_pauli_check: partitions must have equal size");
    }
    if (n > 6) {
        throw std::out_of_range("partial_pauli_check: supports n <= 6");
    }
    const SingleParticleSpace space(eta.length(), 1);
    std::vector<ComplexVector> factors;
    for (int block = 0; block < eta.length(); ++block) {
        for (int rep = 0; rep < eta.parts()[static_cast<std::size_t>(block)]; ++rep) {
            ComplexVector basis(static_cast<std::size_t>(space.dim()), Complex(0.0));
            basis[static_cast<std::size_t>(block)] = 1.0;
            factors.push_back(std::move(basis));
        }
    }
    const DenseState pattern = DenseState::product(space, factors);
    const DenseState projected = symmetrizer(lambda, pattern);
    return PauliCheckResult{projected.norm(), majorizes(eta, lambda)};
}

struct SeedDependenceResult {
    double value = 0.0;
    bool degenerate = false;
};

/// Measures how far the symmetrized state built from a permuted seed list is
/// from a scalar multiple of the original: 1 - |<a|b>| / (|a||b|). Strictly
/// positive output certifies that no scalar relates the two states. Undefined
/// for the one-dimensional (trivial and alternating) representations.
inline SeedDependenceResult seed_dependence_probe(const Partition& lambda,
                                                  std::span<const ComplexVector> seeds,
                                                  SingleParticleSpace space,
                                                  std::span<const int> sigma) {
    if (detail::is_trivial(lambda) || detail::is_alternating(lambda)) {
        throw std::invalid_argument(
            "seed_dependence_probe: undefined for one-dimensional representations");
    }
    const int n = lambda.size();
    if (static_cast<int>(sigma.size()) != n) {
        throw std::invalid_argument("seed_dependence_probe: permutation size mismatch");
    }
    std::vector<ComplexVector> permuted;
    permuted.reserve(seeds.size());
    for (int j = 0; j < n; ++j) {
        permuted.push_back(seeds[static_cast<std::size_t>(sigma[static_cast<std::size_t>(j)])]);
    }
    const DenseState a = immanon_state(lambda, seeds, space);
    const DenseState b = immanon_state(lambda, permuted, space);
    const double na = a.norm();
    const double nb = b.norm();
    if (na < 1e-12 || nb < 1e-12) {
        return SeedDependenceResult{0.0, true};
    }
    return SeedDependenceResult{1.0 - std::abs(inner_product(a, b)) / (na * nb), false};
}

/// Applies the same single-particle unitary to every particle. Throws for a
/// non-unitary input (tolerance 1e-10 on U*U - 1).
inline DenseState evolve_one_body(const ComplexMatrix& u, const DenseState& state) {
    const int d = state.space().dim();
    if (u.dim() != d) {
        throw std::invalid_argument("evolve_one_body: operator dimension mismatch");
    }
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            Complex acc = 0.0;
            for (int k = 0; k < d; ++k) acc += std::conj(u(k, i)) * u(k, j);
            if (std::abs(acc - (i == j ? Complex(1.0) : Complex(0.0))) > 1e-10) {
                throw std::invalid_argument("evolve_one_body: operator is not unitary");
            }
        }
    }

    const int n = state.particles();
    std::vector<Complex> cur(state.amplitudes());
    std::vector<Complex> next(cur.size());
    std::size_t stride = 1;
    for (int q = 0; q < n; ++q) {
        for (std::size_t idx = 0; idx < cur.size(); ++idx) {
            const int a = static_cast<int>((idx / stride) % static_cast<std::size_t>(d));
            const std::size_t base = idx - static_cast<std::size_t>(a) * stride;
            Complex acc = 0.0;
            for (int b = 0; b < d; ++b) {
                acc += u(a, b) * cur[base + static_cast<std::size_t>(b) * stride];
            }
            next[idx] = acc;
        }
        cur.swap(next);
        stride *= static_cast<std::size_t>(d);
    }

    DenseState out(state.space(), n);
    for (std::size_t i = 0; i < cur.size(); ++i) out.amplitude(i) = cur[i];
    return out;
}

/// Particle counts per external mode.
struct OccupationVector {
    std::vector<int> counts;

    OccupationVector() = default;
    explicit OccupationVector(std::vector<int> c) : counts(std::move(c)) {
        for (int v : counts) {
            if (v < 0) throw std::invalid_argument("OccupationVector: counts must be >= 0");
        }
    }

    int total() const { return std::accumulate(counts.begin(), counts.end(), 0); }

    int modes() const { return static_cast<int>(counts.size()); }

    /// Sorted nonzero counts, as a partition of the particle number.
    Partition multiplicity_partition() const {
        std::vector<int> nz;
        for (int v : counts) {
            if (v > 0) nz.push_back(v);
        }
        std::sort(nz.rbegin(), nz.rend());
        return Partition(std::move(nz));
    }

    long long occupancy_factorials() const {
        long long f = 1;
        for (int v : counts) f *= factorial(v);
        return f;
    }

    std::string label() const {
        std::string s;
        for (std::size_t i = 0; i < counts.size(); ++i) {
            if (i > 0) s += ',';
            s += std::to_string(counts[i]);
        }
        return s;
    }

    bool operator==(const OccupationVector& o) const { return counts == o.counts; }
    bool operator<(const OccupationVector& o) const { return counts < o.counts; }
};

/// Probability of each external-mode occupation pattern, marginalized over
/// the internal label. Requires a state of non-vanishing norm.
inline std::map<OccupationVector, double> mode_occupation_distribution(const DenseState& state) {
    const double norm = state.norm();
    if (norm < 1e-12) {
        throw std::invalid_argument("mode_occupation_distribution: zero-norm state");
    }
    const int n = state.particles();
    const int d = state.space().dim();
    std::map<OccupationVector, double> dist;
    std::vector<int> counts(static_cast<std::size_t>(state.space().ext_modes));
    for (std::size_t idx = 0; idx < state.dim(); ++idx) {
        const double p = std::norm(state.amplitude(idx));
        if (p == 0.0) continue;
        std::fill(counts.begin(), counts.end(), 0);
        std::size_t rest = idx;
        for (int q = 0; q < n; ++q) {
            const int basis = static_cast<int>(rest % static_cast<std::size_t>(d));
            ++counts[static_cast<std::size_t>(state.space().mode_of(basis))];
            rest /= static_cast<std::size_t>(d);
        }
        dist[OccupationVector(counts)] += p;
    }
    return dist;
}

}  // namespace immanon
