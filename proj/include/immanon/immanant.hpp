#pragma once

#include <bit>
#include <cstdint>
#include <memory>
#include <mutex>
#include <unordered_map>

#include "immanon/characters.hpp"
#include "immanon/matrix.hpp"
#include "immanon/partition.hpp"

namespace immanon {

namespace detail {

inline bool is_trivial(const Partition& lambda) { return lambda.length() == 1; }
inline bool is_alternating(const Partition& lambda) { return lambda.part(0) == 1; }

// Cycle lengths packed into 4-bit nibbles, largest first. Unique per class
// for n <= 12.
inline std::uint64_t pack_cycle_type(const int* lengths, int count) {
    std::uint64_t key = 0;
    for (int i = 0; i < count; ++i) {
        key = (key << 4) | static_cast<std::uint64_t>(lengths[i]);
    }
    return key;
}

// Cycle type of a permutation image array, written into `lengths` sorted
// descending; returns the packed key. Allocation-free.
inline std::uint64_t packed_cycle_type(const int* perm, int n, int* lengths, char* seen) {
    for (int i = 0; i < n; ++i) seen[i] = 0;
    int count = 0;
    for (int s = 0; s < n; ++s) {
        if (seen[s]) continue;
        int len = 0;
        for (int j = s; !seen[j]; j = perm[j]) {
            seen[j] = 1;
            ++len;
        }
        lengths[count++] = len;
    }
    std::sort(lengths, lengths + count, std::greater<int>());
    return pack_cycle_type(lengths, count);
}

// Map from packed cycle type to index into the canonical partition order.
inline std::unordered_map<std::uint64_t, int> class_key_index(int n) {
    std::unordered_map<std::uint64_t, int> map;
    const auto classes = enumerate_partitions(n);
    for (std::size_t i = 0; i < classes.size(); ++i) {
        const auto& parts = classes[i].parts();
        map.emplace(pack_cycle_type(parts.data(), static_cast<int>(parts.size())),
                    static_cast<int>(i));
    }
    return map;
}

// Conjugacy-class index (canonical partition order) of every permutation of
// {0..n-1}, indexed by lexicographic rank. Cached per n; safe for concurrent use.
inline const std::vector<std::uint8_t>& class_rank_table(int n) {
    static std::mutex mutex;
    static std::unordered_map<int, std::unique_ptr<std::vector<std::uint8_t>>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto& slot = cache[n];
    if (!slot) {
        const auto key_index = class_key_index(n);
        auto table = std::make_unique<std::vector<std::uint8_t>>();
        table->reserve(static_cast<std::size_t>(factorial(n)));
        std::vector<int> perm(static_cast<std::size_t>(n));
        std::iota(perm.begin(), perm.end(), 0);
        int lengths[16];
        char seen[16];
        do {
            const std::uint64_t key = packed_cycle_type(perm.data(), n, lengths, seen);
            table->push_back(static_cast<std::uint8_t>(key_index.at(key)));
        } while (std::next_permutation(perm.begin(), perm.end()));
        slot = std::move(table);
    }
    return *slot;
}

// Character of lambda on every class, canonical class order, as doubles for
// the numeric kernels.
inline std::vector<double> characters_by_class(const Partition& lambda) {
    const int n = lambda.size();
    std::vector<double> chi;
    for (const auto& c : enumerate_partitions(n)) {
        chi.push_back(static_cast<double>(character(lambda, CycleType(c))));
    }
    return chi;
}

}  // namespace detail

/// Permanent via Ryser's formula with Gray-code row-sum updates, O(2^n * n).
/// Supported for n <= 24.
inline Complex permanent(const ComplexMatrix& M) {
    const int n = M.dim();
    if (n > 24) {
        throw std::out_of_range("permanent: dimension must be <= 24");
    }
    std::vector<Complex> row_sums(static_cast<std::size_t>(n), Complex(0.0));
    Complex total = 0.0;
    std::uint64_t gray = 0;
    const std::uint64_t count = std::uint64_t{1} << n;
    for (std::uint64_t k = 1; k < count; ++k) {
        const int j = std::countr_zero(k);
        const std::uint64_t bit = std::uint64_t{1} << j;
        gray ^= bit;
        if (gray & bit) {
            for (int i = 0; i < n; ++i) row_sums[static_cast<std::size_t>(i)] += M(i, j);
        } else {
            for (int i = 0; i < n; ++i) row_sums[static_cast<std::size_t>(i)] -= M(i, j);
        }
        Complex prod = 1.0;
        for (int i = 0; i < n; ++i) prod *= row_sums[static_cast<std::size_t>(i)];
        // Ryser sign (-1)^(n - |S|) with |S| = popcount(gray).
        if ((n - std::popcount(gray)) % 2 == 0) {
            total += prod;
        } else {
            total -= prod;
        }
    }
    return total;
}

/// Determinant via partial-pivot Gaussian elimination, O(n^3).
/// Singular matrices yield 0 (an exactly zero pivot short-circuits).
inline Complex determinant(const ComplexMatrix& M) {
    const int n = M.dim();
    std::vector<Complex> a(M.data());
    auto at = [&](int i, int j) -> Complex& { return a[static_cast<std::size_t>(i) * n + j]; };
    double sign = 1.0;
    Complex det = 1.0;
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        double best = std::abs(at(col, col));
        for (int r = col + 1; r < n; ++r) {
            const double mag = std::abs(at(r, col));
            if (mag > best) {
                best = mag;
                pivot = r;
            }
        }
        if (best == 0.0) return 0.0;
        if (pivot != col) {
            for (int j = col; j < n; ++j) std::swap(at(col, j), at(pivot, j));
            sign = -sign;
        }
        const Complex p = at(col, col);
        det *= p;
        for (int r = col + 1; r < n; ++r) {
            const Complex factor = at(r, col) / p;
            for (int j = col; j < n; ++j) at(r, j) -= factor * at(col, j);
        }
    }
    return sign * det;
}

/// Immanant imm_lambda(M) = sum over permutations of chi_lambda(sigma) times
/// the corresponding entry product. Dispatches to the permanent for the
/// trivial partition and to the determinant for the alternating one; the
/// general path enumerates permutations in lexicographic order with prefix
/// products and per-class character lookups. n <= 10 on the general path.
inline Complex immanant(const Partition& lambda, const ComplexMatrix& M) {
    const int n = M.dim();
    if (lambda.size() != n) {
        throw std::invalid_argument("immanant: partition size must match matrix dimension");
    }
    if (detail::is_trivial(lambda)) return permanent(M);
    if (detail::is_alternating(lambda)) return determinant(M);
    if (n > 10) {
        throw std::out_of_range("immanant: general path supports dimension <= 10");
    }

    const auto& class_of = detail::class_rank_table(n);
    const std::vector<double> chi = detail::characters_by_class(lambda);

    Complex sum = 0.0;
    std::size_t rank = 0;
    std::uint32_t used = 0;
    auto walk = [&](auto&& self, int row, Complex prefix) -> void {
        if (row == n) {
            const double weight = chi[class_of[rank++]];
            if (weight != 0.0) sum += weight * prefix;
            return;
        }
        for (int col = 0; col < n; ++col) {
            const std::uint32_t bit = std::uint32_t{1} << col;
            if (used & bit) continue;
            used |= bit;
            self(self, row + 1, prefix * M(row, col));
            used ^= bit;
        }
    };
    walk(walk, 0, Complex(1.0));
    return sum;
}

/// imm_lambda(M) / chi_lambda(identity).
inline Complex normalized_immanant(const Partition& lambda, const ComplexMatrix& M) {
    return immanant(lambda, M) / static_cast<double>(hook_dimension(lambda));
}

/// imm_lambda(M_rho) for every column permutation rho of M, in lexicographic
/// order of rho. Column c of M_rho is column rho(c) of M. Implemented by
/// re-weighting cached per-permutation entry products with shifted character
/// lookups instead of materializing n! matrices. n <= 7.
inline std::vector<Complex> column_permuted_immanants(const Partition& lambda,
                                                      const ComplexMatrix& M) {
    const int n = M.dim();
    if (lambda.size() != n) {
        throw std::invalid_argument("column_permuted_immanants: partition size must match matrix");
    }
    if (n > 7) {
        throw std::out_of_range("column_permuted_immanants: dimension must be <= 7");
    }

    const auto perms = all_permutations(n);
    const auto key_index = detail::class_key_index(n);
    const std::vector<double> chi = detail::characters_by_class(lambda);

    // Entry products, computed once per permutation.
    std::vector<Complex> prod(perms.size());
    for (std::size_t r = 0; r < perms.size(); ++r) {
        Complex p = 1.0;
        for (int j = 0; j < n; ++j) p *= M(j, perms[r][static_cast<std::size_t>(j)]);
        prod[r] = p;
    }

    std::vector<Complex> out(perms.size());
    int inv[16], composed[16], lengths[16];
    char seen[16];
    for (std::size_t r = 0; r < perms.size(); ++r) {
        const auto& rho = perms[r];
        for (int j = 0; j < n; ++j) inv[rho[static_cast<std::size_t>(j)]] = j;
        Complex acc = 0.0;
        for (std::size_t s = 0; s < perms.size(); ++s) {
            const auto& pi = perms[s];
            // imm(M_rho) = sum_pi chi(rho^{-1} o pi) * prod(pi).
            for (int j = 0; j < n; ++j) composed[j] = inv[pi[static_cast<std::size_t>(j)]];
            const std::uint64_t key = detail::packed_cycle_type(composed, n, lengths, seen);
            const double weight = chi[static_cast<std::size_t>(key_index.at(key))];
            if (weight != 0.0) acc += weight * prod[s];
        }
        out[r] = acc;
    }
    return out;
}

}  // namespace immanon
