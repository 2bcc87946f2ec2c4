#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace immanon {

/// Exact factorial in 64-bit arithmetic. Throws for n outside [0, 20].
inline long long factorial(int n) {
    if (n < 0 || n > 20) {
        throw std::out_of_range("factorial: argument outside 64-bit-exact range [0, 20]");
    }
    long long f = 1;
    for (int k = 2; k <= n; ++k) {
        f *= k;
    }
    return f;
}

/// Integer partition: positive parts in non-increasing order, no trailing zeros.
/// Labels a symmetric-group irreducible representation (a particle species) and
/// doubles as an occupation-multiplicity pattern.
class Partition {
public:
    Partition() = default;

    explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (parts_[i] <= 0) {
                throw std::invalid_argument("Partition: parts must be strictly positive");
            }
            if (i > 0 && parts_[i] > parts_[i - 1]) {
                throw std::invalid_argument("Partition: parts must be non-increasing");
            }
        }
    }

    Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}

    /// Sum of parts (the n in "partition of n").
    int size() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }

    /// Number of parts.
    int length() const { return static_cast<int>(parts_.size()); }

    const std::vector<int>& parts() const { return parts_; }

    /// i-th part (0-based), zero-padded beyond the last part.
    int part(int i) const {
        return (i >= 0 && i < length()) ? parts_[static_cast<std::size_t>(i)] : 0;
    }

    bool operator==(const Partition& other) const { return parts_ == other.parts_; }
    bool operator!=(const Partition& other) const { return parts_ != other.parts_; }
    bool operator<(const Partition& other) const { return parts_ < other.parts_; }

    /// Dot-joined label, e.g. (2,1) -> "2.1".
    std::string label() const {
        std::string s;
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (i > 0) s += '.';
            s += std::to_string(parts_[i]);
        }
        return s;
    }

    /// Parses a dot-joined label ("3.1.1"). Parts must already be non-increasing.
    static Partition parse(const std::string& text) {
        std::vector<int> parts;
        std::stringstream in(text);
        std::string tok;
        while (std::getline(in, tok, '.')) {
            std::size_t pos = 0;
            int v = 0;
            try {
                v = std::stoi(tok, &pos);
            } catch (const std::exception&) {
                throw std::invalid_argument("Partition::parse: invalid part '" + tok + "'");
            }
            if (pos != tok.size()) {
                throw std::invalid_argument("Partition::parse: invalid part '" + tok + "'");
            }
            parts.push_back(v);
        }
        if (parts.empty()) {
            throw std::invalid_argument("Partition::parse: empty partition label");
        }
        return Partition(std::move(parts));
    }

private:
    std::vector<int> parts_;
};

/// All partitions of n in canonical (reverse lexicographic, largest-first) order.
/// Supported for 1 <= n <= 12.
inline std::vector<Partition> enumerate_partitions(int n) {
    if (n < 1 || n > 12) {
        throw std::out_of_range("enumerate_partitions: n must be in [1, 12]");
    }
    std::vector<Partition> out;
    std::vector<int> a{n};
    while (true) {
        out.emplace_back(a);
        int k = static_cast<int>(a.size()) - 1;
        while (k >= 0 && a[static_cast<std::size_t>(k)] == 1) --k;
        if (k < 0) break;
        int rem = 0;
        for (std::size_t i = static_cast<std::size_t>(k); i < a.size(); ++i) rem += a[i];
        const int cap = a[static_cast<std::size_t>(k)] - 1;
        a.resize(static_cast<std::size_t>(k));
        while (rem > 0) {
            const int p = std::min(cap, rem);
            a.push_back(p);
            rem -= p;
        }
    }
    return out;
}

/// True iff eta is majorized by lambda: every prefix sum of eta is bounded by
/// the corresponding prefix sum of lambda (shorter partition zero-padded).
/// Requires partitions of the same integer.
inline bool majorizes(const Partition& eta, const Partition& lambda) {
    if (eta.size() != lambda.size()) {
        throw std::invalid_argument("majorizes: partitions must have equal size");
    }
    const int len = std::max(eta.length(), lambda.length());
    long long se = 0, sl = 0;
    for (int m = 0; m < len; ++m) {
        se += eta.part(m);
        sl += lambda.part(m);
        if (se > sl) return false;
    }
    return true;
}

/// Conjugacy class of S_n, identified by the cycle lengths of its members.
struct CycleType {
    Partition cycles;

    explicit CycleType(Partition p) : cycles(std::move(p)) {}

    int size() const { return cycles.size(); }

    /// Number of permutations with this cycle structure:
    /// n! / prod_l ( l^{m_l} * m_l! ) with m_l the count of l-cycles.
    long long class_size() const {
        const int n = cycles.size();
        long long denom = 1;
        int run_len = 0, prev = -1;
        for (int i = 0; i <= cycles.length(); ++i) {
            const int cur = (i < cycles.length()) ? cycles.parts()[static_cast<std::size_t>(i)] : -2;
            if (cur == prev) {
                ++run_len;
            } else {
                if (prev > 0) {
                    for (int r = 1; r <= run_len; ++r) denom *= prev;
                    denom *= factorial(run_len);
                }
                prev = cur;
                run_len = 1;
            }
        }
        return factorial(n) / denom;
    }

    bool operator==(const CycleType& other) const { return cycles == other.cycles; }
};

/// Cycle type of a permutation given as a 0-based image list.
/// Throws if the input is not a bijection on {0, ..., n-1}.
inline CycleType cycle_type_of(std::span<const int> perm) {
    const int n = static_cast<int>(perm.size());
    if (n == 0) {
        throw std::invalid_argument("cycle_type_of: empty permutation");
    }
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (int v : perm) {
        if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)]) {
            throw std::invalid_argument("cycle_type_of: input is not a bijection on {0..n-1}");
        }
        seen[static_cast<std::size_t>(v)] = 1;
    }
    std::fill(seen.begin(), seen.end(), 0);
    std::vector<int> lengths;
    for (int s = 0; s < n; ++s) {
        if (seen[static_cast<std::size_t>(s)]) continue;
        int len = 0;
        for (int j = s; !seen[static_cast<std::size_t>(j)]; j = perm[static_cast<std::size_t>(j)]) {
            seen[static_cast<std::size_t>(j)] = 1;
            ++len;
        }
        lengths.push_back(len);
    }
    std::sort(lengths.rbegin(), lengths.rend());
    return CycleType(Partition(std::move(lengths)));
}

inline CycleType cycle_type_of(const std::vector<int>& perm) {
    return cycle_type_of(std::span<const int>(perm));
}

/// All permutations of {0..n-1} in lexicographic order on image tuples.
inline std::vector<std::vector<int>> all_permutations(int n) {
    std::vector<int> p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    std::vector<std::vector<int>> out;
    out.reserve(static_cast<std::size_t>(factorial(n)));
    do {
        out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

/// Signature of a permutation: (-1)^(n - #cycles).
inline int permutation_sign(std::span<const int> perm) {
    const CycleType ct = cycle_type_of(perm);
    const int n = ct.size();
    return ((n - ct.cycles.length()) % 2 == 0) ? 1 : -1;
}

}  // namespace immanon
