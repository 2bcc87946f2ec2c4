#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "immanon/partition.hpp"

namespace immanon {

namespace detail {

// Memo key: shape parts, 0xff separator, remaining cycle lengths. All values
// fit in a byte for the supported n <= 12.
inline std::string mn_key(const std::vector<int>& shape, const std::vector<int>& cycles) {
    std::string key;
    key.reserve(shape.size() + cycles.size() + 1);
    for (int p : shape) key.push_back(static_cast<char>(p));
    key.push_back(static_cast<char>(0xff));
    for (int c : cycles) key.push_back(static_cast<char>(c));
    return key;
}

// Murnaghan-Nakayama recursion over border strips, formulated on beta-sets:
// beta_i = shape_i + (L-1-i). Removing a strip of length t replaces one beta
// value b by b-t (when b-t is absent from the set); the strip height is the
// number of beta values strictly between b-t and b.
inline long long murnaghan_nakayama(const std::vector<int>& shape, const std::vector<int>& cycles,
                                    std::unordered_map<std::string, long long>& memo) {
    if (shape.empty()) {
        return cycles.empty() ? 1 : 0;
    }
    const std::string key = mn_key(shape, cycles);
    if (auto it = memo.find(key); it != memo.end()) {
        return it->second;
    }

    const int t = cycles.front();
    const std::vector<int> rest(cycles.begin() + 1, cycles.end());

    const int len = static_cast<int>(shape.size());
    std::vector<int> beta(static_cast<std::size_t>(len));
    for (int i = 0; i < len; ++i) {
        beta[static_cast<std::size_t>(i)] = shape[static_cast<std::size_t>(i)] + (len - 1 - i);
    }

    long long acc = 0;
    for (int i = 0; i < len; ++i) {
        const int b = beta[static_cast<std::size_t>(i)];
        const int target = b - t;
        if (target < 0) continue;
        bool occupied = false;
        int height = 0;
        for (int j = 0; j < len; ++j) {
            if (j == i) continue;
            const int bj = beta[static_cast<std::size_t>(j)];
            if (bj == target) {
                occupied = true;
                break;
            }
            if (bj > target && bj < b) ++height;
        }
        if (occupied) continue;

        std::vector<int> nb = beta;
        nb[static_cast<std::size_t>(i)] = target;
        std::sort(nb.rbegin(), nb.rend());
        std::vector<int> next_shape;
        next_shape.reserve(nb.size());
        for (int j = 0; j < len; ++j) {
            const int part = nb[static_cast<std::size_t>(j)] - (len - 1 - j);
            if (part > 0) next_shape.push_back(part);
        }
        const long long sub = murnaghan_nakayama(next_shape, rest, memo);
        acc += (height % 2 == 0) ? sub : -sub;
    }

    memo[key] = acc;
    return acc;
}

inline std::unordered_map<std::string, long long>& mn_memo() {
    thread_local std::unordered_map<std::string, long long> memo;
    return memo;
}

}  // namespace detail

/// Exact character value chi_lambda(class) via the Murnaghan-Nakayama recursion.
/// Memoized per thread; concurrent calls return identical values.
inline long long character(const Partition& lambda, const CycleType& cycle_type) {
    if (lambda.size() != cycle_type.size()) {
        throw std::invalid_argument("character: partition and cycle type must have equal size");
    }
    return detail::murnaghan_nakayama(lambda.parts(), cycle_type.cycles.parts(), detail::mn_memo());
}

/// Dimension of the irreducible representation lambda: n! / (product of hook
/// lengths), evaluated in exact integer arithmetic. Equals character(lambda, identity).
inline long long hook_dimension(const Partition& lambda) {
    const int n = lambda.size();
    const auto& parts = lambda.parts();
    const int len = lambda.length();
    // Column lengths of the Young diagram (conjugate partition).
    std::vector<int> col_len(parts.empty() ? 0 : static_cast<std::size_t>(parts[0]), 0);
    for (int i = 0; i < len; ++i) {
        for (int j = 0; j < parts[static_cast<std::size_t>(i)]; ++j) {
            ++col_len[static_cast<std::size_t>(j)];
        }
    }
    long long hooks = 1;
    for (int i = 0; i < len; ++i) {
        for (int j = 0; j < parts[static_cast<std::size_t>(i)]; ++j) {
            const int arm = parts[static_cast<std::size_t>(i)] - j - 1;
            const int leg = col_len[static_cast<std::size_t>(j)] - i - 1;
            hooks *= arm + leg + 1;
        }
    }
    return factorial(n) / hooks;
}

/// Full character table of S_n: rows indexed by partition, columns by cycle
/// type, both in canonical (reverse lexicographic) order. Exact integers.
class CharacterTable {
public:
    explicit CharacterTable(int n) : n_(n), partitions_(enumerate_partitions(n)) {
        classes_.reserve(partitions_.size());
        for (const auto& p : partitions_) classes_.emplace_back(p);
        values_.resize(partitions_.size(), std::vector<long long>(classes_.size(), 0));
        for (std::size_t r = 0; r < partitions_.size(); ++r) {
            for (std::size_t c = 0; c < classes_.size(); ++c) {
                values_[r][c] = character(partitions_[r], classes_[c]);
            }
        }
    }

    int n() const { return n_; }
    const std::vector<Partition>& partitions() const { return partitions_; }
    const std::vector<CycleType>& classes() const { return classes_; }

    long long value(std::size_t row, std::size_t col) const { return values_[row][col]; }

    long long value(const Partition& lambda, const Partition& cycle_type) const {
        return values_[index_of(partitions_, lambda)][class_index(cycle_type)];
    }

    std::size_t class_index(const Partition& cycle_type) const {
        for (std::size_t c = 0; c < classes_.size(); ++c) {
            if (classes_[c].cycles == cycle_type) return c;
        }
        throw std::invalid_argument("CharacterTable: unknown cycle type " + cycle_type.label());
    }

    /// CSV export: header row of dot-joined cycle types, one row per partition.
    std::string to_csv() const {
        std::string out = "lambda";
        for (const auto& c : classes_) {
            out += ',';
            out += c.cycles.label();
        }
        out += '\n';
        for (std::size_t r = 0; r < partitions_.size(); ++r) {
            out += partitions_[r].label();
            for (std::size_t c = 0; c < classes_.size(); ++c) {
                out += ',';
                out += std::to_string(values_[r][c]);
            }
            out += '\n';
        }
        return out;
    }

private:
    static std::size_t index_of(const std::vector<Partition>& list, const Partition& p) {
        for (std::size_t i = 0; i < list.size(); ++i) {
            if (list[i] == p) return i;
        }
        throw std::invalid_argument("CharacterTable: unknown partition " + p.label());
    }

    int n_;
    std::vector<Partition> partitions_;
    std::vector<CycleType> classes_;
    std::vector<std::vector<long long>> values_;
};

/// Character table for 1 <= n <= 8 (exact-integer validation cost bounds n).
inline CharacterTable character_table(int n) {
    if (n < 1 || n > 8) {
        throw std::out_of_range("character_table: n must be in [1, 8]");
    }
    return CharacterTable(n);
}

}  // namespace immanon
