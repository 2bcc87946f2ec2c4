#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace immanon {

using Complex = std::complex<double>;

/// Dense square complex matrix, row-major. Entries must be finite.
class ComplexMatrix {
public:
    explicit ComplexMatrix(int n) : n_(checked_dim(n)), a_(static_cast<std::size_t>(n) * n) {}

    ComplexMatrix(int n, std::vector<Complex> entries) : n_(checked_dim(n)), a_(std::move(entries)) {
        if (a_.size() != static_cast<std::size_t>(n_) * n_) {
            throw std::invalid_argument("ComplexMatrix: entry count does not match dimension");
        }
        for (const Complex& v : a_) {
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
                throw std::invalid_argument("ComplexMatrix: entries must be finite");
            }
        }
    }

    static ComplexMatrix identity(int n) {
        ComplexMatrix m(n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    static ComplexMatrix constant(int n, Complex value) {
        ComplexMatrix m(n);
        for (Complex& v : m.a_) v = value;
        return m;
    }

    int dim() const { return n_; }

    Complex& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }
    const Complex& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }

    const std::vector<Complex>& data() const { return a_; }

    bool operator==(const ComplexMatrix& other) const { return n_ == other.n_ && a_ == other.a_; }

private:
    static int checked_dim(int n) {
        if (n < 1) throw std::invalid_argument("ComplexMatrix: dimension must be >= 1");
        return n;
    }

    int n_ = 0;
    std::vector<Complex> a_;
};

}  // namespace immanon
