#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "chevsuper/errors.hpp"

namespace chevsuper {

/// Dense row-major matrix over any ring-like value type.
template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, const T& fill = T())
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix identity(std::size_t n, const T& zero, const T& one) {
        Matrix m(n, n, zero);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = one;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    const std::vector<T>& data() const { return data_; }

    template <class F>
    auto map(F&& f) const {
        using U = decltype(f(std::declval<const T&>()));
        Matrix<U> out(rows_, cols_);
        for (std::size_t i = 0; i < data_.size(); ++i) out.raw()[i] = f(data_[i]);
        return out;
    }

    std::vector<T>& raw() { return data_; }

    Matrix& operator+=(const Matrix& o) {
        check_shape(o);
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
        return *this;
    }
    Matrix& operator-=(const Matrix& o) {
        check_shape(o);
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
        return *this;
    }
    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    Matrix operator-() const {
        Matrix r = *this;
        for (auto& v : r.data_) v = -v;
        return r;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

private:
    void check_shape(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw ShapeMismatch("matrix shapes differ");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

/// Product with an explicit zero so value types without a default
/// "ring zero" (e.g. SuperScalar with a generator count) work.
template <class A, class B, class Z>
auto multiply(const Matrix<A>& a, const Matrix<B>& b, const Z& zero) {
    if (a.cols() != b.rows()) throw ShapeMismatch("inner dimensions differ");
    Matrix<Z> out(a.rows(), b.cols(), zero);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const auto& aik = a(i, k);
            if (aik.is_zero()) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) {
                const auto& bkj = b(k, j);
                if (bkj.is_zero()) continue;
                out(i, j) += aik * bkj;
            }
        }
    }
    return out;
}

template <class T>
bool is_zero_matrix(const Matrix<T>& m) {
    for (const auto& v : m.data()) {
        if (!v.is_zero()) return false;
    }
    return true;
}

}  // namespace chevsuper
