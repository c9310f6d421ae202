#pragma once

#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "chevsuper/grassmann.hpp"
#include "chevsuper/matrix.hpp"
#include "chevsuper/scalar.hpp"

namespace chevsuper {

/// Block shape p|q: rows/columns 0..p-1 are even, p..p+q-1 are odd.
struct BlockShape {
    std::size_t p = 0;
    std::size_t q = 0;

    std::size_t size() const { return p + q; }
    Parity index_parity(std::size_t i) const { return i < p ? Parity::Even : Parity::Odd; }
    friend bool operator==(BlockShape a, BlockShape b) { return a.p == b.p && a.q == b.q; }
};

/// Element of gl(p|q) over Scalar.
class SuperMatrix {
public:
    SuperMatrix() = default;
    explicit SuperMatrix(BlockShape shape);
    SuperMatrix(BlockShape shape, Matrix<Scalar> entries);

    static SuperMatrix identity(BlockShape shape);
    /// E_ij with 0-based indices.
    static SuperMatrix elementary(BlockShape shape, std::size_t i, std::size_t j,
                                  const Scalar& c = Scalar(1));
    static SuperMatrix diagonal(BlockShape shape, const std::vector<Scalar>& diag);

    BlockShape shape() const { return shape_; }
    std::size_t size() const { return shape_.size(); }
    const Matrix<Scalar>& entries() const { return m_; }
    Scalar& operator()(std::size_t i, std::size_t j) { return m_(i, j); }
    const Scalar& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

    /// Parity of a homogeneous element; the zero matrix counts as even.
    std::optional<Parity> parity() const;
    bool is_zero() const { return is_zero_matrix(m_); }
    bool is_diagonal() const;
    std::vector<Scalar> diagonal_entries() const;
    bool is_integral() const;

    SuperMatrix& operator+=(const SuperMatrix& o);
    SuperMatrix& operator-=(const SuperMatrix& o);
    SuperMatrix& operator*=(const Scalar& c);
    SuperMatrix operator-() const;
    friend SuperMatrix operator+(SuperMatrix a, const SuperMatrix& b) { return a += b; }
    friend SuperMatrix operator-(SuperMatrix a, const SuperMatrix& b) { return a -= b; }
    friend SuperMatrix operator*(SuperMatrix a, const Scalar& c) { return a *= c; }
    friend SuperMatrix operator*(const Scalar& c, SuperMatrix a) { return a *= c; }
    /// Ordinary matrix product.
    friend SuperMatrix operator*(const SuperMatrix& a, const SuperMatrix& b);
    friend bool operator==(const SuperMatrix& a, const SuperMatrix& b) {
        return a.shape_ == b.shape_ && a.m_ == b.m_;
    }
    friend bool operator!=(const SuperMatrix& a, const SuperMatrix& b) { return !(a == b); }

    /// If *this == c * other, returns c (other must be nonzero).
    std::optional<Scalar> ratio_to(const SuperMatrix& other) const;

    std::string to_string() const;
    /// Dense array of entry strings (integers print as numbers).
    nlohmann::json to_json() const;

private:
    BlockShape shape_;
    Matrix<Scalar> m_;
};

/// [X,Y] = XY - (-1)^{|X||Y|} YX; throws NotHomogeneous on mixed input.
SuperMatrix super_bracket(const SuperMatrix& x, const SuperMatrix& y);
Scalar supertrace(const SuperMatrix& x);
/// X^n / n! computed exactly.
SuperMatrix divided_power(const SuperMatrix& x, unsigned n);

nlohmann::json scalar_json(const Scalar& s);

}  // namespace chevsuper
