#include "chevsuper/supermatrix.hpp"

#include <sstream>

#include "chevsuper/errors.hpp"

namespace chevsuper {

SuperMatrix::SuperMatrix(BlockShape shape)
    : shape_(shape), m_(shape.size(), shape.size(), Scalar(0)) {}

SuperMatrix::SuperMatrix(BlockShape shape, Matrix<Scalar> entries)
    : shape_(shape), m_(std::move(entries)) {
    if (m_.rows() != shape.size() || m_.cols() != shape.size()) {
        throw ShapeMismatch("entries do not match block shape");
    }
}

SuperMatrix SuperMatrix::identity(BlockShape shape) {
    return SuperMatrix(shape, Matrix<Scalar>::identity(shape.size(), Scalar(0), Scalar(1)));
}

SuperMatrix SuperMatrix::elementary(BlockShape shape, std::size_t i, std::size_t j,
                                    const Scalar& c) {
    SuperMatrix e(shape);
    e(i, j) = c;
    return e;
}

SuperMatrix SuperMatrix::diagonal(BlockShape shape, const std::vector<Scalar>& diag) {
    if (diag.size() != shape.size()) throw ShapeMismatch("diagonal has wrong length");
    SuperMatrix d(shape);
    for (std::size_t i = 0; i < diag.size(); ++i) d(i, i) = diag[i];
    return d;
}

std::optional<Parity> SuperMatrix::parity() const {
    std::optional<Parity> found;
    for (std::size_t i = 0; i < size(); ++i) {
        for (std::size_t j = 0; j < size(); ++j) {
            if (m_(i, j).is_zero()) continue;
            Parity p = shape_.index_parity(i) + shape_.index_parity(j);
            if (found && *found != p) return std::nullopt;
            found = p;
        }
    }
    return found.value_or(Parity::Even);
}

bool SuperMatrix::is_diagonal() const {
    for (std::size_t i = 0; i < size(); ++i) {
        for (std::size_t j = 0; j < size(); ++j) {
            if (i != j && !m_(i, j).is_zero()) return false;
        }
    }
    return true;
}

std::vector<Scalar> SuperMatrix::diagonal_entries() const {
    std::vector<Scalar> d;
    for (std::size_t i = 0; i < size(); ++i) d.push_back(m_(i, i));
    return d;
}

bool SuperMatrix::is_integral() const {
    for (const auto& v : m_.data()) {
        if (!v.is_integer()) return false;
    }
    return true;
}

SuperMatrix& SuperMatrix::operator+=(const SuperMatrix& o) {
    if (!(shape_ == o.shape_)) throw ShapeMismatch("block shapes differ");
    m_ += o.m_;
    return *this;
}

SuperMatrix& SuperMatrix::operator-=(const SuperMatrix& o) {
    if (!(shape_ == o.shape_)) throw ShapeMismatch("block shapes differ");
    m_ -= o.m_;
    return *this;
}

SuperMatrix& SuperMatrix::operator*=(const Scalar& c) {
    for (auto& v : m_.raw()) v *= c;
    return *this;
}

SuperMatrix SuperMatrix::operator-() const { return SuperMatrix(shape_, -m_); }

SuperMatrix operator*(const SuperMatrix& a, const SuperMatrix& b) {
    if (!(a.shape_ == b.shape_)) throw ShapeMismatch("block shapes differ");
    return SuperMatrix(a.shape_, multiply(a.m_, b.m_, Scalar(0)));
}

std::optional<Scalar> SuperMatrix::ratio_to(const SuperMatrix& other) const {
    std::optional<Scalar> c;
    for (std::size_t k = 0; k < m_.data().size(); ++k) {
        const Scalar& x = m_.data()[k];
        const Scalar& y = other.m_.data()[k];
        if (y.is_zero()) {
            if (!x.is_zero()) return std::nullopt;
            continue;
        }
        Scalar r = x / y;
        if (c && *c != r) return std::nullopt;
        c = r;
    }
    return c;
}

std::string SuperMatrix::to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < size(); ++i) {
        if (i) os << "; ";
        for (std::size_t j = 0; j < size(); ++j) {
            if (j) os << ' ';
            if (j == shape_.p && shape_.p && shape_.q) os << "| ";
            os << m_(i, j).to_string();
        }
    }
    os << "]";
    return os.str();
}

nlohmann::json scalar_json(const Scalar& s) {
    if (s.modulus() == 0 && s.is_integer() && s.rational().get_num().fits_slong_p()) {
        return s.rational().get_num().get_si();
    }
    return s.to_string();
}

nlohmann::json SuperMatrix::to_json() const {
    auto rows = nlohmann::json::array();
    for (std::size_t i = 0; i < size(); ++i) {
        auto row = nlohmann::json::array();
        for (std::size_t j = 0; j < size(); ++j) row.push_back(scalar_json(m_(i, j)));
        rows.push_back(row);
    }
    return rows;
}

SuperMatrix super_bracket(const SuperMatrix& x, const SuperMatrix& y) {
    auto px = x.parity();
    auto py = y.parity();
    if (!px || !py) throw NotHomogeneous("super bracket of inhomogeneous matrices");
    SuperMatrix xy = x * y;
    SuperMatrix yx = y * x;
    if (*px == Parity::Odd && *py == Parity::Odd) return xy + yx;
    return xy - yx;
}

Scalar supertrace(const SuperMatrix& x) {
    Scalar s(0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x.shape().index_parity(i) == Parity::Even) {
            s += x(i, i);
        } else {
            s -= x(i, i);
        }
    }
    return s;
}

SuperMatrix divided_power(const SuperMatrix& x, unsigned n) {
    SuperMatrix out = SuperMatrix::identity(x.shape());
    for (unsigned k = 1; k <= n; ++k) {
        out = out * x;
        out *= Scalar(1, static_cast<long>(k));
        if (out.is_zero()) break;
    }
    return out;
}

}  // namespace chevsuper
