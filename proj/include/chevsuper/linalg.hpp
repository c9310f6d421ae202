#pragma once

#include <optional>
#include <vector>

#include <gmpxx.h>

#include "chevsuper/matrix.hpp"
#include "chevsuper/scalar.hpp"

namespace chevsuper {

using ScalarVector = std::vector<Scalar>;
using IntVector = std::vector<mpz_class>;
using IntRows = std::vector<IntVector>;

// Exact linear algebra over the scalar field.
std::vector<ScalarVector> nullspace(const Matrix<Scalar>& a);
std::size_t rank(const Matrix<Scalar>& a);
/// Some x with a x = b, if one exists.
std::optional<ScalarVector> solve(const Matrix<Scalar>& a, const ScalarVector& b);
Matrix<Scalar> inverse(const Matrix<Scalar>& a);

/// Row-style Hermite normal form: the nonzero rows of the result form a
/// Z-basis of the row span, in echelon form with positive pivots.
IntRows hermite_rows(IntRows rows);

struct SmithForm {
    std::vector<mpz_class> diagonal;  // nonzero invariant factors d_1 | d_2 | ...
    IntRows left;                     // U, unimodular
    IntRows right;                    // V, unimodular, with U * A * V = diag
};
SmithForm smith_form(const IntRows& a);

/// Finitely generated subgroup of Q^n (always free, possibly of low rank).
class RationalLattice {
public:
    static RationalLattice span(const std::vector<ScalarVector>& generators,
                                std::size_t dimension);

    std::size_t dimension() const { return dimension_; }
    std::size_t rank() const { return basis_.size(); }
    bool full_rank() const { return basis_.size() == dimension_; }
    const std::vector<ScalarVector>& basis() const { return basis_; }
    bool contains(const ScalarVector& v) const;
    bool contains(const RationalLattice& other) const;
    friend bool operator==(const RationalLattice& a, const RationalLattice& b) {
        return a.contains(b) && b.contains(a);
    }

private:
    std::size_t dimension_ = 0;
    mpz_class denominator_ = 1;
    IntRows hnf_;  // of denominator_ * basis
    std::vector<ScalarVector> basis_;
};

std::optional<IntVector> to_integers(const ScalarVector& v);

}  // namespace chevsuper
