#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "chevsuper/grassmann.hpp"
#include "chevsuper/linalg.hpp"
#include "chevsuper/supermatrix.hpp"

namespace chevsuper {

enum class FamilyKind { A, B, C, D };

/// One of A(m,n), B(m,n), C(n), D(m,n). For C(n) only n is meaningful.
struct Family {
    FamilyKind kind = FamilyKind::A;
    int m = 0;
    int n = 0;

    /// Validates the parameter bounds; throws InvalidFamily.
    static Family make(FamilyKind kind, int m, int n);
    /// "A(1,0)", "B(0,1)", "C(3)", "D(2,1)"; whitespace is ignored.
    static Family parse(const std::string& text);

    std::string name() const;
    friend bool operator==(const Family& a, const Family& b) {
        return a.kind == b.kind && a.m == b.m && a.n == b.n;
    }
};

/// Integer coordinates in the basis (eps_1 .. eps_mbar, delta_1 .. delta_nbar).
using Weight = std::vector<int>;

/// Names such as "e1-d1", "2d1", "-d1", "e1+e2"; zero prints as "0".
std::string weight_name(const Weight& w, std::size_t eps_count);
Weight parse_weight(const std::string& text, std::size_t eps_count, std::size_t delta_count);

/// Lexicographic positivity: first nonzero coordinate is positive.
bool is_positive(const Weight& w);
Weight negate(const Weight& w);
Weight add(const Weight& a, const Weight& b);
Weight scale(const Weight& a, int k);

struct Root {
    Weight coords;
    Parity parity = Parity::Even;
    bool positive = false;
};

/// Defining matrix realization inside gl(p|q): sl(m+1|n+1) or osp(p|2n).
class Realization {
public:
    static Realization build(const Family& family);

    const Family& family() const { return family_; }
    BlockShape shape() const { return shape_; }
    std::size_t eps_count() const { return eps_count_; }
    std::size_t delta_count() const { return delta_count_; }
    std::size_t coord_count() const { return eps_count_ + delta_count_; }
    bool orthosymplectic() const { return osp_; }
    /// Weight of the i-th standard basis vector.
    const Weight& weight(std::size_t i) const { return weights_[i]; }
    const std::vector<Weight>& weights() const { return weights_; }
    /// Matrix of the invariant even supersymmetric form (osp only).
    const Matrix<Scalar>& form_matrix() const { return form_; }

    /// Basis (as entry vectors over the given positions) of the elements of
    /// g supported on those positions with the given parity.
    std::vector<ScalarVector> solve_support(
        const std::vector<std::pair<std::size_t, std::size_t>>& positions, Parity parity) const;
    bool contains(const SuperMatrix& x) const;

    /// mu(H) for a diagonal element H given by its diagonal entries.
    Scalar evaluate(const Weight& mu, const std::vector<Scalar>& diag) const;

private:
    Family family_;
    BlockShape shape_;
    std::size_t eps_count_ = 0;
    std::size_t delta_count_ = 0;
    bool osp_ = false;
    std::vector<Weight> weights_;
    std::vector<std::size_t> reading_;  // basis index reading each coordinate
    Matrix<Scalar> form_;
};

struct PropertyCheck {
    std::string name;
    bool ok = false;
    std::string detail;
};

/// Roots, coroots and canonical root vectors of a realized family.
class RootSystem {
public:
    explicit RootSystem(const Family& family);

    const Family& family() const { return real_.family(); }
    const Realization& realization() const { return real_; }
    BlockShape shape() const { return real_.shape(); }
    std::size_t coord_count() const { return real_.coord_count(); }
    /// Dimension of the Cartan subalgebra.
    std::size_t rank() const { return cartan_.size(); }

    /// All roots, positive ones first, each block in descending lex order.
    const std::vector<Root>& roots() const { return roots_; }
    std::vector<Root> positive_roots() const;
    std::vector<Root> simple_roots() const;
    std::optional<std::size_t> find(const Weight& w) const;
    bool contains(const Weight& w) const { return find(w).has_value(); }
    /// Throws NotARoot.
    const Root& root(const Weight& w) const;
    std::size_t n_plus() const { return n_plus_; }
    std::size_t n_minus() const { return n_minus_; }

    /// Coordinate form (eps_i,eps_j) = delta_ij, (delta_i,delta_j) = -delta_ij.
    long form(const Weight& a, const Weight& b) const;
    bool is_isotropic(const Weight& w) const { return form(w, w) == 0; }

    /// Realization root vector X_alpha with the canonical sign choices.
    const SuperMatrix& root_vector(const Weight& w) const;
    /// sigma_alpha * [X_alpha, X_-alpha] as diagonal entries.
    const std::vector<Scalar>& coroot(const Weight& w) const;
    /// 2 H'_alpha / (alpha, alpha) for non-isotropic roots (the element of
    /// the coroot line on which alpha takes the value 2); the bracket
    /// coroot for isotropic ones.
    std::vector<Scalar> normalized_coroot(const Weight& w) const;
    int sigma(const Weight& w) const;
    /// Fixed Z-basis H_1..H_l of the coroot lattice, as diagonals.
    const std::vector<std::vector<Scalar>>& cartan_basis() const { return cartan_; }
    /// A basis of the full Cartan subalgebra of the realization.
    const std::vector<ScalarVector>& cartan_space() const { return cartan_space_; }

    Scalar evaluate(const Weight& w, const std::vector<Scalar>& diag) const {
        return real_.evaluate(w, diag);
    }

    /// Largest r with beta - k alpha in the root system for k = 1..r; a walk
    /// reaching 0 stops there and counts that step.
    unsigned alpha_string_length(const Weight& alpha, const Weight& beta) const;

    std::string name(const Weight& w) const { return weight_name(w, real_.eps_count()); }
    Weight parse(const std::string& text) const {
        return parse_weight(text, real_.eps_count(), real_.delta_count());
    }

    /// Structural properties: disjointness, negation closure, proportionality,
    /// one-dimensional root spaces, form consistency, N+ = N-.
    std::vector<PropertyCheck> check_properties() const;

    nlohmann::json to_json() const;

private:
    Realization real_;
    std::vector<Root> roots_;
    std::map<Weight, std::size_t> index_;
    std::vector<SuperMatrix> vectors_;
    std::vector<std::vector<Scalar>> coroots_;
    std::vector<std::size_t> space_dims_;
    std::vector<bool> homogeneous_spaces_;
    std::vector<std::vector<Scalar>> cartan_;
    std::vector<ScalarVector> cartan_space_;
    std::size_t n_plus_ = 0;
    std::size_t n_minus_ = 0;
};

nlohmann::json diag_json(const std::vector<Scalar>& d);

}  // namespace chevsuper
