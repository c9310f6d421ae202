#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "chevsuper/grassmann.hpp"
#include "chevsuper/liesuper.hpp"
#include "chevsuper/matrix.hpp"
#include "chevsuper/report.hpp"

namespace chevsuper {

using GrassmannMatrix = Matrix<SuperScalar>;

/// c * X with entries (-1)^{|c||i|} c X_ij, i the row index; c homogeneous.
GrassmannMatrix koszul_scale(const SuperScalar& c, const SuperMatrix& x, unsigned generators);

/// A point of GL(p|q)(A), A the Grassmann algebra on `generators` generators.
class GroupElement {
public:
    GroupElement() = default;
    /// Throws ParityError when a block has entries of the wrong parity and
    /// NotInvertible when the body is singular.
    GroupElement(BlockShape shape, GrassmannMatrix m);

    static GroupElement identity(BlockShape shape, unsigned generators);

    BlockShape shape() const { return shape_; }
    unsigned generators() const { return generators_; }
    std::size_t size() const { return shape_.size(); }
    const GrassmannMatrix& matrix() const { return m_; }
    const SuperScalar& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
    const SuperMatrix& body() const { return body_; }

    bool is_identity() const;
    bool is_block_diagonal() const;

    friend GroupElement operator*(const GroupElement& a, const GroupElement& b);
    GroupElement inv() const;

    friend bool operator==(const GroupElement& a, const GroupElement& b) { return a.m_ == b.m_; }
    friend bool operator!=(const GroupElement& a, const GroupElement& b) { return !(a == b); }

    std::string to_string() const;
    nlohmann::json to_json() const;

private:
    GroupElement(BlockShape shape, GrassmannMatrix m, SuperMatrix body)
        : shape_(shape), generators_(m.rows() ? m(0, 0).generators() : 0),
          m_(std::move(m)), body_(std::move(body)) {}

    BlockShape shape_;
    unsigned generators_ = 0;
    GrassmannMatrix m_;
    SuperMatrix body_;
};

GroupElement g_mul(const GroupElement& a, const GroupElement& b);
GroupElement g_inv(const GroupElement& a);
/// a b a^-1 b^-1
GroupElement commutator(const GroupElement& a, const GroupElement& b);

/// The Chevalley supergroup of a basis in its defining representation, with
/// points in the Grassmann algebra on a fixed number of generators over `field`.
class Supergroup {
public:
    Supergroup(std::shared_ptr<const ChevalleyBasis> cb, unsigned generators,
               Field field = default_field());

    const ChevalleyBasis& basis() const { return *cb_; }
    std::shared_ptr<const ChevalleyBasis> basis_ptr() const { return cb_; }
    const RootSystem& roots() const { return cb_->roots(); }
    unsigned generators() const { return generators_; }
    Field field() const { return field_; }
    BlockShape shape() const { return cb_->shape(); }

    /// Root vector and coroot with entries in the field.
    const SuperMatrix& x(const Weight& alpha) const;
    const SuperMatrix& coroot(const Weight& alpha) const;
    /// Integer vector over the Cartan basis to its element.
    SuperMatrix cartan_element(const std::vector<long>& coeffs) const;
    /// Constant in the field.
    Scalar scalar(long n) const { return Scalar::in(field_, n); }
    SuperScalar constant(long n) const { return {generators_, scalar(n)}; }
    SuperScalar theta(unsigned index) const { return SuperScalar::generator(generators_, index, scalar(1)); }
    /// Parses an expression and moves its coefficients into the field.
    SuperScalar parse(const std::string& text) const;
    SuperScalar to_field(const SuperScalar& s) const;

    GroupElement identity() const { return GroupElement::identity(shape(), generators_); }
    GroupElement x_even(const Weight& alpha, const SuperScalar& t) const;
    GroupElement x_odd(const Weight& beta, const SuperScalar& theta) const;
    GroupElement x_gamma(const Weight& gamma, const SuperScalar& theta, const SuperScalar& t) const;
    GroupElement h_alpha(const Weight& alpha, const SuperScalar& t) const;
    GroupElement h_H(const std::vector<long>& coeffs, const SuperScalar& t) const;
    /// 1 + theta X for any odd root, the factor of the normal form.
    GroupElement odd_factor(const Weight& gamma, const SuperScalar& theta) const;

private:
    void check_generators(const SuperScalar& s) const;
    std::size_t index(const Weight& alpha) const;
    GroupElement exp_powers(const std::vector<SuperMatrix>& powers, const SuperScalar& t) const;
    GroupElement torus(const std::vector<long>& exponents, const SuperScalar& t) const;

    std::shared_ptr<const ChevalleyBasis> cb_;
    unsigned generators_;
    Field field_;
    std::vector<SuperMatrix> x_;
    std::vector<SuperMatrix> h_;
    std::vector<std::vector<long>> h_diag_;
    std::vector<std::vector<long>> cartan_diag_;
    // Divided powers of X (even roots) or of X^2 (non-isotropic odd roots),
    // computed over the rationals and then moved to the field.
    std::vector<std::vector<SuperMatrix>> powers_;
};

// ---------------------------------------------------------------- words

enum class FactorKind { EvenRoot, OddRoot, GammaRoot, Torus };

struct WordFactor {
    FactorKind kind = FactorKind::EvenRoot;
    Weight root;
    SuperScalar odd;   // OddRoot, GammaRoot
    SuperScalar even;  // EvenRoot, GammaRoot, Torus
};

using GeneratorWord = std::vector<WordFactor>;

GroupElement eval_factor(const Supergroup& g, const WordFactor& f);
GroupElement eval_word(const Supergroup& g, const GeneratorWord& w);
/// Word whose value is the inverse: reversed factors with negated or inverted parameters.
GeneratorWord inverse_word(const Supergroup& g, const GeneratorWord& w);

/// Tokens `xe:<root>:<even>`, `xo:<root>:<odd>`, `xg:<root>:<odd>:<even>`, `h:<root>:<even>`.
GeneratorWord parse_word(const Supergroup& g, const std::string& text);
std::string word_to_string(const Supergroup& g, const GeneratorWord& w);
/// Largest generator index mentioned in a word text, 0 when none.
unsigned word_generator_count(const std::string& text);

struct OddFactor {
    Weight root;
    SuperScalar theta;
};

struct NormalForm {
    GroupElement g0;
    std::vector<OddFactor> neg;
    std::vector<OddFactor> pos;
};

/// Position of an odd root in the fixed order: Delta_1^- before Delta_1^+, lex within each.
bool odd_root_less(const Weight& a, const Weight& b);

NormalForm normal_form(const Supergroup& g, const GeneratorWord& w);
GroupElement reconstruct(const Supergroup& g, const NormalForm& nf);
bool uniqueness_probe(const Supergroup& g, const GeneratorWord& w1, const GeneratorWord& w2);
nlohmann::json normal_form_json(const Supergroup& g, const NormalForm& nf);

/// Random word of length 1..12; each odd slot gets the next unused generator.
GeneratorWord random_word(const Supergroup& g, std::mt19937_64& rng);
/// A different word with the same value, built from identity insertions and splittings.
GeneratorWord equivalent_word(const Supergroup& g, const GeneratorWord& w, std::mt19937_64& rng);
/// Generators a random word may need: max(2|Delta_1|, 12).
unsigned word_generators(const RootSystem& rs);

// ---------------------------------------------------------------- verification

/// Commutator items 1-4 at generic parameters; constants are solved for.
Report check_commutator_formulas(const ChevalleyBasis& cb, Field field = default_field());
/// Round trip, degeneration to block-diagonal bodies, and uniqueness on
/// equal-valued word pairs.
Report verify_normal_form(const ChevalleyBasis& cb, std::uint64_t seed, std::size_t words,
                          std::size_t pairs, Field field = default_field());
/// One-parameter laws and g_inv on random parameters.
Report verify_group_laws(const ChevalleyBasis& cb, Field field = default_field());

/// The Heisenberg supergroup in its Fock representation: the commutator of
/// 1 + theta a_i and 1 + eta b_j is 1 + c delta_ij theta eta a; reports c,
/// faithfulness and integrality of the monomial lattice.
Report verify_heisenberg_group(unsigned n, long a);

}  // namespace chevsuper
