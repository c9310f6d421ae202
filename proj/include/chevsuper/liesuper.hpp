#pragma once

#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "chevsuper/report.hpp"
#include "chevsuper/rootdata.hpp"
#include "chevsuper/supermatrix.hpp"

namespace chevsuper {

/// Basis {H_1..H_l, X_alpha} of a realized Lie superalgebra. Instances built
/// with build() are verified; the raw constructor allows candidate bases
/// (for instance with a rescaled Cartan) to be fed to verify_chevalley().
class ChevalleyBasis {
public:
    static ChevalleyBasis build(const Family& family);

    ChevalleyBasis(std::shared_ptr<const RootSystem> roots, std::vector<SuperMatrix> cartan,
                   std::vector<SuperMatrix> root_vectors);

    const RootSystem& roots() const { return *roots_; }
    std::shared_ptr<const RootSystem> root_system() const { return roots_; }
    const Family& family() const { return roots_->family(); }
    BlockShape shape() const { return roots_->shape(); }
    std::size_t rank() const { return cartan_.size(); }
    std::size_t dimension() const { return cartan_.size() + vectors_.size(); }

    const std::vector<SuperMatrix>& cartan() const { return cartan_; }
    /// X_alpha; throws NotARoot.
    const SuperMatrix& x(const Weight& alpha) const;
    /// H_alpha as a diagonal matrix.
    SuperMatrix coroot(const Weight& alpha) const;
    int sigma(const Weight& alpha) const { return roots_->sigma(alpha); }

    /// Cartan elements first, then root vectors in root order.
    std::vector<SuperMatrix> basis() const;
    std::vector<std::string> labels() const;
    std::vector<Parity> parities() const;
    /// Coordinates of an element of g in basis(); throws NotAChevalleyBasis
    /// if the element is not in the span.
    std::vector<Scalar> coordinates(const SuperMatrix& m) const;

    nlohmann::json to_json() const;

private:
    std::shared_ptr<const RootSystem> roots_;
    std::vector<SuperMatrix> cartan_;
    std::vector<SuperMatrix> vectors_;  // indexed like roots().roots()
};

/// Root vectors in root order. Positive ones are generated from the simple
/// root vectors by brackets divided by the expected |c|; negative ones are
/// fixed by [X_alpha, X_-alpha] = sigma_alpha H_alpha.
std::vector<SuperMatrix> chevalley_root_vectors(const RootSystem& rs);

/// Clauses (a)-(d) of the Chevalley basis definition, one case per identity.
Report verify_chevalley(const ChevalleyBasis& cb);
/// Throws IntegralityViolation naming the first non-integral alpha(H_i).
void require_integral_cartan_action(const ChevalleyBasis& cb);

struct StructureConstant {
    Weight alpha;
    Weight beta;
    Scalar c;
    unsigned r = 0;
    /// "r+1", "beta(H_alpha)", "obstructed" (forced |c| = 1 by an osp(1|2)
    /// string, see verify_chevalley) or "none".
    std::string clause;
};

/// c_{alpha,beta} for all pairs with alpha + beta a root.
/// Throws IntegralityViolation on a non-integral coefficient.
std::vector<StructureConstant> structure_constants(const ChevalleyBasis& cb);
nlohmann::json structure_constants_json(const ChevalleyBasis& cb,
                                        const std::vector<StructureConstant>& table);
std::string structure_constants_csv(const ChevalleyBasis& cb,
                                    const std::vector<StructureConstant>& table);

/// Super antisymmetry and super Jacobi over all ordered basis triples.
Report verify_jacobi(const ChevalleyBasis& cb);

// ---------------------------------------------------------------- Kostant form

using LatticeVector = std::vector<Scalar>;

enum class PbwKind { EvenPower, Binomial, Odd };

struct PbwFactor {
    PbwKind kind = PbwKind::EvenPower;
    Weight root;            // EvenPower / Odd
    std::size_t index = 0;  // Binomial: Cartan basis index
    unsigned exponent = 1;
};

/// v scaled coordinate-wise by binom(mu_k(H), n); H must be diagonal with
/// integer entries (NotRational otherwise).
LatticeVector binomial_H_action(const SuperMatrix& h, unsigned n, const LatticeVector& v);

/// Applies the monomial (rightmost factor first). Factors must be strictly
/// increasing in the fixed PBW order with odd exponents 1 (InvalidMonomial);
/// a non-integral intermediate raises IntegralityViolation.
LatticeVector kostant_monomial_action(const ChevalleyBasis& cb,
                                      const std::vector<PbwFactor>& factors,
                                      const LatticeVector& v);
/// Position of a factor in the fixed PBW order.
std::size_t pbw_key(const ChevalleyBasis& cb, const PbwFactor& f);
std::vector<PbwFactor> random_pbw_monomial(const ChevalleyBasis& cb, std::mt19937_64& rng);
std::string pbw_to_string(const ChevalleyBasis& cb, const std::vector<PbwFactor>& factors);

/// True iff the Z-span of the generators is stable under all Kostant
/// generators; NotALattice if they do not span V.
bool admissible_lattice_check(const ChevalleyBasis& cb, const std::vector<LatticeVector>& generators);

/// Z-basis (as Cartan diagonals) of {H in h_Z (x) Q : mu(H) in Z for all mu}.
/// DegenerateWeights if the weights do not span the dual of h.
std::vector<std::vector<Scalar>> stabilizer_cartan(const RootSystem& rs,
                                                   const std::vector<Weight>& weights);

Report verify_kostant(const ChevalleyBasis& cb, std::uint64_t seed, std::size_t monomials);
Report verify_integrality(const ChevalleyBasis& cb);
Report verify_stabilizer(const ChevalleyBasis& cb);

/// Candidate bases for osp(1|2) with h replaced by h/2 and by 2h.
Report verify_obstruction_osp12();

// ---------------------------------------------------------------- Heisenberg

struct Heisenberg {
    unsigned n = 0;
    long a = 0;
    BlockShape shape;
    /// Monomials xi_S as sorted index lists, even ones first.
    std::vector<std::vector<unsigned>> monomials;
    SuperMatrix e;
    std::vector<SuperMatrix> lower;  // a_i
    std::vector<SuperMatrix> raise;  // b_i
};

Heisenberg heisenberg_build(unsigned n, long a);
nlohmann::json heisenberg_json(const Heisenberg& h);

}  // namespace chevsuper
