#include <sstream>

#include "chevsuper/errors.hpp"
#include "chevsuper/linalg.hpp"
#include "chevsuper/supergroup.hpp"

namespace chevsuper {

namespace {

std::pair<std::size_t, std::size_t> pivot_of(const SuperMatrix& x) {
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t j = 0; j < x.size(); ++j) {
            if (!x(i, j).is_zero()) return {i, j};
        }
    }
    throw NotAChevalleyBasis("zero root vector");
}

// Coefficient c with (lhs - 1) = c * (term - 1) at the pivot and leading monomial of `m`.
Scalar read_constant(const GroupElement& lhs, const GroupElement& term, const SuperScalar& m,
                     std::pair<std::size_t, std::size_t> piv) {
    Monomial lead = m.terms().front().first;
    auto [i, j] = piv;
    Scalar want = term(i, j).coefficient(lead);
    if (want.is_zero()) throw FormulaMismatch("degenerate probe term");
    return lhs(i, j).coefficient(lead) / want;
}

SuperScalar pairs_sum(unsigned gens, unsigned first, unsigned count, Field f) {
    SuperScalar s(gens);
    for (unsigned k = 0; k < count; ++k) {
        s += SuperScalar::monomial(gens, {first + 2 * k, first + 2 * k + 1}, Scalar::in(f, 1));
    }
    return s;
}

Scalar bracket_constant(const ChevalleyBasis& cb, const Weight& a, const Weight& b) {
    auto br = super_bracket(cb.x(a), cb.x(b));
    auto sum = add(a, b);
    if (!cb.roots().contains(sum)) return Scalar(0);
    auto c = br.ratio_to(cb.x(sum));
    if (!c) throw NotAChevalleyBasis("bracket is not a multiple of a root vector");
    return *c;
}

std::string join_constants(const std::vector<std::pair<std::string, Scalar>>& cs) {
    std::string out;
    for (const auto& [k, v] : cs) out += (out.empty() ? "" : " ") + k + "=" + v.to_string();
    return out;
}

Weight combo(const Weight& a, long i, const Weight& b, long j) {
    return add(scale(a, static_cast<int>(i)), scale(b, static_cast<int>(j)));
}

void item1(const ChevalleyBasis& cb, const Supergroup& g, Report& rep) {
    const auto& rs = cb.roots();
    const unsigned n = g.generators();
    auto t = pairs_sum(n, 1, 2, g.field());
    auto u = pairs_sum(n, 5, 2, g.field());
    for (const auto& ra : rs.roots()) {
        if (ra.parity != Parity::Even) continue;
        for (const auto& rb : rs.roots()) {
            if (rb.parity != Parity::Even) continue;
            const auto& a = ra.coords;
            const auto& b = rb.coords;
            if (a == b || a == negate(b)) continue;
            std::string id = "item1 " + rs.name(a) + "," + rs.name(b);
            auto lhs = commutator(g.x_even(a, t), g.x_even(b, u));
            GroupElement rest = lhs;
            std::vector<std::pair<std::string, Scalar>> found;
            bool integral = true;
            for (long level = 2; level <= 4; ++level) {
                for (long i = 1; i < level; ++i) {
                    long j = level - i;
                    Weight rho = combo(a, i, b, j);
                    if (!rs.contains(rho)) continue;
                    auto m = t.pow(i) * u.pow(j);
                    if (m.is_zero()) continue;
                    auto probe = g.x_even(rho, m);
                    Scalar c = read_constant(rest, probe, m, pivot_of(g.x(rho)));
                    if (!c.is_integer()) integral = false;
                    found.push_back({"c" + std::to_string(i) + std::to_string(j), c});
                    rest = g.x_even(rho, -(c * m)) * rest;
                }
            }
            bool exact = rest.is_identity();
            bool classical = true;
            if (rs.contains(add(a, b))) {
                Scalar want = bracket_constant(cb, a, b);
                classical = !found.empty() && found.front().second == want;
            }
            rep.add(id, exact && integral && classical,
                    join_constants(found) + (exact ? "" : " product form does not match") +
                        (classical ? "" : " c11 differs from the structure constant"));
        }
    }
}

// binom(n, k) for k < 0 by reflection: binom(n, n - k) when n < 0 <= n - k, else 0.
long reflected_binomial(long n, long k) {
    if (k >= 0) return integer_binomial(n, static_cast<unsigned long>(k));
    if (n < 0 && n - k >= 0) return integer_binomial(n, static_cast<unsigned long>(n - k));
    return 0;
}

// r with |c_s| = binom(s + r, r) for every s; r >= 0 is tried first.
bool binomial_shape(const std::vector<std::pair<long, Scalar>>& cs, long& r_out) {
    for (long k = 0; k <= 16; ++k) {
        long r = k <= 8 ? k : 8 - k;
        bool all = true;
        for (const auto& [s, c] : cs) {
            Scalar b(reflected_binomial(s + r, r));
            if (b.is_zero() || !(c == b || c == -b)) all = false;
        }
        if (all) {
            r_out = r;
            return true;
        }
    }
    return false;
}

void item2(const ChevalleyBasis& cb, const Supergroup& g, Report& rep) {
    const auto& rs = cb.roots();
    const unsigned n = g.generators();
    auto theta = g.theta(1);
    auto t = pairs_sum(n, 2, 3, g.field());
    for (const auto& rg : rs.roots()) {
        if (rg.parity != Parity::Odd) continue;
        for (const auto& ra : rs.roots()) {
            if (ra.parity != Parity::Even) continue;
            const auto& gam = rg.coords;
            const auto& a = ra.coords;
            std::string id = "item2 " + rs.name(gam) + "," + rs.name(a);
            auto lhs = commutator(g.odd_factor(gam, theta), g.x_even(a, t));
            GroupElement rhs = g.identity();
            std::vector<std::pair<long, Scalar>> cs;
            std::vector<std::pair<std::string, Scalar>> found;
            bool integral = true;
            for (long s = 1; s <= 4; ++s) {
                Weight rho = combo(gam, 1, a, s);
                if (!rs.contains(rho)) break;
                auto m = t.pow(s) * theta;
                if (m.is_zero()) break;
                Scalar c = read_constant(lhs, g.odd_factor(rho, m), m, pivot_of(g.x(rho)));
                if (!c.is_integer()) integral = false;
                cs.push_back({s, c});
                found.push_back({"c" + std::to_string(s), c});
                rhs = rhs * g.odd_factor(rho, c * m);
            }
            bool exact = lhs == rhs;
            long r = 0;
            bool shape = !g.field().is_rational() || binomial_shape(cs, r);
            std::string detail = join_constants(found);
            if (!cs.empty() && g.field().is_rational() && shape) {
                std::vector<std::pair<std::string, Scalar>> eps;
                for (const auto& [s, c] : cs) {
                    eps.push_back({"eps" + std::to_string(s),
                                   c / Scalar(reflected_binomial(s + r, r))});
                }
                detail += " r=" + std::to_string(r) + " " + join_constants(eps);
            }
            if (!exact) detail += " product form does not match";
            if (!shape) detail += " constants are not signed binomials";
            rep.add(id, exact && integral && shape, detail);
        }
    }
}

void item3(const ChevalleyBasis& cb, const Supergroup& g, Report& rep) {
    const auto& rs = cb.roots();
    auto theta = g.theta(1);
    auto eta = g.theta(2);
    auto te = theta * eta;
    auto one = g.constant(1);
    for (const auto& rg : rs.roots()) {
        if (rg.parity != Parity::Odd) continue;
        for (const auto& rd : rs.roots()) {
            if (rd.parity != Parity::Odd) continue;
            const auto& gam = rg.coords;
            const auto& del = rd.coords;
            std::string id = "item3 " + rs.name(gam) + "," + rs.name(del);
            auto lhs = commutator(g.odd_factor(gam, theta), g.odd_factor(del, eta));
            if (del == negate(gam)) {
                // verbatim on the positive side; sigma_gamma = -1 on the negative side
                auto h = rg.positive ? g.h_alpha(gam, one - te) : g.h_alpha(del, one - te);
                auto lin = GroupElement(g.shape(),
                                        g.identity().matrix() -
                                            koszul_scale(te * g.scalar(rs.sigma(gam)), g.coroot(gam), g.generators()));
                bool ok = lhs == h && lhs == lin;
                rep.add(id, ok, std::string(rg.positive ? "h_gamma(1-th*eta)" : "h_{-gamma}(1-th*eta)") +
                                    (ok ? "" : " mismatch"));
                continue;
            }
            Weight sum = add(gam, del);
            if (!rs.contains(sum)) {
                rep.add(id, lhs.is_identity(), lhs.is_identity() ? "identity" : "not the identity");
                continue;
            }
            Scalar c = bracket_constant(cb, gam, del);
            auto rhs = g.x_even(sum, -(c * te));
            Scalar got = -read_constant(lhs, g.x_even(sum, te), te, pivot_of(g.x(sum)));
            bool ok = lhs == rhs && got == c && got.is_integer();
            rep.add(id, ok, "c=" + got.to_string() + (ok ? "" : " expected " + c.to_string()));
        }
    }
}

void item4(const ChevalleyBasis& cb, const Supergroup& g, Report& rep) {
    const auto& rs = cb.roots();
    const unsigned n = g.generators();
    auto t = g.constant(2) + SuperScalar::monomial(n, {1, 2}, g.scalar(1));
    auto u = SuperScalar::monomial(n, {3, 4}, g.scalar(1));
    auto theta = g.theta(3);
    auto s = SuperScalar::monomial(n, {4, 5}, g.scalar(1));
    for (const auto& ra : rs.roots()) {
        auto h = g.h_alpha(ra.coords, t);
        auto hinv = h.inv();
        const auto& hd = cb.coroot(ra.coords).diagonal_entries();
        for (const auto& rb : rs.roots()) {
            const auto& b = rb.coords;
            std::string id = "item4 " + rs.name(ra.coords) + "," + rs.name(b);
            Scalar kval = rs.evaluate(b, hd);
            if (!kval.is_integer()) {
                rep.add(id, false, "beta(H_alpha) = " + kval.to_string());
                continue;
            }
            long k = kval.to_long();
            auto tk = ss_pow_int(t, k);
            GroupElement lhs, rhs;
            if (rb.parity == Parity::Even) {
                lhs = h * g.x_even(b, u) * hinv;
                rhs = g.x_even(b, tk * u);
            } else if (rs.is_isotropic(b)) {
                lhs = h * g.x_odd(b, theta) * hinv;
                rhs = g.x_odd(b, tk * theta);
            } else {
                lhs = h * g.x_gamma(b, theta, s) * hinv;
                rhs = g.x_gamma(b, tk * theta, tk * tk * s);
            }
            bool ok = lhs == rhs;
            rep.add(id, ok, "beta(H_alpha)=" + std::to_string(k) + (ok ? "" : " mismatch"));
        }
    }
}

}  // namespace

Report check_commutator_formulas(const ChevalleyBasis& cb, Field field) {
    Report rep{"commutators", cb.family().name(), {}};
    auto ptr = std::make_shared<const ChevalleyBasis>(cb);
    item1(cb, Supergroup(ptr, 8, field), rep);
    item2(cb, Supergroup(ptr, 7, field), rep);
    item3(cb, Supergroup(ptr, 2, field), rep);
    item4(cb, Supergroup(ptr, 5, field), rep);
    return rep;
}

Report verify_normal_form(const ChevalleyBasis& cb, std::uint64_t seed, std::size_t words,
                          std::size_t pairs, Field field) {
    Report rep{"normalform", cb.family().name(), {}};
    auto ptr = std::make_shared<const ChevalleyBasis>(cb);
    Supergroup g(ptr, word_generators(cb.roots()), field);
    std::mt19937_64 rng(seed);
    for (std::size_t k = 0; k < words; ++k) {
        auto w = random_word(g, rng);
        std::string id = "word " + std::to_string(k);
        auto value = eval_word(g, w);
        auto nf = normal_form(g, w);
        bool round = reconstruct(g, nf) == value;
        bool sorted = nf.g0.is_block_diagonal();
        for (std::size_t i = 0; i + 1 < nf.neg.size(); ++i) sorted = sorted && odd_root_less(nf.neg[i].root, nf.neg[i + 1].root);
        for (std::size_t i = 0; i + 1 < nf.pos.size(); ++i) sorted = sorted && odd_root_less(nf.pos[i].root, nf.pos[i + 1].root);
        for (const auto& f : nf.neg) sorted = sorted && !is_positive(f.root);
        for (const auto& f : nf.pos) sorted = sorted && is_positive(f.root);
        bool inverse = (value * eval_word(g, inverse_word(g, w))).is_identity();
        // Zeroing the odd generators leaves the body.
        auto reduced_block_diagonal = [&](const GroupElement& x) {
            return GroupElement(g.shape(), x.matrix().map([&](const SuperScalar& v) {
                       return SuperScalar(g.generators(), v.body());
                   })).is_block_diagonal();
        };
        bool degenerate = reduced_block_diagonal(value) && reduced_block_diagonal(nf.g0);
        GroupElement prefix = g.identity();
        for (const auto& f : w) {
            prefix = prefix * eval_factor(g, f);
            degenerate = degenerate && reduced_block_diagonal(prefix);
        }
        std::string detail = word_to_string(g, w);
        if (!round) detail += " | round trip fails";
        if (!sorted) detail += " | normal form shape";
        if (!inverse) detail += " | inverse word";
        rep.add(id, round && sorted && inverse, detail);
        rep.add("degenerate " + std::to_string(k), degenerate,
                degenerate ? "body block-diagonal" : "body not block-diagonal");
    }
    for (std::size_t k = 0; k < pairs; ++k) {
        auto w1 = random_word(g, rng);
        auto w2 = equivalent_word(g, w1, rng);
        std::string id = "pair " + std::to_string(k);
        bool equal = eval_word(g, w1) == eval_word(g, w2);
        bool unique = equal && uniqueness_probe(g, w1, w2);
        rep.add(id, equal && unique,
                word_to_string(g, w1) + " || " + word_to_string(g, w2) +
                    (equal ? "" : " | values differ") + (unique || !equal ? "" : " | normal forms differ"));
    }
    return rep;
}

Report verify_group_laws(const ChevalleyBasis& cb, Field field) {
    Report rep{"grouplaws", cb.family().name(), {}};
    auto ptr = std::make_shared<const ChevalleyBasis>(cb);
    Supergroup g(ptr, 4, field);
    const auto& rs = cb.roots();
    const unsigned n = g.generators();
    auto p12 = SuperScalar::monomial(n, {1, 2}, g.scalar(1));
    auto p34 = SuperScalar::monomial(n, {3, 4}, g.scalar(1));
    auto th1 = g.theta(1), th2 = g.theta(2);
    for (const auto& r : rs.roots()) {
        const auto& a = r.coords;
        std::string name = rs.name(a);
        if (r.parity == Parity::Even) {
            auto t = g.constant(1) + p12, u = g.constant(-2) + p34;
            rep.add("x_even additive " + name, g.x_even(a, t) * g.x_even(a, u) == g.x_even(a, t + u));
            rep.add("x_even zero " + name, g.x_even(a, SuperScalar::zero(n)).is_identity());
        } else if (rs.is_isotropic(a)) {
            rep.add("x_odd additive " + name, g.x_odd(a, th1) * g.x_odd(a, th2) == g.x_odd(a, th1 + th2));
            auto inv_ok = g.x_odd(a, th1).inv() == g.x_odd(a, -th1);
            rep.add("x_odd inverse " + name, inv_ok);
        } else {
            auto t = g.constant(1) + p34, u = g.constant(-1);
            rep.add("x_gamma composition " + name,
                    g.x_gamma(a, th1, t) * g.x_gamma(a, th2, u) == g.x_gamma(a, th1 + th2, t + u - th1 * th2));
        }
        auto t = g.constant(2) + p12, u = g.constant(-1) + p34;
        rep.add("h multiplicative " + name, g.h_alpha(a, t) * g.h_alpha(a, u) == g.h_alpha(a, t * u));
        rep.add("h(1) " + name, g.h_alpha(a, g.constant(1)).is_identity());
        auto e = g.h_alpha(a, t) * (r.parity == Parity::Even ? g.x_even(a, p34) : g.odd_factor(a, th1));
        rep.add("inverse " + name, (e * e.inv()).is_identity() && (e.inv() * e).is_identity());
    }
    rep.add("h_H zero", g.h_H(std::vector<long>(cb.rank(), 0), g.constant(3)).is_identity());
    return rep;
}

Report verify_heisenberg_group(unsigned n, long a) {
    Report rep{"heisenberg", "H(" + std::to_string(n) + "," + std::to_string(a) + ")", {}};
    auto h = heisenberg_build(n, a);
    const unsigned gens = 2;
    auto theta = SuperScalar::generator(gens, 1);
    auto eta = SuperScalar::generator(gens, 2);
    auto one = GroupElement::identity(h.shape, gens);
    auto factor = [&](const SuperScalar& c, const SuperMatrix& x) {
        return GroupElement(h.shape, one.matrix() + koszul_scale(c, x, gens));
    };
    std::string tag = " n=" + std::to_string(n) + " a=" + std::to_string(a);
    for (unsigned i = 0; i < n; ++i) {
        for (unsigned j = 0; j < n; ++j) {
            auto br = super_bracket(h.lower[i], h.raise[j]);
            bool alg = i == j ? br == h.e && h.e == Scalar(a) * SuperMatrix::identity(h.shape) : br.is_zero();
            rep.add("bracket a" + std::to_string(i + 1) + ",b" + std::to_string(j + 1) + tag, alg);
            auto c = commutator(factor(theta, h.lower[i]), factor(eta, h.raise[j]));
            Monomial te = 0b11;
            Scalar got = c(0, 0).coefficient(te) / Scalar(a);
            auto want = GroupElement(h.shape, one.matrix() + koszul_scale(theta * eta * got, h.e, gens));
            bool ok = got.is_integer() && (i == j ? c == want : c.is_identity());
            rep.add("group commutator a" + std::to_string(i + 1) + ",b" + std::to_string(j + 1) + tag, ok,
                    i == j ? "c=" + got.to_string() : "identity");
            bool comm_a = commutator(factor(theta, h.lower[i]), factor(eta, h.lower[j])).is_identity();
            bool comm_b = commutator(factor(theta, h.raise[i]), factor(eta, h.raise[j])).is_identity();
            rep.add("a and b factors commute" + std::to_string(i + 1) + std::to_string(j + 1) + tag, comm_a && comm_b);
        }
    }
    // The monomial lattice is preserved when every coefficient is integral.
    bool lattice = true;
    std::vector<SuperMatrix> gens_all = {h.e};
    for (unsigned i = 0; i < n; ++i) {
        gens_all.push_back(h.lower[i]);
        gens_all.push_back(h.raise[i]);
    }
    for (const auto& x : gens_all) {
        lattice = lattice && x.is_integral();
        auto f = factor(theta, x.parity() == Parity::Odd ? x : SuperMatrix(h.shape));
        for (const auto& v : f.matrix().data()) {
            for (const auto& [m, coeff] : v.terms()) lattice = lattice && coeff.is_integer();
        }
    }
    rep.add("monomial lattice stable" + tag, lattice);
    // Faithful: e, a_i, b_i are linearly independent as matrices.
    const std::size_t d = h.shape.size();
    Matrix<Scalar> flat(gens_all.size(), d * d, Scalar(0));
    for (std::size_t k = 0; k < gens_all.size(); ++k) {
        for (std::size_t e = 0; e < d * d; ++e) flat(k, e) = gens_all[k](e / d, e % d);
    }
    rep.add("faithful" + tag, rank(flat) == gens_all.size());
    return rep;
}

}  // namespace chevsuper
