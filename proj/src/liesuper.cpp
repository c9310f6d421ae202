#include "chevsuper/liesuper.hpp"

#include <algorithm>
#include <sstream>

#include "chevsuper/errors.hpp"

namespace chevsuper {

namespace {

constexpr const char* kObstructed = "obstructed:";

std::size_t draw(std::mt19937_64& rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }

Scalar abs_scalar(const Scalar& s) { return s.sign() < 0 ? -s : s; }

SuperMatrix diag_matrix(BlockShape shape, const std::vector<Scalar>& d) {
    return SuperMatrix::diagonal(shape, d);
}

LatticeVector act(const SuperMatrix& m, const LatticeVector& v) {
    LatticeVector out(v.size(), Scalar(0));
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t j = 0; j < m.size(); ++j) {
            if (!m(i, j).is_zero() && !v[j].is_zero()) out[i] += m(i, j) * v[j];
        }
    }
    return out;
}

bool integral(const LatticeVector& v) {
    return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s.is_integer(); });
}

std::string vec_string(const LatticeVector& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += v[i].to_string();
    }
    return s + ")";
}

}  // namespace

// ---------------------------------------------------------------- basis

ChevalleyBasis::ChevalleyBasis(std::shared_ptr<const RootSystem> roots,
                               std::vector<SuperMatrix> cartan,
                               std::vector<SuperMatrix> root_vectors)
    : roots_(std::move(roots)), cartan_(std::move(cartan)), vectors_(std::move(root_vectors)) {
    if (vectors_.size() != roots_->roots().size()) {
        throw ShapeMismatch("one root vector per root is required");
    }
}

namespace {

bool magnitude_ok(const RootSystem& rs, const Weight& a, const Weight& b, const Scalar& mag) {
    if (mag == Scalar(static_cast<long>(rs.alpha_string_length(a, b)) + 1)) return true;
    Scalar bh = rs.evaluate(b, rs.coroot(a));
    return mag == (bh.sign() < 0 ? -bh : bh);
}

SuperMatrix normalized_negative(const RootSystem& rs, const Weight& alpha, const SuperMatrix& x) {
    Weight neg = negate(alpha);
    const SuperMatrix& cand = rs.root_vector(neg);
    auto h = Scalar(rs.sigma(alpha)) * SuperMatrix::diagonal(rs.shape(), rs.coroot(alpha));
    auto ratio = h.ratio_to(super_bracket(x, cand));
    if (!ratio) throw NotAChevalleyBasis("cannot normalize X[" + rs.name(neg) + "]");
    return *ratio * cand;
}

// Divisor n of [X_-a, [X_a, X_b]] = P X_b for X_{a+b} = [X_a, X_b] / n, chosen so
// that both c_{a,b} = n and c_{-a,a+b} = P / n obey the magnitude rule.
Scalar chain_divisor(const RootSystem& rs, const Weight& a, const Weight& b, const SuperMatrix& xb,
                     const SuperMatrix& bracket, const SuperMatrix& xna) {
    Scalar fallback(static_cast<long>(rs.alpha_string_length(a, b)) + 1);
    auto p = super_bracket(xna, bracket).ratio_to(xb);
    if (!p || !p->is_integer() || p->is_zero()) return fallback;
    Weight na = negate(a);
    Weight g = add(a, b);
    long pm = std::abs(p->to_long());
    Scalar best = fallback;
    int best_score = -1;
    for (long n = 1; n <= pm; ++n) {
        if (pm % n) continue;
        int score = (magnitude_ok(rs, a, b, Scalar(n)) ? 2 : 0) +
                    (magnitude_ok(rs, na, g, Scalar(pm / n)) ? 2 : 0) + (Scalar(n) == fallback ? 1 : 0);
        if (score > best_score) {
            best_score = score;
            best = Scalar(n);
        }
    }
    return best;
}

}  // namespace

std::vector<SuperMatrix> chevalley_root_vectors(const RootSystem& rs) {
    const auto& roots = rs.roots();
    std::vector<std::optional<SuperMatrix>> vecs(roots.size());
    auto simple = rs.simple_roots();
    // Heights by breadth-first search from the simple roots.
    std::vector<std::vector<Weight>> levels(1);
    std::vector<bool> seen(roots.size(), false);
    for (const auto& s : simple) {
        levels[0].push_back(s.coords);
        seen[*rs.find(s.coords)] = true;
    }
    while (!levels.back().empty()) {
        std::vector<Weight> next;
        for (const auto& b : levels.back()) {
            for (const auto& s : simple) {
                auto k = rs.find(add(s.coords, b));
                if (!k || seen[*k]) continue;
                seen[*k] = true;
                next.push_back(roots[*k].coords);
            }
        }
        levels.push_back(std::move(next));
    }
    auto set = [&](const Weight& w, SuperMatrix x) {
        vecs[*rs.find(negate(w))] = normalized_negative(rs, w, x);
        vecs[*rs.find(w)] = std::move(x);
    };
    auto rank_pair = [&](const Root& a, const Root& b) {
        bool ea = a.parity == Parity::Even, eb = b.parity == Parity::Even;
        bool na = !rs.is_isotropic(a.coords), nb = !rs.is_isotropic(b.coords);
        return (ea && eb ? 4 : 0) + (ea || eb ? 2 : 0) + (na || nb ? 1 : 0);
    };
    for (const auto& s : simple) set(s.coords, rs.root_vector(s.coords));
    std::vector<Root> done(simple.begin(), simple.end());
    for (std::size_t h = 1; h < levels.size(); ++h) {
        for (const auto& g : levels[h]) {
            const Root* best_a = nullptr;
            const Root* best_b = nullptr;
            int best = -1;
            for (const auto& a : done) {
                auto kb = rs.find(Weight(add(g, negate(a.coords))));
                if (!kb || !roots[*kb].positive || !vecs[*kb]) continue;
                const Root& b = roots[*kb];
                if (super_bracket(*vecs[*rs.find(a.coords)], *vecs[*kb]).is_zero()) continue;
                int score = rank_pair(a, b);
                if (score > best) {
                    best = score;
                    best_a = &a;
                    best_b = &b;
                }
            }
            if (!best_a) throw NotAChevalleyBasis("root " + rs.name(g) + " not reached from simple roots");
            const SuperMatrix& xa = *vecs[*rs.find(best_a->coords)];
            const SuperMatrix& xb = *vecs[*rs.find(best_b->coords)];
            auto br = super_bracket(xa, xb);
            Scalar n = chain_divisor(rs, best_a->coords, best_b->coords, xb, br,
                                     *vecs[*rs.find(negate(best_a->coords))]);
            set(g, n.inv() * br);
        }
        for (const auto& g : levels[h]) done.push_back(roots[*rs.find(g)]);
    }
    std::vector<SuperMatrix> out;
    for (std::size_t k = 0; k < roots.size(); ++k) {
        if (!vecs[k]) throw NotAChevalleyBasis("root " + rs.name(roots[k].coords) + " not reached from simple roots");
        out.push_back(std::move(*vecs[k]));
    }
    return out;
}

ChevalleyBasis ChevalleyBasis::build(const Family& family) {
    auto rs = std::make_shared<const RootSystem>(family);
    std::vector<SuperMatrix> cartan;
    for (const auto& h : rs->cartan_basis()) cartan.push_back(diag_matrix(rs->shape(), h));
    ChevalleyBasis cb(rs, std::move(cartan), chevalley_root_vectors(*rs));
    auto report = verify_chevalley(cb);
    for (const auto& c : report.cases) {
        if (!c.ok && c.detail.find(kObstructed) == std::string::npos) {
            throw NotAChevalleyBasis(family.name() + ": " + c.id + " failed: " + c.detail);
        }
    }
    return cb;
}

const SuperMatrix& ChevalleyBasis::x(const Weight& alpha) const {
    roots_->root(alpha);
    return vectors_[*roots_->find(alpha)];
}

SuperMatrix ChevalleyBasis::coroot(const Weight& alpha) const {
    return diag_matrix(shape(), roots_->coroot(alpha));
}

std::vector<SuperMatrix> ChevalleyBasis::basis() const {
    std::vector<SuperMatrix> b = cartan_;
    b.insert(b.end(), vectors_.begin(), vectors_.end());
    return b;
}

std::vector<std::string> ChevalleyBasis::labels() const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < cartan_.size(); ++i) out.push_back("H" + std::to_string(i + 1));
    for (const auto& r : roots_->roots()) out.push_back("X[" + roots_->name(r.coords) + "]");
    return out;
}

std::vector<Parity> ChevalleyBasis::parities() const {
    std::vector<Parity> out(cartan_.size(), Parity::Even);
    for (const auto& r : roots_->roots()) out.push_back(r.parity);
    return out;
}

std::vector<Scalar> ChevalleyBasis::coordinates(const SuperMatrix& m) const {
    const std::size_t l = cartan_.size();
    std::vector<Scalar> coords(l + vectors_.size(), Scalar(0));
    SuperMatrix rest = m;
    for (std::size_t k = 0; k < vectors_.size(); ++k) {
        const SuperMatrix& x = vectors_[k];
        for (std::size_t i = 0; i < x.size(); ++i) {
            bool done = false;
            for (std::size_t j = 0; j < x.size(); ++j) {
                if (x(i, j).is_zero()) continue;
                coords[l + k] = m(i, j) / x(i, j);
                done = true;
                break;
            }
            if (done) break;
        }
        if (!coords[l + k].is_zero()) rest -= coords[l + k] * x;
    }
    if (!rest.is_diagonal()) throw NotAChevalleyBasis("element is not in the span of the basis");
    Matrix<Scalar> a(m.size(), l);
    for (std::size_t i = 0; i < l; ++i) {
        for (std::size_t k = 0; k < m.size(); ++k) a(k, i) = cartan_[i](k, k);
    }
    auto sol = solve(a, rest.diagonal_entries());
    if (!sol) throw NotAChevalleyBasis("diagonal part is not in the Cartan span");
    for (std::size_t i = 0; i < l; ++i) coords[i] = (*sol)[i];
    // Exact reconstruction guards against a deficient basis.
    SuperMatrix check(m.shape());
    auto b = basis();
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (!coords[i].is_zero()) check += coords[i] * b[i];
    }
    if (check != m) throw NotAChevalleyBasis("element is not in the span of the basis");
    return coords;
}

nlohmann::json ChevalleyBasis::to_json() const {
    nlohmann::json j;
    j["family"] = family().name();
    j["shape"] = {shape().p, shape().q};
    auto cartan = nlohmann::json::array();
    for (std::size_t i = 0; i < cartan_.size(); ++i) {
        cartan.push_back({{"name", "H" + std::to_string(i + 1)},
                          {"diagonal", diag_json(cartan_[i].diagonal_entries())}});
    }
    j["cartan"] = cartan;
    auto vecs = nlohmann::json::array();
    for (std::size_t k = 0; k < vectors_.size(); ++k) {
        const auto& r = roots_->roots()[k];
        vecs.push_back({{"root", roots_->name(r.coords)},
                        {"parity", to_string(r.parity)},
                        {"sigma", roots_->sigma(r.coords)},
                        {"matrix", vectors_[k].to_json()}});
    }
    j["root_vectors"] = vecs;
    return j;
}

// ---------------------------------------------------------------- verification

namespace {

struct PairCheck {
    bool ok = true;
    bool obstructed = false;
    std::optional<StructureConstant> constant;
    std::string detail;
};

// g odd with 2g a root, b orthogonal to g with b - g and b + g roots: the
// osp(1|2)-module spanned by X_{b-g}, X_b, X_{b+g} has [X_g, X_b] of magnitude 1.
bool forced_unit(const RootSystem& rs, const Root& g, const Root& b) {
    if (g.parity != Parity::Odd || rs.is_isotropic(g.coords) || rs.is_isotropic(b.coords)) return false;
    if (!rs.evaluate(b.coords, rs.coroot(g.coords)).is_zero()) return false;
    return rs.contains(add(b.coords, g.coords)) && rs.contains(add(b.coords, negate(g.coords)));
}

PairCheck check_pair(const ChevalleyBasis& cb, const Root& a, const Root& b) {
    const RootSystem& rs = cb.roots();
    PairCheck out;
    auto bracket = super_bracket(cb.x(a.coords), cb.x(b.coords));
    Weight sum = add(a.coords, b.coords);
    if (!rs.contains(sum)) {
        out.ok = bracket.is_zero();
        out.detail = out.ok ? "bracket vanishes" : "nonzero bracket outside the root system";
        return out;
    }
    auto c = bracket.ratio_to(cb.x(sum));
    if (!c) c = bracket.is_zero() ? std::optional<Scalar>(Scalar(0)) : std::nullopt;
    if (!c) {
        out.ok = false;
        out.detail = "bracket not proportional to X[" + rs.name(sum) + "]";
        return out;
    }
    StructureConstant sc{a.coords, b.coords, *c, rs.alpha_string_length(a.coords, b.coords), "none"};
    if (!c->is_integer()) {
        out.ok = false;
        out.detail = "non-integral c = " + c->to_string();
        out.constant = sc;
        return out;
    }
    Scalar mag = abs_scalar(*c);
    Scalar bh = abs_scalar(rs.evaluate(b.coords, rs.coroot(a.coords)));
    if (mag == Scalar(static_cast<long>(sc.r) + 1)) {
        sc.clause = "r+1";
    } else if (mag == bh) {
        sc.clause = "beta(H_alpha)";
    } else {
        out.ok = false;
        out.obstructed = mag == Scalar(1) && (forced_unit(rs, a, b) || forced_unit(rs, b, a));
    }
    out.detail = "c = " + c->to_string() + ", r = " + std::to_string(sc.r) +
                 ", |beta(H_alpha)| = " + bh.to_string() + ", clause " + sc.clause;
    if (out.obstructed) {
        sc.clause = "obstructed";
        out.detail += std::string("; ") + kObstructed + " the osp(1|2) string of the odd root forces |c| = 1";
    }
    out.constant = sc;
    return out;
}

}  // namespace

Report verify_chevalley(const ChevalleyBasis& cb) {
    const RootSystem& rs = cb.roots();
    const BlockShape sh = cb.shape();
    Report rep{"chevalley", cb.family().name(), {}};

    // (a)
    bool diag_ok = true;
    std::vector<ScalarVector> hs;
    for (const auto& h : cb.cartan()) {
        if (!h.is_diagonal() || !rs.realization().contains(h)) diag_ok = false;
        hs.push_back(h.diagonal_entries());
    }
    Matrix<Scalar> hm(hs.size(), sh.size());
    for (std::size_t i = 0; i < hs.size(); ++i) {
        for (std::size_t k = 0; k < sh.size(); ++k) hm(i, k) = hs[i][k];
    }
    bool basis_ok = diag_ok && hs.size() == rs.cartan_space().size() && rank(hm) == hs.size();
    rep.add("a:cartan_basis", basis_ok,
            std::to_string(hs.size()) + " diagonal elements, dim h = " +
                std::to_string(rs.cartan_space().size()));
    std::vector<ScalarVector> coroots;
    for (const auto& r : rs.roots()) coroots.push_back(rs.coroot(r.coords));
    auto lat_h = RationalLattice::span(hs, sh.size());
    auto lat_c = RationalLattice::span(coroots, sh.size());
    bool span_ok = lat_h == lat_c;
    std::string span_detail = span_ok ? "Span_Z{H_i} = Span_Z{H_alpha}"
                              : lat_h.contains(lat_c) ? "coroot lattice is a proper sublattice"
                                                      : "some coroot is not an integer combination";
    rep.add("a:coroot_span", span_ok, span_detail);

    // (b)
    for (std::size_t i = 0; i < cb.cartan().size(); ++i) {
        const auto& h = cb.cartan()[i];
        for (const auto& r : rs.roots()) {
            Scalar val = rs.evaluate(r.coords, hs[i]);
            auto br = super_bracket(h, cb.x(r.coords));
            bool eig = br == val * cb.x(r.coords);
            bool ok = eig && val.is_integer();
            std::string detail = "alpha(H) = " + val.to_string();
            if (!eig) detail += ", not an eigenvector";
            if (!val.is_integer()) detail += ", not integral";
            rep.add("b:H" + std::to_string(i + 1) + "," + rs.name(r.coords), ok, detail);
        }
    }

    // (c)
    for (const auto& r : rs.roots()) {
        Weight neg = negate(r.coords);
        if (!rs.contains(neg)) continue;
        auto br = super_bracket(cb.x(r.coords), cb.x(neg));
        int s = rs.sigma(r.coords);
        bool ok = br == Scalar(s) * cb.coroot(r.coords);
        rep.add("c:" + rs.name(r.coords), ok, "sigma = " + std::to_string(s));
    }

    // (d)
    for (const auto& a : rs.roots()) {
        for (const auto& b : rs.roots()) {
            if (add(a.coords, b.coords) == Weight(a.coords.size(), 0)) continue;
            auto pc = check_pair(cb, a, b);
            rep.add("d:" + rs.name(a.coords) + "," + rs.name(b.coords), pc.ok, pc.detail);
        }
    }
    return rep;
}

void require_integral_cartan_action(const ChevalleyBasis& cb) {
    const RootSystem& rs = cb.roots();
    for (std::size_t i = 0; i < cb.cartan().size(); ++i) {
        auto d = cb.cartan()[i].diagonal_entries();
        for (const auto& r : rs.roots()) {
            Scalar val = rs.evaluate(r.coords, d);
            if (!val.is_integer()) {
                throw IntegralityViolation("[H" + std::to_string(i + 1) + ", X[" + rs.name(r.coords) +
                                           "]] has eigenvalue " + val.to_string());
            }
        }
    }
}

std::vector<StructureConstant> structure_constants(const ChevalleyBasis& cb) {
    const RootSystem& rs = cb.roots();
    std::vector<StructureConstant> out;
    for (const auto& a : rs.roots()) {
        for (const auto& b : rs.roots()) {
            if (!rs.contains(add(a.coords, b.coords))) continue;
            auto pc = check_pair(cb, a, b);
            if (!pc.constant) throw NotAChevalleyBasis(pc.detail);
            if (!pc.constant->c.is_integer()) {
                throw IntegralityViolation("c[" + rs.name(a.coords) + "," + rs.name(b.coords) +
                                           "] = " + pc.constant->c.to_string());
            }
            out.push_back(*pc.constant);
        }
    }
    return out;
}

nlohmann::json structure_constants_json(const ChevalleyBasis& cb,
                                        const std::vector<StructureConstant>& table) {
    const RootSystem& rs = cb.roots();
    auto rows = nlohmann::json::array();
    for (const auto& sc : table) {
        rows.push_back({{"alpha", rs.name(sc.alpha)},
                        {"beta", rs.name(sc.beta)},
                        {"c", scalar_json(sc.c)},
                        {"r", sc.r}});
    }
    return {{"family", cb.family().name()}, {"constants", rows}};
}

std::string structure_constants_csv(const ChevalleyBasis& cb,
                                    const std::vector<StructureConstant>& table) {
    const RootSystem& rs = cb.roots();
    std::ostringstream os;
    os << "alpha,beta,c,r\n";
    for (const auto& sc : table) {
        os << rs.name(sc.alpha) << ',' << rs.name(sc.beta) << ',' << sc.c.to_string() << ','
           << sc.r << '\n';
    }
    return os.str();
}

Report verify_jacobi(const ChevalleyBasis& cb) {
    Report rep{"jacobi", cb.family().name(), {}};
    auto b = cb.basis();
    auto par = cb.parities();
    auto lab = cb.labels();
    const std::size_t d = b.size();
    using Sparse = std::vector<std::pair<std::size_t, Scalar>>;
    std::vector<std::vector<Sparse>> t(d, std::vector<Sparse>(d));
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            auto c = cb.coordinates(super_bracket(b[i], b[j]));
            for (std::size_t k = 0; k < d; ++k) {
                if (!c[k].is_zero()) t[i][j].push_back({k, c[k]});
            }
        }
    }
    auto sgn = [&](std::size_t i, std::size_t j) {
        return (par[i] == Parity::Odd && par[j] == Parity::Odd) ? -1 : 1;
    };
    auto dense = [&](const Sparse& s) {
        std::vector<Scalar> v(d, Scalar(0));
        for (const auto& [k, c] : s) v[k] += c;
        return v;
    };

    bool anti = true;
    std::string anti_bad;
    for (std::size_t i = 0; i < d && anti; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            auto x = dense(t[i][j]);
            auto y = dense(t[j][i]);
            for (std::size_t k = 0; k < d; ++k) {
                if (x[k] != Scalar(-sgn(i, j)) * y[k]) {
                    anti = false;
                    anti_bad = lab[i] + "," + lab[j];
                }
            }
            if (!anti) break;
        }
    }
    rep.add("antisymmetry", anti,
            anti ? std::to_string(d * d) + " ordered pairs" : "fails at " + anti_bad);

    for (std::size_t i = 0; i < d; ++i) {
        bool ok = true;
        std::string bad;
        for (std::size_t j = 0; j < d && ok; ++j) {
            for (std::size_t k = 0; k < d; ++k) {
                // [x,[y,z]] - [[x,y],z] - (-1)^{|x||y|} [y,[x,z]]
                std::vector<Scalar> acc(d, Scalar(0));
                for (const auto& [m, c] : t[j][k]) {
                    for (const auto& [n, e] : t[i][m]) acc[n] += c * e;
                }
                for (const auto& [m, c] : t[i][j]) {
                    for (const auto& [n, e] : t[m][k]) acc[n] -= c * e;
                }
                Scalar s(sgn(i, j));
                for (const auto& [m, c] : t[i][k]) {
                    for (const auto& [n, e] : t[j][m]) acc[n] -= s * c * e;
                }
                if (!std::all_of(acc.begin(), acc.end(), [](const Scalar& x) { return x.is_zero(); })) {
                    ok = false;
                    bad = lab[j] + "," + lab[k];
                    break;
                }
            }
        }
        rep.add("jacobi:" + lab[i], ok,
                ok ? std::to_string(d * d) + " triples exact zero" : "fails with " + bad);
    }
    return rep;
}

// ---------------------------------------------------------------- Kostant form

LatticeVector binomial_H_action(const SuperMatrix& h, unsigned n, const LatticeVector& v) {
    if (!h.is_diagonal()) throw NotRational("Cartan element is not diagonal");
    if (v.size() != h.size()) throw ShapeMismatch("vector length differs from matrix size");
    LatticeVector out(v.size(), Scalar(0));
    for (std::size_t k = 0; k < v.size(); ++k) {
        const Scalar& mu = h(k, k);
        if (mu.modulus() != 0 || !mu.is_integer()) {
            throw NotRational("eigenvalue " + mu.to_string() + " is not an integer");
        }
        mpz_class b = integer_binomial(mu.rational().get_num(), n);
        out[k] = v[k] * Scalar(mpq_class(b));
    }
    return out;
}

std::size_t pbw_key(const ChevalleyBasis& cb, const PbwFactor& f) {
    const RootSystem& rs = cb.roots();
    const std::size_t nr = rs.roots().size();
    switch (f.kind) {
        case PbwKind::EvenPower: {
            const Root& r = rs.root(f.root);
            if (r.parity != Parity::Even) throw InvalidMonomial("divided power of an odd root vector");
            return *rs.find(f.root);
        }
        case PbwKind::Binomial:
            if (f.index >= cb.rank()) throw InvalidMonomial("Cartan index out of range");
            return nr + f.index;
        case PbwKind::Odd: {
            const Root& r = rs.root(f.root);
            if (r.parity != Parity::Odd) throw InvalidMonomial("odd factor on an even root");
            return nr + cb.rank() + *rs.find(f.root);
        }
    }
    return 0;
}

LatticeVector kostant_monomial_action(const ChevalleyBasis& cb,
                                      const std::vector<PbwFactor>& factors,
                                      const LatticeVector& v) {
    std::optional<std::size_t> prev;
    for (const auto& f : factors) {
        if (f.kind == PbwKind::Odd && f.exponent != 1) {
            throw InvalidMonomial("odd root vectors appear with exponent 1");
        }
        std::size_t key = pbw_key(cb, f);
        if (prev && key <= *prev) {
            throw InvalidMonomial("factors must be strictly increasing in the PBW order");
        }
        prev = key;
    }
    LatticeVector w = v;
    for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
        switch (it->kind) {
            case PbwKind::EvenPower: w = act(divided_power(cb.x(it->root), it->exponent), w); break;
            case PbwKind::Binomial: w = binomial_H_action(cb.cartan()[it->index], it->exponent, w); break;
            case PbwKind::Odd: w = act(cb.x(it->root), w); break;
        }
        if (!integral(w)) {
            throw IntegralityViolation("PBW monomial " + pbw_to_string(cb, factors) +
                                       " leaves the lattice: " + vec_string(w));
        }
    }
    return w;
}

std::vector<PbwFactor> random_pbw_monomial(const ChevalleyBasis& cb, std::mt19937_64& rng) {
    const RootSystem& rs = cb.roots();
    const std::size_t dim = cb.shape().size();
    std::vector<PbwFactor> out;
    for (const auto& r : rs.roots()) {
        if (r.parity == Parity::Even && draw(rng, 3) == 0) {
            out.push_back({PbwKind::EvenPower, r.coords, 0, static_cast<unsigned>(1 + draw(rng, dim))});
        }
    }
    for (std::size_t i = 0; i < cb.rank(); ++i) {
        if (draw(rng, 3) == 0) {
            out.push_back({PbwKind::Binomial, {}, i, static_cast<unsigned>(1 + draw(rng, dim))});
        }
    }
    for (const auto& r : rs.roots()) {
        if (r.parity == Parity::Odd && draw(rng, 3) == 0) out.push_back({PbwKind::Odd, r.coords, 0, 1});
    }
    return out;
}

std::string pbw_to_string(const ChevalleyBasis& cb, const std::vector<PbwFactor>& factors) {
    if (factors.empty()) return "1";
    std::string s;
    for (const auto& f : factors) {
        if (!s.empty()) s += " ";
        switch (f.kind) {
            case PbwKind::EvenPower:
                s += "X[" + cb.roots().name(f.root) + "]^(" + std::to_string(f.exponent) + ")";
                break;
            case PbwKind::Binomial:
                s += "(H" + std::to_string(f.index + 1) + " " + std::to_string(f.exponent) + ")";
                break;
            case PbwKind::Odd: s += "X[" + cb.roots().name(f.root) + "]"; break;
        }
    }
    return s;
}

bool admissible_lattice_check(const ChevalleyBasis& cb, const std::vector<LatticeVector>& generators) {
    const std::size_t dim = cb.shape().size();
    auto lat = RationalLattice::span(generators, dim);
    if (!lat.full_rank()) throw NotALattice("generators do not span V");
    std::vector<SuperMatrix> ops;
    for (const auto& r : cb.roots().roots()) {
        if (r.parity == Parity::Odd) {
            ops.push_back(cb.x(r.coords));
            continue;
        }
        for (unsigned n = 1; n <= dim; ++n) {
            auto p = divided_power(cb.x(r.coords), n);
            if (p.is_zero()) break;
            ops.push_back(p);
        }
    }
    for (const auto& b : lat.basis()) {
        for (const auto& op : ops) {
            if (!lat.contains(act(op, b))) return false;
        }
        for (const auto& h : cb.cartan()) {
            for (unsigned n = 1; n <= dim; ++n) {
                if (!lat.contains(binomial_H_action(h, n, b))) return false;
            }
        }
    }
    return true;
}

std::vector<std::vector<Scalar>> stabilizer_cartan(const RootSystem& rs,
                                                   const std::vector<Weight>& weights) {
    const auto& hb = rs.cartan_basis();
    const std::size_t l = hb.size();
    IntRows w;
    for (const auto& mu : weights) {
        IntVector row;
        for (const auto& h : hb) {
            Scalar v = rs.evaluate(mu, h);
            if (!v.is_integer()) throw NotRational("weight is not integral on the Cartan basis");
            row.push_back(v.rational().get_num());
        }
        w.push_back(row);
    }
    if (w.empty()) throw DegenerateWeights("no weights given");
    auto sf = smith_form(w);
    if (sf.diagonal.size() < l) {
        throw DegenerateWeights("weights span a space of rank " + std::to_string(sf.diagonal.size()) +
                                " < " + std::to_string(l));
    }
    // x = V y with y_i in (1/d_i) Z.
    std::vector<ScalarVector> gens;
    for (std::size_t i = 0; i < l; ++i) {
        ScalarVector h(rs.shape().size(), Scalar(0));
        for (std::size_t j = 0; j < l; ++j) {
            Scalar coeff(mpq_class(sf.right[j][i], sf.diagonal[i]));
            if (coeff.is_zero()) continue;
            for (std::size_t k = 0; k < h.size(); ++k) h[k] += coeff * hb[j][k];
        }
        gens.push_back(h);
    }
    return RationalLattice::span(gens, rs.shape().size()).basis();
}

Report verify_kostant(const ChevalleyBasis& cb, std::uint64_t seed, std::size_t monomials) {
    Report rep{"kostant", cb.family().name(), {}};
    const std::size_t dim = cb.shape().size();
    std::mt19937_64 rng(seed);
    std::size_t checked = 0;
    bool all = true;
    std::string bad;
    for (std::size_t t = 0; t < monomials; ++t) {
        auto mono = random_pbw_monomial(cb, rng);
        for (std::size_t k = 0; k < dim; ++k) {
            LatticeVector e(dim, Scalar(0));
            e[k] = Scalar(1);
            try {
                kostant_monomial_action(cb, mono, e);
                ++checked;
            } catch (const IntegralityViolation& ex) {
                all = false;
                if (bad.empty()) bad = ex.what();
            }
        }
    }
    rep.add("pbw_random_monomials", all,
            all ? std::to_string(monomials) + " monomials on " + std::to_string(dim) +
                      " basis vectors, " + std::to_string(checked) + " integral images"
                : bad);

    std::vector<LatticeVector> standard;
    for (std::size_t k = 0; k < dim; ++k) {
        LatticeVector e(dim, Scalar(0));
        e[k] = Scalar(1);
        standard.push_back(e);
    }
    rep.add("standard_lattice_admissible", admissible_lattice_check(cb, standard));
    auto halved = standard;
    halved[0][0] = Scalar(1, 2);
    bool h = admissible_lattice_check(cb, halved);
    rep.add("halved_lattice_rejected", !h, "first coordinate scaled by 1/2");
    bool rejected = false;
    try {
        admissible_lattice_check(cb, std::vector<LatticeVector>(standard.begin(), standard.end() - 1));
    } catch (const NotALattice&) {
        rejected = true;
    }
    rep.add("deficient_generators_rejected", rejected, "generators missing one direction");
    try {
        std::vector<PbwFactor> bad_mono;
        for (const auto& r : cb.roots().roots()) {
            if (r.parity == Parity::Odd) {
                bad_mono = {{PbwKind::Odd, r.coords, 0, 1}, {PbwKind::Odd, r.coords, 0, 1}};
                break;
            }
        }
        kostant_monomial_action(cb, bad_mono, standard[0]);
        rep.add("odd_repetition_rejected", false);
    } catch (const InvalidMonomial&) {
        rep.add("odd_repetition_rejected", true);
    }
    return rep;
}

Report verify_integrality(const ChevalleyBasis& cb) {
    Report rep = verify_chevalley(cb);
    rep.suite = "integrality";
    for (const auto& pc : cb.roots().check_properties()) rep.add("roots:" + pc.name, pc.ok, pc.detail);
    bool ints = true;
    try {
        structure_constants(cb);
        require_integral_cartan_action(cb);
    } catch (const IntegralityViolation& ex) {
        ints = false;
        rep.add("structure_constants_integral", false, ex.what());
    }
    if (ints) rep.add("structure_constants_integral", true);
    return rep;
}

Report verify_stabilizer(const ChevalleyBasis& cb) {
    const RootSystem& rs = cb.roots();
    Report rep{"stabilizer", cb.family().name(), {}};
    const std::size_t n = rs.shape().size();
    std::vector<Weight> roots;
    for (const auto& r : rs.roots()) roots.push_back(r.coords);
    auto hv = stabilizer_cartan(rs, rs.realization().weights());
    auto ha = stabilizer_cartan(rs, roots);
    auto lv = RationalLattice::span(hv, n);
    auto la = RationalLattice::span(ha, n);
    auto lr = RationalLattice::span(rs.cartan_basis(), n);
    rep.add("h_V_rank", lv.rank() == rs.rank(), "rank " + std::to_string(lv.rank()));
    rep.add("h_roots_in_h_V", lv.contains(lr), "Span_Z{H_alpha} in h_V");
    rep.add("h_V_in_h_weights", la.contains(lv), "h_V in dual of the root lattice");
    return rep;
}

Report verify_obstruction_osp12() {
    Report rep{"obstruction", "B(0,1)", {}};
    auto good = ChevalleyBasis::build(Family::make(FamilyKind::B, 0, 1));
    const RootSystem& rs = good.roots();
    const BlockShape sh = good.shape();
    auto e = [&](std::size_t i, std::size_t j, long c = 1) {
        return SuperMatrix::elementary(sh, i - 1, j - 1, Scalar(c));
    };
    Weight d = rs.parse("d1");
    Weight d2 = rs.parse("2d1");
    SuperMatrix h = e(2, 2) - e(3, 3);
    bool classical = good.cartan().size() == 1 && good.cartan()[0] == h && good.x(d2) == e(2, 3) &&
                     good.x(negate(d2)) == e(3, 2) && good.x(d) == e(1, 3) + e(2, 1) &&
                     good.x(negate(d)) == e(1, 2) - e(3, 1);
    rep.add("basis_is_h_e_f_x_y", classical, "h=E22-E33, e=E23, f=E32, x=E13+E21, y=E12-E31");
    rep.add("x_x_is_2e", super_bracket(good.x(d), good.x(d)) == Scalar(2) * e(2, 3), "[x,x] = 2e");
    rep.add("standard_basis_passes", verify_chevalley(good).passed());

    std::vector<SuperMatrix> vecs;
    for (const auto& r : rs.roots()) vecs.push_back(good.x(r.coords));

    ChevalleyBasis half(good.root_system(), {h * Scalar(1, 2)}, vecs);
    auto br = super_bracket(half.cartan()[0], half.x(d));
    auto witness = br.ratio_to(half.x(d));
    rep.add("half_h_eigenvalue", witness && *witness == Scalar(1, 2),
            "[h/2, x] = " + (witness ? witness->to_string() : std::string("?")) + " x");
    bool raised = false;
    std::string msg;
    try {
        require_integral_cartan_action(half);
    } catch (const IntegralityViolation& ex) {
        raised = true;
        msg = ex.what();
    }
    rep.add("half_h_integrality_violation", raised, msg);
    rep.add("half_h_verifier_fails", !verify_chevalley(half).passed());

    ChevalleyBasis twice(good.root_system(), {h * Scalar(2)}, vecs);
    bool ints = true;
    try {
        require_integral_cartan_action(twice);
    } catch (const IntegralityViolation&) {
        ints = false;
    }
    rep.add("double_h_brackets_integral", ints);
    auto rep2 = verify_chevalley(twice);
    bool span_fails = false;
    for (const auto& c : rep2.cases) {
        if (c.id == "a:coroot_span" && !c.ok) span_fails = true;
    }
    rep.add("double_h_fails_coroot_span", span_fails, "H_d1 = h is not in Z*2h");

    auto hd = SuperMatrix::diagonal(sh, rs.normalized_coroot(d));
    auto h2d = SuperMatrix::diagonal(sh, rs.normalized_coroot(d2));
    rep.add("normalized_H_d_is_2H_2d", hd == Scalar(2) * h2d,
            "H_d1 = " + hd.to_string() + ", H_2d1 = " + h2d.to_string());
    return rep;
}

// ---------------------------------------------------------------- Heisenberg

Heisenberg heisenberg_build(unsigned n, long a) {
    if (n == 0 || n > 16) throw ShapeMismatch("Heisenberg rank must be in 1..16");
    Heisenberg hz;
    hz.n = n;
    hz.a = a;
    const std::size_t dim = std::size_t(1) << n;
    std::vector<Monomial> masks;
    for (int parity = 0; parity < 2; ++parity) {
        for (Monomial s = 0; s < dim; ++s) {
            if (static_cast<int>(__builtin_popcountll(s) % 2) == parity) masks.push_back(s);
        }
    }
    hz.shape = {dim / 2, dim / 2};
    std::map<Monomial, std::size_t> pos;
    for (std::size_t k = 0; k < masks.size(); ++k) {
        pos[masks[k]] = k;
        hz.monomials.push_back(monomial_indices(masks[k]));
    }
    hz.e = SuperMatrix::identity(hz.shape) * Scalar(a);
    for (unsigned i = 1; i <= n; ++i) {
        Monomial bit = Monomial(1) << (i - 1);
        SuperMatrix ai(hz.shape), bi(hz.shape);
        for (std::size_t k = 0; k < masks.size(); ++k) {
            Monomial s = masks[k];
            int sign = (__builtin_popcountll(s & (bit - 1)) % 2) ? -1 : 1;
            if (s & bit) {
                ai(pos[s ^ bit], k) = Scalar(sign);
            } else {
                bi(pos[s | bit], k) = Scalar(sign * a);
            }
        }
        hz.lower.push_back(ai);
        hz.raise.push_back(bi);
    }
    return hz;
}

nlohmann::json heisenberg_json(const Heisenberg& h) {
    nlohmann::json j;
    j["n"] = h.n;
    j["a"] = h.a;
    j["shape"] = {h.shape.p, h.shape.q};
    auto mons = nlohmann::json::array();
    for (const auto& m : h.monomials) {
        std::string s;
        for (unsigned i : m) s += (s.empty() ? "" : "*") + std::string("xi") + std::to_string(i);
        mons.push_back(s.empty() ? "1" : s);
    }
    j["basis"] = mons;
    j["e"] = h.e.to_json();
    auto lower = nlohmann::json::array();
    auto raise = nlohmann::json::array();
    for (std::size_t i = 0; i < h.lower.size(); ++i) {
        lower.push_back(h.lower[i].to_json());
        raise.push_back(h.raise[i].to_json());
    }
    j["a_i"] = lower;
    j["b_i"] = raise;
    return j;
}

}  // namespace chevsuper
