#include "chevsuper/rootdata.hpp"

#include <algorithm>
#include <cctype>
#include <regex>
#include <set>
#include <sstream>

#include "chevsuper/errors.hpp"

namespace chevsuper {

namespace {

using Position = std::pair<std::size_t, std::size_t>;

std::string strip_spaces(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
    }
    return out;
}

// Scales a rational vector to a primitive integer vector whose first nonzero
// entry is positive.
ScalarVector primitive(const ScalarVector& v) {
    mpz_class den = 1;
    for (const auto& s : v) {
        mpz_class d = s.rational().get_den();
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), d.get_mpz_t());
    }
    IntVector ints;
    mpz_class g = 0;
    for (const auto& s : v) {
        mpq_class x = s.rational() * den;
        ints.push_back(x.get_num());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), ints.back().get_mpz_t());
    }
    if (g == 0) return v;
    for (const auto& x : ints) {
        if (x != 0) {
            if (x < 0) g = -g;
            break;
        }
    }
    ScalarVector out;
    for (const auto& x : ints) out.emplace_back(mpq_class(x / g));
    return out;
}

int first_nonzero_sign(const std::vector<Scalar>& d) {
    for (const auto& s : d) {
        if (!s.is_zero()) return s.sign();
    }
    return 0;
}

}  // namespace

// ---------------------------------------------------------------- families

Family Family::make(FamilyKind kind, int m, int n) {
    Family f{kind, m, n};
    bool ok = false;
    switch (kind) {
        case FamilyKind::A: ok = m >= 0 && n >= 0 && m != n && m + n > 0; break;
        case FamilyKind::B: ok = m >= 0 && n >= 1; break;
        case FamilyKind::C:
            ok = n >= 2;
            f.m = 0;
            break;
        case FamilyKind::D: ok = m >= 2 && n >= 1; break;
    }
    if (!ok) throw InvalidFamily("parameters out of range for " + f.name());
    return f;
}

Family Family::parse(const std::string& text) {
    static const std::regex two(R"(([ABDabd])\((\d{1,3}),(\d{1,3})\))");
    static const std::regex one(R"(([Cc])\((\d{1,3})\))");
    std::string s = strip_spaces(text);
    std::smatch mt;
    if (std::regex_match(s, mt, two)) {
        char k = static_cast<char>(std::toupper(static_cast<unsigned char>(mt[1].str()[0])));
        FamilyKind kind = k == 'A' ? FamilyKind::A : k == 'B' ? FamilyKind::B : FamilyKind::D;
        return make(kind, std::stoi(mt[2]), std::stoi(mt[3]));
    }
    if (std::regex_match(s, mt, one)) return make(FamilyKind::C, 0, std::stoi(mt[2]));
    throw InvalidFamily("unrecognised family '" + text + "'");
}

std::string Family::name() const {
    switch (kind) {
        case FamilyKind::A: return "A(" + std::to_string(m) + "," + std::to_string(n) + ")";
        case FamilyKind::B: return "B(" + std::to_string(m) + "," + std::to_string(n) + ")";
        case FamilyKind::C: return "C(" + std::to_string(n) + ")";
        case FamilyKind::D: return "D(" + std::to_string(m) + "," + std::to_string(n) + ")";
    }
    return "?";
}

// ---------------------------------------------------------------- weights

std::string weight_name(const Weight& w, std::size_t eps_count) {
    std::ostringstream os;
    bool first = true;
    for (std::size_t c = 0; c < w.size(); ++c) {
        int k = w[c];
        if (k == 0) continue;
        if (k < 0) {
            os << '-';
        } else if (!first) {
            os << '+';
        }
        if (std::abs(k) != 1) os << std::abs(k);
        if (c < eps_count) {
            os << 'e' << (c + 1);
        } else {
            os << 'd' << (c - eps_count + 1);
        }
        first = false;
    }
    return first ? "0" : os.str();
}

Weight parse_weight(const std::string& text, std::size_t eps_count, std::size_t delta_count) {
    static const std::regex term(R"(([+-]?)(\d*)([ed])(\d+))");
    std::string s = strip_spaces(text);
    Weight w(eps_count + delta_count, 0);
    if (s.empty()) throw ParseError("empty root name");
    auto it = std::sregex_iterator(s.begin(), s.end(), term);
    std::size_t consumed = 0;
    for (; it != std::sregex_iterator(); ++it) {
        const auto& mt = *it;
        if (static_cast<std::size_t>(mt.position()) != consumed) break;
        if (consumed > 0 && mt[1].str().empty()) {
            throw ParseError("missing sign in root name '" + text + "'");
        }
        consumed += mt.length();
        int k = mt[2].str().empty() ? 1 : std::stoi(mt[2]);
        if (mt[1] == "-") k = -k;
        std::size_t idx = std::stoul(mt[4]);
        std::size_t limit = mt[3] == "e" ? eps_count : delta_count;
        if (idx == 0 || idx > limit) {
            throw ParseError("index out of range in root name '" + text + "'");
        }
        std::size_t c = mt[3] == "e" ? idx - 1 : eps_count + idx - 1;
        w[c] += k;
    }
    if (consumed != s.size()) throw ParseError("cannot parse root name '" + text + "'");
    return w;
}

bool is_positive(const Weight& w) {
    for (int x : w) {
        if (x != 0) return x > 0;
    }
    return false;
}

Weight negate(const Weight& w) { return scale(w, -1); }

Weight add(const Weight& a, const Weight& b) {
    Weight out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

Weight scale(const Weight& a, int k) {
    Weight out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = k * a[i];
    return out;
}

// ---------------------------------------------------------------- realization

Realization Realization::build(const Family& family) {
    Realization r;
    r.family_ = family;
    auto unit = [&r](std::size_t c, int sign) {
        Weight w(r.coord_count(), 0);
        w[c] = sign;
        return w;
    };
    if (family.kind == FamilyKind::A) {
        r.eps_count_ = static_cast<std::size_t>(family.m + 1);
        r.delta_count_ = static_cast<std::size_t>(family.n + 1);
        r.shape_ = {r.eps_count_, r.delta_count_};
        for (std::size_t c = 0; c < r.coord_count(); ++c) {
            r.weights_.push_back(unit(c, 1));
            r.reading_.push_back(c);
        }
        return r;
    }

    r.osp_ = true;
    bool odd_dim = family.kind == FamilyKind::B;
    std::size_t m = 0;
    std::size_t n = 0;
    switch (family.kind) {
        case FamilyKind::B:
        case FamilyKind::D:
            m = static_cast<std::size_t>(family.m);
            n = static_cast<std::size_t>(family.n);
            break;
        case FamilyKind::C:
            m = 1;
            n = static_cast<std::size_t>(family.n - 1);
            break;
        case FamilyKind::A: break;
    }
    r.eps_count_ = m;
    r.delta_count_ = n;
    std::size_t p = 2 * m + (odd_dim ? 1 : 0);
    r.shape_ = {p, 2 * n};
    std::size_t off = odd_dim ? 1 : 0;
    if (odd_dim) r.weights_.push_back(Weight(r.coord_count(), 0));
    for (std::size_t i = 0; i < m; ++i) r.weights_.push_back(unit(i, 1));
    for (std::size_t i = 0; i < m; ++i) r.weights_.push_back(unit(i, -1));
    for (std::size_t j = 0; j < n; ++j) r.weights_.push_back(unit(m + j, 1));
    for (std::size_t j = 0; j < n; ++j) r.weights_.push_back(unit(m + j, -1));
    for (std::size_t i = 0; i < m; ++i) r.reading_.push_back(off + i);
    for (std::size_t j = 0; j < n; ++j) r.reading_.push_back(p + j);

    // B uses twice the form of C and D so that osp(1|2) comes out with the
    // classical matrices h, e, f, x, y.
    long s = odd_dim ? 2 : 1;
    std::size_t dim = p + 2 * n;
    r.form_ = Matrix<Scalar>(dim, dim, Scalar(0));
    if (odd_dim) r.form_(0, 0) = Scalar(s);
    for (std::size_t i = 0; i < m; ++i) {
        r.form_(off + i, off + m + i) = Scalar(1);
        r.form_(off + m + i, off + i) = Scalar(1);
    }
    for (std::size_t j = 0; j < n; ++j) {
        r.form_(p + j, p + n + j) = Scalar(-s);
        r.form_(p + n + j, p + j) = Scalar(s);
    }
    return r;
}

std::vector<ScalarVector> Realization::solve_support(const std::vector<Position>& positions,
                                                     Parity parity) const {
    const std::size_t dim = shape_.size();
    const std::size_t nv = positions.size();
    if (nv == 0) return {};
    std::vector<ScalarVector> rows;
    if (osp_) {
        // phi(X v_a, v_b) + (-1)^{|X||a|} phi(v_a, X v_b) = 0 for all a, b.
        for (std::size_t a = 0; a < dim; ++a) {
            for (std::size_t b = 0; b < dim; ++b) {
                ScalarVector row(nv, Scalar(0));
                bool any = false;
                int sign = (parity == Parity::Odd && shape_.index_parity(a) == Parity::Odd) ? -1 : 1;
                for (std::size_t t = 0; t < nv; ++t) {
                    auto [i, k] = positions[t];
                    if (k == a && !form_(i, b).is_zero()) row[t] += form_(i, b);
                    if (k == b && !form_(a, i).is_zero()) row[t] += Scalar(sign) * form_(a, i);
                    if (!row[t].is_zero()) any = true;
                }
                if (any) rows.push_back(std::move(row));
            }
        }
    } else {
        ScalarVector row(nv, Scalar(0));
        bool any = false;
        for (std::size_t t = 0; t < nv; ++t) {
            auto [i, k] = positions[t];
            if (i == k) {
                row[t] = shape_.index_parity(i) == Parity::Even ? Scalar(1) : Scalar(-1);
                any = true;
            }
        }
        if (any) rows.push_back(std::move(row));
    }
    if (rows.empty()) {
        std::vector<ScalarVector> out;
        for (std::size_t t = 0; t < nv; ++t) {
            ScalarVector e(nv, Scalar(0));
            e[t] = Scalar(1);
            out.push_back(std::move(e));
        }
        return out;
    }
    Matrix<Scalar> m(rows.size(), nv);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < nv; ++j) m(i, j) = rows[i][j];
    }
    return nullspace(m);
}

bool Realization::contains(const SuperMatrix& x) const {
    if (!(x.shape() == shape_)) return false;
    auto par = x.parity();
    if (!par) {
        // Check even and odd parts separately.
        SuperMatrix even(shape_), odd(shape_);
        for (std::size_t i = 0; i < shape_.size(); ++i) {
            for (std::size_t j = 0; j < shape_.size(); ++j) {
                bool e = shape_.index_parity(i) == shape_.index_parity(j);
                (e ? even : odd)(i, j) = x(i, j);
            }
        }
        return contains(even) && contains(odd);
    }
    if (!osp_) return supertrace(x).is_zero();
    const std::size_t dim = shape_.size();
    // X^T F + sign(a) F X = 0 entrywise.
    for (std::size_t a = 0; a < dim; ++a) {
        int sign = (*par == Parity::Odd && shape_.index_parity(a) == Parity::Odd) ? -1 : 1;
        for (std::size_t b = 0; b < dim; ++b) {
            Scalar v(0);
            for (std::size_t i = 0; i < dim; ++i) {
                v += x(i, a) * form_(i, b);
                v += Scalar(sign) * form_(a, i) * x(i, b);
            }
            if (!v.is_zero()) return false;
        }
    }
    return true;
}

Scalar Realization::evaluate(const Weight& mu, const std::vector<Scalar>& diag) const {
    if (mu.size() != coord_count() || diag.size() != shape_.size()) {
        throw ShapeMismatch("weight evaluation shape");
    }
    Scalar s(0);
    for (std::size_t c = 0; c < mu.size(); ++c) {
        if (mu[c] != 0) s += Scalar(mu[c]) * diag[reading_[c]];
    }
    return s;
}

// ---------------------------------------------------------------- root system

RootSystem::RootSystem(const Family& family) : real_(Realization::build(family)) {
    const BlockShape sh = real_.shape();
    const std::size_t dim = sh.size();

    std::map<Weight, std::vector<Position>> by_weight;
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t k = 0; k < dim; ++k) {
            if (i == k) continue;
            Weight w = add(real_.weight(i), negate(real_.weight(k)));
            if (std::all_of(w.begin(), w.end(), [](int x) { return x == 0; })) continue;
            by_weight[w].push_back({i, k});
        }
    }

    struct Space {
        Weight w;
        Parity parity;
        SuperMatrix prim;
        std::size_t dim;
        bool homogeneous;
    };
    std::vector<Space> spaces;
    for (const auto& [w, positions] : by_weight) {
        std::vector<Position> even_pos, odd_pos;
        for (auto pos : positions) {
            bool e = sh.index_parity(pos.first) == sh.index_parity(pos.second);
            (e ? even_pos : odd_pos).push_back(pos);
        }
        auto even_sol = real_.solve_support(even_pos, Parity::Even);
        auto odd_sol = real_.solve_support(odd_pos, Parity::Odd);
        if (even_sol.empty() && odd_sol.empty()) continue;
        bool use_even = !even_sol.empty();
        const auto& sol = use_even ? even_sol : odd_sol;
        const auto& pos = use_even ? even_pos : odd_pos;
        auto v = primitive(sol.front());
        SuperMatrix x(sh);
        for (std::size_t t = 0; t < pos.size(); ++t) x(pos[t].first, pos[t].second) = v[t];
        spaces.push_back({w, use_even ? Parity::Even : Parity::Odd, x,
                          even_sol.size() + odd_sol.size(),
                          even_sol.empty() || odd_sol.empty()});
    }
    std::sort(spaces.begin(), spaces.end(), [](const Space& a, const Space& b) {
        bool pa = is_positive(a.w), pb = is_positive(b.w);
        if (pa != pb) return pa;
        return pa ? a.w > b.w : negate(a.w) > negate(b.w);  // negatives mirror positives
    });
    for (auto& s : spaces) {
        index_[s.w] = roots_.size();
        roots_.push_back({s.w, s.parity, is_positive(s.w)});
        vectors_.push_back(s.prim);
        space_dims_.push_back(s.dim);
        homogeneous_spaces_.push_back(s.homogeneous);
        if (s.parity == Parity::Odd) (is_positive(s.w) ? n_plus_ : n_minus_)++;
    }

    // Signs of negative root vectors and coroots.
    coroots_.assign(roots_.size(), {});
    for (std::size_t a = 0; a < roots_.size(); ++a) {
        const Root& r = roots_[a];
        if (!r.positive) continue;
        auto neg = find(negate(r.coords));
        if (!neg) continue;  // reported by check_properties
        SuperMatrix& xm = vectors_[*neg];
        auto b = super_bracket(vectors_[a], xm).diagonal_entries();
        if (r.parity == Parity::Even) {
            Scalar val = real_.evaluate(r.coords, b);
            if (val.is_zero()) throw NotAChevalleyBasis("even root with degenerate coroot");
            Scalar c = val / Scalar(2);
            xm *= c.inv();
            for (auto& x : b) x /= c;
        } else {
            int s = first_nonzero_sign(b);
            if (s < 0) {
                xm = -xm;
                for (auto& x : b) x = -x;
            }
        }
        coroots_[a] = b;
        std::vector<Scalar> nb;
        for (const auto& x : b) nb.push_back(-x);
        coroots_[*neg] = nb;
    }

    // Cartan subalgebra of the realization.
    std::vector<Position> diag_pos;
    for (std::size_t i = 0; i < dim; ++i) diag_pos.push_back({i, i});
    cartan_space_ = real_.solve_support(diag_pos, Parity::Even);

    if (family.kind == FamilyKind::A) {
        for (std::size_t i = 0; i + 1 < dim; ++i) {
            std::vector<Scalar> h(dim, Scalar(0));
            h[i] = Scalar(1);
            h[i + 1] = i + 1 == sh.p ? Scalar(1) : Scalar(-1);
            cartan_.push_back(h);
        }
    } else {
        std::vector<ScalarVector> gens;
        for (const auto& c : coroots_) {
            if (!c.empty()) gens.push_back(c);
        }
        auto lat = RationalLattice::span(gens, dim);
        cartan_ = lat.basis();
    }
}

std::vector<Root> RootSystem::positive_roots() const {
    std::vector<Root> out;
    for (const auto& r : roots_) {
        if (r.positive) out.push_back(r);
    }
    return out;
}

std::vector<Root> RootSystem::simple_roots() const {
    auto pos = positive_roots();
    std::set<Weight> decomposable;
    for (const auto& a : pos) {
        for (const auto& b : pos) {
            Weight s = add(a.coords, b.coords);
            if (contains(s)) decomposable.insert(s);
        }
    }
    std::vector<Root> out;
    for (const auto& r : pos) {
        if (!decomposable.count(r.coords)) out.push_back(r);
    }
    return out;
}

std::optional<std::size_t> RootSystem::find(const Weight& w) const {
    auto it = index_.find(w);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

const Root& RootSystem::root(const Weight& w) const {
    auto i = find(w);
    if (!i) throw NotARoot("'" + name(w) + "' is not a root of " + family().name());
    return roots_[*i];
}

long RootSystem::form(const Weight& a, const Weight& b) const {
    long s = 0;
    for (std::size_t c = 0; c < a.size(); ++c) {
        long v = static_cast<long>(a[c]) * b[c];
        s += c < real_.eps_count() ? v : -v;
    }
    return s;
}

const SuperMatrix& RootSystem::root_vector(const Weight& w) const {
    root(w);
    return vectors_[*find(w)];
}

const std::vector<Scalar>& RootSystem::coroot(const Weight& w) const {
    root(w);
    return coroots_[*find(w)];
}

std::vector<Scalar> RootSystem::normalized_coroot(const Weight& w) const {
    auto h = coroot(w);
    if (is_isotropic(w)) return h;
    Scalar val = evaluate(w, h);
    Scalar f = Scalar(2) / val;
    for (auto& x : h) x *= f;
    return h;
}

int RootSystem::sigma(const Weight& w) const {
    const Root& r = root(w);
    return (r.parity == Parity::Odd && !r.positive) ? -1 : 1;
}

unsigned RootSystem::alpha_string_length(const Weight& alpha, const Weight& beta) const {
    root(alpha);
    root(beta);
    if (add(alpha, beta) == Weight(alpha.size(), 0)) {
        throw NotARoot("alpha-string through -alpha is not defined");
    }
    unsigned r = 0;
    Weight cur = beta;
    for (unsigned k = 1; k <= 2 * shape().size() + 2; ++k) {
        cur = add(cur, negate(alpha));
        if (std::all_of(cur.begin(), cur.end(), [](int x) { return x == 0; })) return k;
        if (!contains(cur)) break;
        r = k;
    }
    return r;
}

std::vector<PropertyCheck> RootSystem::check_properties() const {
    std::vector<PropertyCheck> out;

    bool disjoint = std::all_of(homogeneous_spaces_.begin(), homogeneous_spaces_.end(),
                                [](bool b) { return b; });
    out.push_back({"disjoint_parities", disjoint,
                   disjoint ? "every root space is homogeneous" : "mixed-parity root space"});

    bool closed = true;
    std::string bad;
    for (const auto& r : roots_) {
        auto i = find(negate(r.coords));
        if (!i || roots_[*i].parity != r.parity) {
            closed = false;
            bad = name(r.coords);
            break;
        }
    }
    out.push_back({"negation_closed", closed, closed ? "-D0 = D0 and -D1 = D1" : "fails at " + bad});

    bool prop = true;
    for (const auto& a : roots_) {
        for (const auto& b : roots_) {
            // b = c a with rational c: compare via cross products.
            std::size_t lead = 0;
            while (a.coords[lead] == 0) ++lead;
            long num = b.coords[lead];
            long den = a.coords[lead];
            bool proportional = true;
            for (std::size_t c = 0; c < a.coords.size(); ++c) {
                if (static_cast<long>(b.coords[c]) * den != static_cast<long>(a.coords[c]) * num) {
                    proportional = false;
                    break;
                }
            }
            if (!proportional) continue;
            Scalar c(num, den);
            if (c == Scalar(1) || c == Scalar(-1)) continue;
            bool two = c == Scalar(2) || c == Scalar(-2);
            // c = +-2 only for a non-isotropic odd a with b even.
            if (!two && !(c == Scalar(1, 2) || c == Scalar(-1, 2))) prop = false;
            if (two && !(a.parity == Parity::Odd && b.parity == Parity::Even && !is_isotropic(a.coords))) {
                prop = false;
            }
        }
    }
    out.push_back({"proportionality", prop, "c in {+-1, +-2}"});

    bool one_dim = std::all_of(space_dims_.begin(), space_dims_.end(),
                               [](std::size_t d) { return d == 1; });
    out.push_back({"root_spaces_one_dimensional", one_dim, "dim g_alpha = 1"});

    // Supertrace form on h versus the coordinate form.
    const auto& hb = cartan_space_;
    const std::size_t l = hb.size();
    const BlockShape sh = shape();
    Matrix<Scalar> gram(l, l, Scalar(0));
    for (std::size_t i = 0; i < l; ++i) {
        for (std::size_t j = 0; j < l; ++j) {
            Scalar s(0);
            for (std::size_t k = 0; k < sh.size(); ++k) {
                Scalar v = hb[i][k] * hb[j][k];
                s += sh.index_parity(k) == Parity::Even ? v : -v;
            }
            gram(i, j) = s;
        }
    }
    bool form_ok = true;
    std::string form_detail;
    try {
        auto ginv = inverse(gram);
        std::optional<Scalar> lambda;
        for (const auto& a : roots_) {
            for (const auto& b : roots_) {
                Scalar s(0);
                for (std::size_t i = 0; i < l; ++i) {
                    for (std::size_t j = 0; j < l; ++j) {
                        s += evaluate(a.coords, hb[i]) * ginv(i, j) * evaluate(b.coords, hb[j]);
                    }
                }
                Scalar coord(form(a.coords, b.coords));
                if (coord.is_zero()) {
                    if (!s.is_zero()) form_ok = false;
                    continue;
                }
                Scalar ratio = s / coord;
                if (lambda && *lambda != ratio) form_ok = false;
                lambda = ratio;
            }
        }
        form_detail = lambda ? "supertrace form = " + lambda->to_string() + " * coordinate form"
                             : "no nonzero pairing";
        if (!lambda) form_ok = false;
    } catch (const NotInvertible&) {
        form_ok = false;
        form_detail = "supertrace form degenerate on h";
    }
    out.push_back({"form_consistency", form_ok, form_detail});

    bool counts = n_plus_ == n_minus_ && (n_plus_ + n_minus_) % 2 == 0;
    out.push_back({"odd_counts", counts,
                   "N+ = " + std::to_string(n_plus_) + ", N- = " + std::to_string(n_minus_)});
    return out;
}

nlohmann::json diag_json(const std::vector<Scalar>& d) {
    auto arr = nlohmann::json::array();
    for (const auto& s : d) arr.push_back(scalar_json(s));
    return arr;
}

nlohmann::json RootSystem::to_json() const {
    nlohmann::json j;
    j["family"] = family().name();
    j["shape"] = {shape().p, shape().q};
    auto roots = nlohmann::json::array();
    auto coroots = nlohmann::json::object();
    for (const auto& r : roots_) {
        roots.push_back({{"name", name(r.coords)},
                         {"coords", r.coords},
                         {"parity", to_string(r.parity)},
                         {"positive", r.positive}});
        coroots[name(r.coords)] = diag_json(coroot(r.coords));
    }
    j["roots"] = roots;
    j["coroots"] = coroots;
    auto form_rows = nlohmann::json::array();
    for (const auto& a : roots_) {
        auto row = nlohmann::json::array();
        for (const auto& b : roots_) row.push_back(form(a.coords, b.coords));
        form_rows.push_back(row);
    }
    j["form"] = form_rows;
    auto simple = nlohmann::json::array();
    for (const auto& r : simple_roots()) simple.push_back(name(r.coords));
    j["simple_roots"] = simple;
    j["n_plus"] = n_plus_;
    j["n_minus"] = n_minus_;
    return j;
}

}  // namespace chevsuper
