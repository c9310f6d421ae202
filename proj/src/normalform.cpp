#include <algorithm>

#include "chevsuper/errors.hpp"
#include "chevsuper/supergroup.hpp"

namespace chevsuper {

namespace {

// Distinct roots have disjoint supports in the weight basis, so one entry
// per odd root reads off its coefficient.
struct OddDecomposer {
    const Supergroup& g;
    std::vector<Weight> roots;
    std::vector<std::pair<std::size_t, std::size_t>> pivot;

    explicit OddDecomposer(const Supergroup& group) : g(group) {
        const std::size_t n = g.shape().size();
        for (const auto& r : g.roots().roots()) {
            if (r.parity != Parity::Odd) continue;
            const auto& x = g.x(r.coords);
            for (std::size_t k = 0; k < n * n; ++k) {
                if (!x(k / n, k % n).is_zero()) {
                    roots.push_back(r.coords);
                    pivot.push_back({k / n, k % n});
                    break;
                }
            }
        }
    }

    // E^-1 (1 + phi X_gamma) E as a product of commuting odd factors.
    std::vector<OddFactor> conjugate(const OddFactor& f, const GroupElement& e, const GroupElement& einv) const {
        const unsigned gens = g.generators();
        auto one = GroupElement::identity(g.shape(), gens);
        auto y = (einv * g.odd_factor(f.root, f.theta) * e).matrix() - one.matrix();
        const BlockShape sh = g.shape();
        // Undo the Koszul sign of an odd coefficient.
        for (std::size_t i = 0; i < sh.size(); ++i) {
            if (sh.index_parity(i) != Parity::Odd) continue;
            for (std::size_t j = 0; j < sh.size(); ++j) y(i, j) = -y(i, j);
        }
        std::vector<OddFactor> out;
        GrassmannMatrix check(sh.size(), sh.size(), SuperScalar::zero(gens));
        for (std::size_t k = 0; k < roots.size(); ++k) {
            auto [i, j] = pivot[k];
            if (y(i, j).is_zero()) continue;
            const auto& x = g.x(roots[k]);
            SuperScalar psi = y(i, j) * x(i, j).inv();
            for (std::size_t a = 0; a < sh.size(); ++a) {
                for (std::size_t b = 0; b < sh.size(); ++b) {
                    if (!x(a, b).is_zero()) check(a, b) += psi * x(a, b);
                }
            }
            out.push_back({roots[k], std::move(psi)});
        }
        if (check != y) throw FormulaMismatch("even conjugate of an odd factor left the odd root spaces");
        return out;
    }
};

struct Rewriter {
    const Supergroup& g;
    OddDecomposer dec;
    GroupElement g0;
    std::vector<OddFactor> odds;

    explicit Rewriter(const Supergroup& group) : g(group), dec(group), g0(group.identity()) {}

    // prefix * E = E * conjugated prefix
    void absorb(std::vector<OddFactor> prefix, const GroupElement& e, std::vector<OddFactor>& out) {
        if (e.is_identity()) {
            for (auto& f : prefix) out.push_back(std::move(f));
            return;
        }
        auto einv = e.inv();
        for (const auto& f : prefix) {
            for (auto& c : dec.conjugate(f, e, einv)) out.push_back(std::move(c));
        }
        g0 = g0 * e;
    }

    void push_even(const GroupElement& e) {
        std::vector<OddFactor> out;
        absorb(std::move(odds), e, out);
        odds = std::move(out);
    }

    void push_odd(OddFactor f) {
        if (!f.theta.is_zero()) odds.push_back(std::move(f));
    }

    // One rewrite at the first adjacent pair out of order; false when sorted.
    bool step() {
        for (std::size_t i = 0; i + 1 < odds.size(); ++i) {
            const auto& a = odds[i];
            const auto& b = odds[i + 1];
            if (odd_root_less(a.root, b.root)) continue;
            auto fa = g.odd_factor(a.root, a.theta);
            auto fb = g.odd_factor(b.root, b.theta);
            std::vector<OddFactor> middle;
            GroupElement lead;
            if (a.root == b.root) {
                OddFactor merged{a.root, a.theta + b.theta};
                // A B = D M with D even
                lead = fa * fb * g.odd_factor(merged.root, merged.theta).inv();
                middle.push_back(std::move(merged));
            } else {
                // A B = (A, B) B A
                lead = commutator(fa, fb);
                middle.push_back(b);
                middle.push_back(a);
            }
            if (!lead.is_block_diagonal()) throw FormulaMismatch("odd rewrite left G0");
            std::vector<OddFactor> prefix(odds.begin(), odds.begin() + static_cast<long>(i));
            std::vector<OddFactor> rest(odds.begin() + static_cast<long>(i) + 2, odds.end());
            std::vector<OddFactor> out;
            absorb(std::move(prefix), lead, out);
            for (auto& f : middle) {
                if (!f.theta.is_zero()) out.push_back(std::move(f));
            }
            for (auto& f : rest) out.push_back(std::move(f));
            odds = std::move(out);
            return true;
        }
        return false;
    }
};

SuperScalar zero_like(const Supergroup& g) { return SuperScalar::zero(g.generators()); }

}  // namespace

bool odd_root_less(const Weight& a, const Weight& b) {
    bool pa = is_positive(a), pb = is_positive(b);
    if (pa != pb) return !pa;
    return a < b;
}

NormalForm normal_form(const Supergroup& g, const GeneratorWord& w) {
    Rewriter rw(g);
    for (const auto& f : w) {
        switch (f.kind) {
            case FactorKind::EvenRoot: rw.push_even(g.x_even(f.root, f.even)); break;
            case FactorKind::Torus: rw.push_even(g.h_alpha(f.root, f.even)); break;
            case FactorKind::OddRoot: rw.push_odd({f.root, f.odd}); break;
            case FactorKind::GammaRoot:
                g.x_gamma(f.root, f.odd, f.even);
                rw.push_odd({f.root, f.odd});
                rw.push_even(g.x_gamma(f.root, zero_like(g), f.even));
                break;
        }
    }
    constexpr std::size_t kMaxSteps = 1000000;
    std::size_t steps = 0;
    while (rw.step()) {
        if (++steps > kMaxSteps) throw FormulaMismatch("normal form rewriting did not terminate");
    }
    NormalForm nf{rw.g0, {}, {}};
    for (auto& f : rw.odds) (is_positive(f.root) ? nf.pos : nf.neg).push_back(std::move(f));
    return nf;
}

GroupElement reconstruct(const Supergroup& g, const NormalForm& nf) {
    GroupElement out = nf.g0;
    for (const auto& f : nf.neg) out = out * g.odd_factor(f.root, f.theta);
    for (const auto& f : nf.pos) out = out * g.odd_factor(f.root, f.theta);
    return out;
}

bool uniqueness_probe(const Supergroup& g, const GeneratorWord& w1, const GeneratorWord& w2) {
    auto a = normal_form(g, w1);
    auto b = normal_form(g, w2);
    auto same = [](const std::vector<OddFactor>& x, const std::vector<OddFactor>& y) {
        if (x.size() != y.size()) return false;
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (x[i].root != y[i].root || x[i].theta != y[i].theta) return false;
        }
        return true;
    };
    return a.g0 == b.g0 && same(a.neg, b.neg) && same(a.pos, b.pos);
}

nlohmann::json normal_form_json(const Supergroup& g, const NormalForm& nf) {
    auto list = [&](const std::vector<OddFactor>& fs) {
        auto arr = nlohmann::json::array();
        for (const auto& f : fs) {
            arr.push_back({{"root", g.roots().name(f.root)}, {"theta", f.theta.to_string()}});
        }
        return arr;
    };
    return {{"g0", nf.g0.to_json()}, {"neg", list(nf.neg)}, {"pos", list(nf.pos)}};
}

// ---------------------------------------------------------------- random words

namespace {

struct RootPools {
    std::vector<Weight> even, iso, gamma, all;
    explicit RootPools(const RootSystem& rs) {
        for (const auto& r : rs.roots()) {
            all.push_back(r.coords);
            if (r.parity == Parity::Even) even.push_back(r.coords);
            else if (rs.is_isotropic(r.coords)) iso.push_back(r.coords);
            else gamma.push_back(r.coords);
        }
    }
};

template <class T>
const T& pick(const std::vector<T>& v, std::mt19937_64& rng) {
    return v[rng() % v.size()];
}

long uniform(std::mt19937_64& rng, long lo, long hi) {
    return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

SuperScalar nilpotent_pair(const Supergroup& g, std::mt19937_64& rng) {
    unsigned n = g.generators();
    unsigned a = 1 + static_cast<unsigned>(rng() % n);
    unsigned b = 1 + static_cast<unsigned>(rng() % (n - 1));
    if (b >= a) ++b;
    return SuperScalar::monomial(n, {std::min(a, b), std::max(a, b)}, g.scalar(1));
}

SuperScalar even_param(const Supergroup& g, std::mt19937_64& rng, bool invertible) {
    long body = invertible ? (rng() % 2 ? 1 : -1) * uniform(rng, 1, 2) : uniform(rng, -2, 2);
    SuperScalar t = g.constant(body);
    if (rng() % 2) t += nilpotent_pair(g, rng);
    return t;
}

}  // namespace

GeneratorWord random_word(const Supergroup& g, std::mt19937_64& rng) {
    RootPools pools(g.roots());
    std::vector<FactorKind> kinds = {FactorKind::EvenRoot, FactorKind::Torus};
    if (!pools.iso.empty()) kinds.push_back(FactorKind::OddRoot);
    if (!pools.gamma.empty()) kinds.push_back(FactorKind::GammaRoot);
    if (pools.even.empty()) kinds.erase(kinds.begin());
    unsigned next = 1;
    std::size_t len = 1 + rng() % 12;
    GeneratorWord w;
    for (std::size_t i = 0; i < len; ++i) {
        WordFactor f;
        f.kind = pick(kinds, rng);
        f.odd = zero_like(g);
        f.even = zero_like(g);
        bool odd_slot = f.kind == FactorKind::OddRoot || f.kind == FactorKind::GammaRoot;
        if (odd_slot && next > g.generators()) f.kind = FactorKind::Torus;
        switch (f.kind) {
            case FactorKind::EvenRoot:
                f.root = pick(pools.even, rng);
                f.even = even_param(g, rng, false);
                break;
            case FactorKind::Torus:
                f.root = pick(pools.all, rng);
                f.even = even_param(g, rng, true);
                break;
            case FactorKind::OddRoot:
                f.root = pick(pools.iso, rng);
                f.odd = g.theta(next++);
                break;
            case FactorKind::GammaRoot:
                f.root = pick(pools.gamma, rng);
                f.odd = g.theta(next++);
                f.even = even_param(g, rng, false);
                break;
        }
        w.push_back(std::move(f));
    }
    return w;
}

GeneratorWord equivalent_word(const Supergroup& g, const GeneratorWord& w, std::mt19937_64& rng) {
    RootPools pools(g.roots());
    GeneratorWord out = w;
    std::size_t edits = 1 + rng() % 3;
    for (std::size_t e = 0; e < edits; ++e) {
        std::size_t pos = rng() % (out.size() + 1);
        auto at = out.begin() + static_cast<long>(pos);
        switch (rng() % 6) {
            case 0: {
                // x(a, t) x(a, -t)
                if (pools.even.empty()) break;
                WordFactor f{FactorKind::EvenRoot, pick(pools.even, rng), zero_like(g), even_param(g, rng, false)};
                WordFactor inv = f;
                inv.even = -f.even;
                out.insert(at, {f, inv});
                break;
            }
            case 1: {
                WordFactor f{FactorKind::Torus, pick(pools.all, rng), zero_like(g), g.constant(1)};
                out.insert(at, f);
                break;
            }
            case 2: {
                // split a parameter: x(a, t) = x(a, t - 1) x(a, 1), h(a, t) = h(a, 2t) h(a, 1/2)
                if (out.empty()) break;
                std::size_t k = rng() % out.size();
                WordFactor f = out[k];
                if (f.kind == FactorKind::EvenRoot) {
                    WordFactor a = f, b = f;
                    a.even = f.even - g.constant(1);
                    b.even = g.constant(1);
                    out[k] = a;
                    out.insert(out.begin() + static_cast<long>(k) + 1, b);
                } else if (f.kind == FactorKind::Torus) {
                    WordFactor a = f, b = f;
                    a.even = f.even * g.scalar(2);
                    b.even = SuperScalar(g.generators(), g.scalar(2).inv());
                    out[k] = a;
                    out.insert(out.begin() + static_cast<long>(k) + 1, b);
                } else if (f.kind == FactorKind::OddRoot) {
                    // x(b, th) = x(b, th - th') x(b, th') for isotropic b
                    WordFactor a = f, b = f;
                    SuperScalar other = g.theta(1 + static_cast<unsigned>(rng() % g.generators()));
                    a.odd = f.odd - other;
                    b.odd = other;
                    out[k] = a;
                    out.insert(out.begin() + static_cast<long>(k) + 1, b);
                }
                break;
            }
            case 3: {
                if (pools.iso.empty()) break;
                WordFactor f{FactorKind::OddRoot, pick(pools.iso, rng),
                             g.theta(1 + static_cast<unsigned>(rng() % g.generators())), zero_like(g)};
                WordFactor inv = f;
                inv.odd = -f.odd;
                out.insert(at, {f, inv});
                break;
            }
            case 4: {
                if (pools.gamma.empty()) break;
                WordFactor f{FactorKind::GammaRoot, pick(pools.gamma, rng),
                             g.theta(1 + static_cast<unsigned>(rng() % g.generators())),
                             even_param(g, rng, false)};
                auto inv = inverse_word(g, {f});
                out.insert(at, {f, inv[0]});
                break;
            }
            default: {
                // f f^-1 for a factor of the word itself
                if (out.empty()) break;
                WordFactor f = out[rng() % out.size()];
                auto inv = inverse_word(g, {f});
                out.insert(out.begin() + static_cast<long>(pos), {f, inv[0]});
                break;
            }
        }
    }
    if (out.size() == w.size()) {
        out.push_back({FactorKind::Torus, pick(pools.all, rng), zero_like(g), g.constant(1)});
    }
    return out;
}

}  // namespace chevsuper
