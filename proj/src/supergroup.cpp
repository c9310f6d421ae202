#include "chevsuper/supergroup.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "chevsuper/errors.hpp"
#include "chevsuper/linalg.hpp"

namespace chevsuper {

namespace {

GrassmannMatrix lift(const SuperMatrix& x, unsigned generators) {
    return x.entries().map([&](const Scalar& s) { return SuperScalar(generators, s); });
}

GrassmannMatrix gm_mul(const GrassmannMatrix& a, const GrassmannMatrix& b, unsigned generators) {
    return multiply(a, b, SuperScalar::zero(generators));
}

SuperMatrix body_of(BlockShape sh, const GrassmannMatrix& m) {
    return SuperMatrix(sh, m.map([](const SuperScalar& s) { return s.body(); }));
}

SuperMatrix field_matrix(const SuperMatrix& x, Field f) {
    if (f.is_rational()) return x;
    return SuperMatrix(x.shape(), x.entries().map([&](const Scalar& s) {
        return s.field() == f ? s : Scalar::in(f, s.rational());
    }));
}

std::vector<long> integer_diagonal(const SuperMatrix& h) {
    if (!h.is_diagonal()) throw NotRational("Cartan element is not diagonal");
    std::vector<long> d;
    for (const auto& s : h.diagonal_entries()) d.push_back(s.to_long());
    return d;
}

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

}  // namespace

GrassmannMatrix koszul_scale(const SuperScalar& c, const SuperMatrix& x, unsigned generators) {
    auto par = c.parity();
    if (!par) throw NotHomogeneous("scalar is not homogeneous");
    GrassmannMatrix out(x.size(), x.size(), SuperScalar::zero(generators));
    for (std::size_t i = 0; i < x.size(); ++i) {
        bool flip = *par == Parity::Odd && x.shape().index_parity(i) == Parity::Odd;
        for (std::size_t j = 0; j < x.size(); ++j) {
            if (x(i, j).is_zero()) continue;
            out(i, j) = c * (flip ? -x(i, j) : x(i, j));
        }
    }
    return out;
}

// ---------------------------------------------------------------- GroupElement

GroupElement::GroupElement(BlockShape shape, GrassmannMatrix m) {
    if (m.rows() != shape.size() || m.cols() != shape.size()) {
        throw ShapeMismatch("matrix does not match block shape");
    }
    for (std::size_t i = 0; i < shape.size(); ++i) {
        for (std::size_t j = 0; j < shape.size(); ++j) {
            const auto& v = m(i, j);
            if (v.is_zero()) continue;
            auto want = shape.index_parity(i) + shape.index_parity(j);
            if (v.parity() != want) {
                throw ParityError("entry (" + std::to_string(i) + "," + std::to_string(j) +
                                  ") has the wrong parity");
            }
        }
    }
    SuperMatrix body = body_of(shape, m);
    if (rank(body.entries()) != shape.size()) throw NotInvertible("body is singular");
    *this = GroupElement(shape, std::move(m), std::move(body));
}

GroupElement GroupElement::identity(BlockShape shape, unsigned generators) {
    auto m = GrassmannMatrix::identity(shape.size(), SuperScalar::zero(generators),
                                       SuperScalar::one(generators));
    return GroupElement(shape, std::move(m), SuperMatrix::identity(shape));
}

bool GroupElement::is_identity() const {
    for (std::size_t i = 0; i < size(); ++i) {
        for (std::size_t j = 0; j < size(); ++j) {
            if (i == j ? !m_(i, j).is_one() : !m_(i, j).is_zero()) return false;
        }
    }
    return true;
}

bool GroupElement::is_block_diagonal() const {
    for (std::size_t i = 0; i < size(); ++i) {
        for (std::size_t j = 0; j < size(); ++j) {
            if (shape_.index_parity(i) != shape_.index_parity(j) && !m_(i, j).is_zero()) return false;
        }
    }
    return true;
}

GroupElement operator*(const GroupElement& a, const GroupElement& b) {
    if (!(a.shape_ == b.shape_)) throw ShapeMismatch("group elements of different shapes");
    if (a.generators_ != b.generators_) throw GeneratorMismatch("generator counts differ");
    auto m = gm_mul(a.m_, b.m_, a.generators_);
    auto body = a.body_ * b.body_;
    return GroupElement(a.shape_, std::move(m), std::move(body));
}

GroupElement GroupElement::inv() const {
    const unsigned n = generators_;
    auto binv = SuperMatrix(shape_, inverse(body_.entries()));
    auto k = lift(binv, n);
    // g = B (1 + T) with T nilpotent, so g^-1 = sum (-T)^j B^-1.
    auto t = gm_mul(k, m_ - lift(body_, n), n);
    auto neg_t = -t;
    auto term = GrassmannMatrix::identity(size(), SuperScalar::zero(n), SuperScalar::one(n));
    GrassmannMatrix sum = term;
    for (unsigned j = 0; j <= n; ++j) {
        term = gm_mul(term, neg_t, n);
        if (is_zero_matrix(term)) break;
        sum += term;
    }
    return GroupElement(shape_, gm_mul(sum, k, n), std::move(binv));
}

std::string GroupElement::to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < size(); ++i) {
        os << "[";
        for (std::size_t j = 0; j < size(); ++j) os << (j ? ", " : "") << m_(i, j).to_string();
        os << "]\n";
    }
    return os.str();
}

nlohmann::json GroupElement::to_json() const {
    auto rows = nlohmann::json::array();
    for (std::size_t i = 0; i < size(); ++i) {
        auto row = nlohmann::json::array();
        for (std::size_t j = 0; j < size(); ++j) row.push_back(m_(i, j).to_string());
        rows.push_back(row);
    }
    return rows;
}

GroupElement g_mul(const GroupElement& a, const GroupElement& b) { return a * b; }
GroupElement g_inv(const GroupElement& a) { return a.inv(); }
GroupElement commutator(const GroupElement& a, const GroupElement& b) {
    return a * b * a.inv() * b.inv();
}

// ---------------------------------------------------------------- Supergroup

Supergroup::Supergroup(std::shared_ptr<const ChevalleyBasis> cb, unsigned generators, Field field)
    : cb_(std::move(cb)), generators_(generators), field_(field) {
    const auto& rs = cb_->roots();
    const unsigned dim = static_cast<unsigned>(shape().size());
    for (const auto& r : rs.roots()) {
        const auto& x = cb_->x(r.coords);
        x_.push_back(field_matrix(x, field_));
        auto h = cb_->coroot(r.coords);
        h_diag_.push_back(integer_diagonal(h));
        h_.push_back(field_matrix(h, field_));
        std::vector<SuperMatrix> powers;
        if (r.parity == Parity::Even) {
            for (unsigned k = 0; k <= dim; ++k) powers.push_back(field_matrix(divided_power(x, k), field_));
        } else if (!rs.is_isotropic(r.coords)) {
            auto sq = x * x;
            for (unsigned k = 0; k <= dim; ++k) powers.push_back(field_matrix(divided_power(sq, k), field_));
        }
        for (const auto& p : powers) {
            if (!p.is_integral()) throw IntegralityViolation("divided power of " + rs.name(r.coords));
        }
        powers_.push_back(std::move(powers));
    }
    for (const auto& h : cb_->cartan()) cartan_diag_.push_back(integer_diagonal(h));
}

std::size_t Supergroup::index(const Weight& alpha) const {
    auto i = roots().find(alpha);
    if (!i) throw NotARoot(roots().name(alpha) + " is not a root");
    return *i;
}

const SuperMatrix& Supergroup::x(const Weight& alpha) const { return x_[index(alpha)]; }
const SuperMatrix& Supergroup::coroot(const Weight& alpha) const { return h_[index(alpha)]; }

SuperMatrix Supergroup::cartan_element(const std::vector<long>& coeffs) const {
    if (coeffs.size() != cartan_diag_.size()) throw ShapeMismatch("one coefficient per Cartan basis element");
    SuperMatrix out(shape());
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        out += scalar(coeffs[k]) * field_matrix(cb_->cartan()[k], field_);
    }
    return out;
}

void Supergroup::check_generators(const SuperScalar& s) const {
    if (s.generators() != generators_) {
        throw GeneratorMismatch("parameter has " + std::to_string(s.generators()) +
                                " generators, the group uses " + std::to_string(generators_));
    }
}

SuperScalar Supergroup::to_field(const SuperScalar& s) const {
    SuperScalar out(generators_);
    for (const auto& [m, c] : s.terms()) {
        Scalar v = (field_.is_rational() || c.field() == field_) ? c : Scalar::in(field_, c.rational());
        out += SuperScalar::monomial(generators_, monomial_indices(m), v);
    }
    return out;
}

SuperScalar Supergroup::parse(const std::string& text) const {
    return to_field(SuperScalar::parse(text, generators_));
}

GroupElement Supergroup::exp_powers(const std::vector<SuperMatrix>& powers, const SuperScalar& t) const {
    GrassmannMatrix m = lift(powers[0], generators_);
    SuperScalar tk = SuperScalar::one(generators_);
    for (std::size_t k = 1; k < powers.size(); ++k) {
        tk = tk * t;
        if (tk.is_zero()) break;
        if (powers[k].is_zero()) break;
        m += koszul_scale(tk, powers[k], generators_);
    }
    return GroupElement(shape(), std::move(m));
}

GroupElement Supergroup::x_even(const Weight& alpha, const SuperScalar& t) const {
    check_generators(t);
    std::size_t i = index(alpha);
    if (roots().roots()[i].parity != Parity::Even) {
        throw ParityError(roots().name(alpha) + " is an odd root");
    }
    if (!t.is_even()) throw ParityError("even root needs an even parameter");
    return exp_powers(powers_[i], t);
}

GroupElement Supergroup::odd_factor(const Weight& gamma, const SuperScalar& theta) const {
    check_generators(theta);
    std::size_t i = index(gamma);
    if (roots().roots()[i].parity != Parity::Odd) throw ParityError(roots().name(gamma) + " is an even root");
    if (!theta.is_odd()) throw ParityError("odd root needs an odd parameter");
    auto m = GrassmannMatrix::identity(shape().size(), SuperScalar::zero(generators_),
                                       SuperScalar::one(generators_));
    m += koszul_scale(theta, x_[i], generators_);
    return GroupElement(shape(), std::move(m));
}

GroupElement Supergroup::x_odd(const Weight& beta, const SuperScalar& theta) const {
    if (roots().root(beta).parity == Parity::Odd && !roots().is_isotropic(beta)) {
        throw WrongConstructor(roots().name(beta) + " is not isotropic; use x_gamma");
    }
    return odd_factor(beta, theta);
}

GroupElement Supergroup::x_gamma(const Weight& gamma, const SuperScalar& theta, const SuperScalar& t) const {
    check_generators(t);
    std::size_t i = index(gamma);
    if (roots().roots()[i].parity != Parity::Odd || roots().is_isotropic(gamma)) {
        throw WrongConstructor(roots().name(gamma) + " is not an odd non-isotropic root");
    }
    if (!t.is_even()) throw ParityError("x_gamma needs an even second parameter");
    return odd_factor(gamma, theta) * exp_powers(powers_[i], t);
}

GroupElement Supergroup::torus(const std::vector<long>& exponents, const SuperScalar& t) const {
    check_generators(t);
    if (!t.is_even()) throw ParityError("torus parameter must be even");
    if (t.body().is_zero()) throw NotInvertible("torus parameter has zero body");
    auto m = GrassmannMatrix(shape().size(), shape().size(), SuperScalar::zero(generators_));
    for (std::size_t k = 0; k < exponents.size(); ++k) m(k, k) = ss_pow_int(t, exponents[k]);
    return GroupElement(shape(), std::move(m));
}

GroupElement Supergroup::h_alpha(const Weight& alpha, const SuperScalar& t) const {
    return torus(h_diag_[index(alpha)], t);
}

GroupElement Supergroup::h_H(const std::vector<long>& coeffs, const SuperScalar& t) const {
    if (coeffs.size() != cartan_diag_.size()) throw ShapeMismatch("one coefficient per Cartan basis element");
    std::vector<long> e(shape().size(), 0);
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        for (std::size_t i = 0; i < e.size(); ++i) e[i] += coeffs[k] * cartan_diag_[k][i];
    }
    return torus(e, t);
}

// ---------------------------------------------------------------- words

GroupElement eval_factor(const Supergroup& g, const WordFactor& f) {
    switch (f.kind) {
        case FactorKind::EvenRoot: return g.x_even(f.root, f.even);
        case FactorKind::OddRoot: return g.x_odd(f.root, f.odd);
        case FactorKind::GammaRoot: return g.x_gamma(f.root, f.odd, f.even);
        case FactorKind::Torus: return g.h_alpha(f.root, f.even);
    }
    throw ParseError("unknown factor kind");
}

GroupElement eval_word(const Supergroup& g, const GeneratorWord& w) {
    GroupElement out = g.identity();
    for (const auto& f : w) out = out * eval_factor(g, f);
    return out;
}

GeneratorWord inverse_word(const Supergroup& g, const GeneratorWord& w) {
    GeneratorWord out;
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
        WordFactor f = *it;
        switch (f.kind) {
            case FactorKind::EvenRoot: f.even = -f.even; break;
            case FactorKind::OddRoot: f.odd = -f.odd; break;
            // (th, t)(-th, -t) = (0, -th(-th)) = identity
            case FactorKind::GammaRoot:
                f.odd = -f.odd;
                f.even = -f.even;
                break;
            case FactorKind::Torus: f.even = ss_inv(f.even); break;
        }
        (void)g;
        out.push_back(std::move(f));
    }
    return out;
}

unsigned word_generator_count(const std::string& text) {
    unsigned best = 0;
    for (std::size_t i = 0; i + 2 < text.size(); ++i) {
        if (text.compare(i, 2, "th") != 0 || !std::isdigit(static_cast<unsigned char>(text[i + 2]))) continue;
        std::size_t j = i + 2;
        unsigned v = 0;
        while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) {
            v = v * 10 + static_cast<unsigned>(text[j] - '0');
            if (v > 64) throw ParseError("generator index too large");
            ++j;
        }
        best = std::max(best, v);
    }
    return best;
}

GeneratorWord parse_word(const Supergroup& g, const std::string& text) {
    GeneratorWord w;
    std::istringstream is(text);
    std::string token;
    while (is >> token) {
        std::vector<std::string> parts;
        std::size_t start = 0;
        for (std::size_t i = 0; i <= token.size(); ++i) {
            if (i == token.size() || token[i] == ':') {
                parts.push_back(trim(token.substr(start, i - start)));
                start = i + 1;
            }
        }
        if (parts.size() < 3) throw ParseError("bad factor '" + token + "'");
        WordFactor f;
        f.root = g.roots().parse(parts[1]);
        const auto& root = g.roots().root(f.root);
        f.odd = SuperScalar::zero(g.generators());
        f.even = SuperScalar::zero(g.generators());
        const std::string& kind = parts[0];
        if (kind == "xe" && parts.size() == 3) {
            f.kind = FactorKind::EvenRoot;
            f.even = g.parse(parts[2]);
        } else if (kind == "xo" && parts.size() == 3) {
            f.kind = FactorKind::OddRoot;
            f.odd = g.parse(parts[2]);
        } else if (kind == "xg" && parts.size() == 4) {
            f.kind = FactorKind::GammaRoot;
            f.odd = g.parse(parts[2]);
            f.even = g.parse(parts[3]);
        } else if (kind == "h" && parts.size() == 3) {
            f.kind = FactorKind::Torus;
            f.even = g.parse(parts[2]);
        } else {
            throw ParseError("bad factor '" + token + "'");
        }
        (void)root;
        eval_factor(g, f);
        w.push_back(std::move(f));
    }
    return w;
}

std::string word_to_string(const Supergroup& g, const GeneratorWord& w) {
    auto expr = [](const SuperScalar& s) {
        std::string t = s.to_string();
        t.erase(std::remove(t.begin(), t.end(), ' '), t.end());
        return t;
    };
    std::string out;
    for (const auto& f : w) {
        if (!out.empty()) out += ' ';
        std::string root = g.roots().name(f.root);
        switch (f.kind) {
            case FactorKind::EvenRoot: out += "xe:" + root + ":" + expr(f.even); break;
            case FactorKind::OddRoot: out += "xo:" + root + ":" + expr(f.odd); break;
            case FactorKind::GammaRoot: out += "xg:" + root + ":" + expr(f.odd) + ":" + expr(f.even); break;
            case FactorKind::Torus: out += "h:" + root + ":" + expr(f.even); break;
        }
    }
    return out;
}

unsigned word_generators(const RootSystem& rs) {
    unsigned odd = 0;
    for (const auto& r : rs.roots()) odd += r.parity == Parity::Odd ? 1 : 0;
    return std::max(2 * odd, 12u);
}

}  // namespace chevsuper
