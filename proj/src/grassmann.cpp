#include "chevsuper/grassmann.hpp"

#include <algorithm>
#include <bit>
#include <cctype>

#include "chevsuper/errors.hpp"

namespace chevsuper {

int koszul_sign(Monomial a, Monomial b) {
    // Each generator of b must move left past every generator of a with a
    // larger index.
    unsigned swaps = 0;
    while (b != 0) {
        unsigned j = static_cast<unsigned>(std::countr_zero(b));
        b &= b - 1;
        Monomial above = (j + 1 >= 64) ? 0 : (a & ~((Monomial{2} << j) - 1));
        swaps += static_cast<unsigned>(std::popcount(above));
    }
    return (swaps & 1U) ? -1 : 1;
}

std::vector<unsigned> monomial_indices(Monomial m) {
    std::vector<unsigned> out;
    while (m != 0) {
        out.push_back(static_cast<unsigned>(std::countr_zero(m)) + 1);
        m &= m - 1;
    }
    return out;
}

SuperScalar::SuperScalar(unsigned generators) : generators_(generators) {
    if (generators > kMaxGenerators) {
        throw GeneratorMismatch("at most 64 Grassmann generators are supported");
    }
}

SuperScalar::SuperScalar(unsigned generators, const Scalar& constant)
    : SuperScalar(generators) {
    if (!constant.is_zero()) terms_.emplace_back(Monomial{0}, constant);
}

SuperScalar SuperScalar::generator(unsigned generators, unsigned index, const Scalar& c) {
    return monomial(generators, {index}, c);
}

SuperScalar SuperScalar::monomial(unsigned generators, const std::vector<unsigned>& indices,
                                  const Scalar& c) {
    SuperScalar r(generators);
    Monomial m = 0;
    int sign = 1;
    for (unsigned idx : indices) {
        if (idx == 0 || idx > generators) {
            throw GeneratorMismatch("generator index " + std::to_string(idx) +
                                    " outside 1.." + std::to_string(generators));
        }
        Monomial bit = Monomial{1} << (idx - 1);
        if (m & bit) return r;
        sign *= koszul_sign(m, bit);
        m |= bit;
    }
    if (!c.is_zero()) r.terms_.emplace_back(m, sign > 0 ? c : -c);
    return r;
}

void SuperScalar::check_same(const SuperScalar& o) const {
    if (generators_ != o.generators_) {
        throw GeneratorMismatch("generator counts differ: " + std::to_string(generators_) +
                                " vs " + std::to_string(o.generators_));
    }
}

void SuperScalar::normalize() {
    std::sort(terms_.begin(), terms_.end(),
              [](const Term& x, const Term& y) { return x.first < y.first; });
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
        if (!out.empty() && out.back().first == t.first) {
            out.back().second += t.second;
        } else {
            out.push_back(std::move(t));
        }
    }
    out.erase(std::remove_if(out.begin(), out.end(),
                             [](const Term& t) { return t.second.is_zero(); }),
              out.end());
    terms_ = std::move(out);
}

bool SuperScalar::is_one() const {
    return terms_.size() == 1 && terms_[0].first == 0 && terms_[0].second.is_one();
}

Scalar SuperScalar::body() const { return coefficient(0); }

Scalar SuperScalar::coefficient(Monomial m) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const Term& t, Monomial k) { return t.first < k; });
    if (it != terms_.end() && it->first == m) return it->second;
    return Scalar(0);
}

std::optional<Parity> SuperScalar::parity() const {
    if (terms_.empty()) return Parity::Even;
    int p = std::popcount(terms_.front().first) & 1;
    for (const auto& t : terms_) {
        if ((std::popcount(t.first) & 1) != p) return std::nullopt;
    }
    return p ? Parity::Odd : Parity::Even;
}

bool SuperScalar::is_odd() const {
    if (terms_.empty()) return true;
    return parity() == Parity::Odd;
}

unsigned SuperScalar::min_degree() const {
    if (terms_.empty()) return 0;
    int d = 64;
    for (const auto& t : terms_) d = std::min(d, std::popcount(t.first));
    return static_cast<unsigned>(d);
}

SuperScalar SuperScalar::degree_part(unsigned degree) const {
    SuperScalar r(generators_);
    for (const auto& t : terms_) {
        if (static_cast<unsigned>(std::popcount(t.first)) == degree) r.terms_.push_back(t);
    }
    return r;
}

SuperScalar SuperScalar::with_generators(unsigned generators) const {
    SuperScalar r(generators);
    for (const auto& t : terms_) {
        if (generators < 64 && (t.first >> generators) != 0) {
            throw GeneratorMismatch("element uses generators beyond the new count");
        }
        r.terms_.push_back(t);
    }
    return r;
}

SuperScalar SuperScalar::operator-() const {
    SuperScalar r = *this;
    for (auto& t : r.terms_) t.second = -t.second;
    return r;
}

SuperScalar& SuperScalar::operator+=(const SuperScalar& o) {
    check_same(o);
    if (o.terms_.empty()) return *this;
    std::vector<Term> out;
    out.reserve(terms_.size() + o.terms_.size());
    auto a = terms_.begin();
    auto b = o.terms_.begin();
    while (a != terms_.end() || b != o.terms_.end()) {
        if (b == o.terms_.end() || (a != terms_.end() && a->first < b->first)) {
            out.push_back(std::move(*a++));
        } else if (a == terms_.end() || b->first < a->first) {
            out.push_back(*b++);
        } else {
            Scalar s = a->second + b->second;
            if (!s.is_zero()) out.emplace_back(a->first, std::move(s));
            ++a;
            ++b;
        }
    }
    terms_ = std::move(out);
    return *this;
}

SuperScalar& SuperScalar::operator-=(const SuperScalar& o) { return *this += -o; }

SuperScalar operator*(const SuperScalar& a, const SuperScalar& b) {
    a.check_same(b);
    SuperScalar r(a.generators_);
    if (a.terms_.empty() || b.terms_.empty()) return r;
    r.terms_.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& [ma, ca] : a.terms_) {
        for (const auto& [mb, cb] : b.terms_) {
            if (ma & mb) continue;
            Scalar c = ca * cb;
            if (koszul_sign(ma, mb) < 0) c = -c;
            r.terms_.emplace_back(ma | mb, std::move(c));
        }
    }
    r.normalize();
    return r;
}

SuperScalar& SuperScalar::operator*=(const SuperScalar& o) { return *this = *this * o; }

SuperScalar& SuperScalar::operator*=(const Scalar& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& t : terms_) t.second *= c;
    // Residue arithmetic can annihilate coefficients.
    terms_.erase(std::remove_if(terms_.begin(), terms_.end(),
                                [](const Term& t) { return t.second.is_zero(); }),
                 terms_.end());
    return *this;
}

bool operator==(const SuperScalar& a, const SuperScalar& b) {
    if (a.generators_ != b.generators_) return false;
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i) {
        if (a.terms_[i].first != b.terms_[i].first) return false;
        if (a.terms_[i].second != b.terms_[i].second) return false;
    }
    return true;
}

SuperScalar SuperScalar::inv() const {
    Scalar b = body();
    if (b.is_zero()) throw NotInvertible("element with zero body is not invertible");
    if (parity() != Parity::Even) {
        throw NotInvertible("only even elements are inverted");
    }
    // a = b (1 + n) with n nilpotent of even degree: a^-1 = b^-1 sum (-n)^j.
    Scalar binv = b.inv();
    SuperScalar n = *this * binv - one(generators_);
    SuperScalar term = one(generators_);
    SuperScalar sum = one(generators_);
    SuperScalar minus_n = -n;
    for (unsigned j = 1; j <= generators_ / 2 + 1; ++j) {
        term = term * minus_n;
        if (term.is_zero()) break;
        sum += term;
    }
    return sum * binv;
}

SuperScalar SuperScalar::pow(long exponent) const {
    SuperScalar base = exponent < 0 ? inv() : *this;
    unsigned long e = exponent < 0 ? static_cast<unsigned long>(-exponent)
                                   : static_cast<unsigned long>(exponent);
    SuperScalar r = one(generators_);
    while (e != 0) {
        if (e & 1UL) r = r * base;
        e >>= 1UL;
        if (e != 0) base = base * base;
    }
    return r;
}

std::optional<Scalar> SuperScalar::ratio_to(const SuperScalar& other) const {
    check_same(other);
    if (terms_.empty()) return Scalar(0);
    if (other.terms_.empty()) return std::nullopt;
    const auto& [m, c] = other.terms_.front();
    Scalar ratio = coefficient(m) / c;
    if (*this == other * ratio) return ratio;
    return std::nullopt;
}

namespace {

bool display_less(Monomial a, Monomial b) {
    int da = std::popcount(a);
    int db = std::popcount(b);
    if (da != db) return da < db;
    return monomial_indices(a) < monomial_indices(b);
}

std::string monomial_text(Monomial m) {
    std::string s;
    for (unsigned idx : monomial_indices(m)) {
        if (!s.empty()) s += "*";
        s += "th" + std::to_string(idx);
    }
    return s;
}

}  // namespace

std::string SuperScalar::to_string() const {
    if (terms_.empty()) return "0";
    std::vector<Term> sorted = terms_;
    std::sort(sorted.begin(), sorted.end(),
              [](const Term& x, const Term& y) { return display_less(x.first, y.first); });
    std::string out;
    bool first = true;
    for (const auto& [m, c] : sorted) {
        bool negative = c.modulus() == 0 && c.sign() < 0;
        Scalar mag = negative ? -c : c;
        if (first) {
            if (negative) out += "-";
        } else {
            out += negative ? " - " : " + ";
        }
        first = false;
        std::string coeff = mag.modulus() != 0 ? "(" + mag.to_string() + ")" : mag.to_string();
        if (m == 0) {
            out += coeff;
        } else if (mag.is_one()) {
            out += monomial_text(m);
        } else {
            out += coeff + "*" + monomial_text(m);
        }
    }
    return out;
}

nlohmann::json SuperScalar::to_json() const {
    std::vector<Term> sorted = terms_;
    std::sort(sorted.begin(), sorted.end(),
              [](const Term& x, const Term& y) { return display_less(x.first, y.first); });
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [m, c] : sorted) {
        arr.push_back({{"indices", monomial_indices(m)}, {"coeff", c.to_string()}});
    }
    return arr;
}

SuperScalar SuperScalar::from_json(const nlohmann::json& j, unsigned generators) {
    SuperScalar r(generators);
    for (const auto& t : j) {
        r += monomial(generators, t.at("indices").get<std::vector<unsigned>>(),
                      Scalar::parse(t.at("coeff").get<std::string>()));
    }
    return r;
}

SuperScalar SuperScalar::parse(const std::string& text, unsigned generators) {
    // term := [coeff] ('*' 'th' k)*   with coeff an integer, a/b, or "(r mod p)"
    std::size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    auto fail = [&](const std::string& why) -> ParseError {
        return ParseError("cannot parse '" + text + "': " + why);
    };
    SuperScalar result(generators);
    skip_ws();
    if (pos == text.size()) throw fail("empty expression");
    bool first = true;
    while (true) {
        skip_ws();
        if (pos == text.size()) break;
        int sign = 1;
        if (text[pos] == '+' || text[pos] == '-') {
            sign = text[pos] == '-' ? -1 : 1;
            ++pos;
            skip_ws();
        } else if (!first) {
            throw fail("expected '+' or '-'");
        }
        first = false;
        Scalar coeff(1);
        bool have_coeff = false;
        if (pos < text.size() && text[pos] == '(') {
            std::size_t close = text.find(')', pos);
            if (close == std::string::npos) throw fail("unbalanced parenthesis");
            coeff = Scalar::parse(text.substr(pos + 1, close - pos - 1));
            pos = close + 1;
            have_coeff = true;
        } else if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            std::size_t start = pos;
            while (pos < text.size() &&
                   (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '/')) {
                ++pos;
            }
            coeff = Scalar::parse(text.substr(start, pos - start));
            have_coeff = true;
        }
        std::vector<unsigned> idx;
        while (true) {
            skip_ws();
            if (have_coeff || !idx.empty()) {
                if (pos < text.size() && text[pos] == '*') {
                    ++pos;
                    skip_ws();
                } else {
                    break;
                }
            }
            if (text.compare(pos, 2, "th") != 0) {
                if (!have_coeff && idx.empty()) throw fail("expected coefficient or generator");
                throw fail("expected generator after '*'");
            }
            pos += 2;
            std::size_t start = pos;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
            if (start == pos) throw fail("generator index missing");
            idx.push_back(static_cast<unsigned>(std::stoul(text.substr(start, pos - start))));
            have_coeff = true;
        }
        result += monomial(generators, idx, sign > 0 ? coeff : -coeff);
    }
    return result;
}

SuperScalar ss_mul(const SuperScalar& a, const SuperScalar& b) { return a * b; }
Scalar ss_body(const SuperScalar& a) { return a.body(); }
SuperScalar ss_inv(const SuperScalar& a) { return a.inv(); }
SuperScalar ss_pow_int(const SuperScalar& a, long m) { return a.pow(m); }

}  // namespace chevsuper
