#pragma once

#include "monomial.hpp"
#include "scalar.hpp"

#include <cctype>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace dgcm {

// Sparse multivariate polynomial. Terms are kept sorted strictly descending
// under the order the polynomial was last normalized with; no zero
// coefficients are stored.
class Polynomial {
public:
    struct Term {
        Monomial m;
        Scalar c;
    };

    Polynomial() = default;
    Polynomial(size_t nvars, uint32_t p) : nvars_(nvars), p_(p) {}

    static Polynomial zero(size_t nvars, uint32_t p) { return Polynomial(nvars, p); }
    static Polynomial constant(const Scalar& c, size_t nvars) {
        Polynomial f(nvars, c.characteristic());
        if (!c.is_zero()) f.terms_.push_back({Monomial(nvars), c});
        return f;
    }
    static Polynomial monomial(Monomial m, const Scalar& c) {
        Polynomial f(m.nvars(), c.characteristic());
        if (!c.is_zero()) f.terms_.push_back({std::move(m), c});
        return f;
    }
    static Polynomial variable(size_t i, size_t nvars, uint32_t p) {
        Monomial m(nvars);
        m.e[i] = 1;
        return monomial(m, Scalar::one(p));
    }

    size_t nvars() const { return nvars_; }
    uint32_t characteristic() const { return p_; }
    bool is_zero() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }
    const std::vector<Term>& terms() const { return terms_; }

    const Term& leading(const MonomialOrder&) const {
        if (terms_.empty()) throw std::logic_error("leading term of zero");
        return terms_.front();
    }

    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_[0].m.is_one());
    }
    Scalar constant_value() const {
        if (terms_.empty()) return Scalar::zero(p_);
        if (!terms_[0].m.is_one() || terms_.size() != 1) throw std::logic_error("not a constant");
        return terms_[0].c;
    }
    // coefficient of the constant monomial (the "unit part" mod m)
    Scalar unit_part() const {
        for (const auto& t : terms_)
            if (t.m.is_one()) return t.c;
        return Scalar::zero(p_);
    }

    // weighted degree when homogeneous; nullopt for 0 or inhomogeneous input
    std::optional<long> homogeneous_degree(const std::vector<int>& w) const {
        if (terms_.empty()) return std::nullopt;
        long d = terms_[0].m.wdeg(w);
        for (const auto& t : terms_)
            if (t.m.wdeg(w) != d) return std::nullopt;
        return d;
    }
    bool is_homogeneous(const std::vector<int>& w) const {
        return terms_.empty() || homogeneous_degree(w).has_value();
    }

    void normalize(const MonomialOrder& ord) {
        std::stable_sort(terms_.begin(), terms_.end(),
                         [&](const Term& a, const Term& b) { return ord.cmp(a.m, b.m) > 0; });
        std::vector<Term> out;
        out.reserve(terms_.size());
        for (auto& t : terms_) {
            if (!out.empty() && out.back().m == t.m)
                out.back().c += t.c;
            else
                out.push_back(std::move(t));
        }
        out.erase(std::remove_if(out.begin(), out.end(),
                                 [](const Term& t) { return t.c.is_zero(); }),
                  out.end());
        terms_ = std::move(out);
    }

    Polynomial plus(const Polynomial& o, const MonomialOrder& ord) const {
        Polynomial r(nvars_, p_);
        r.terms_.reserve(terms_.size() + o.terms_.size());
        size_t i = 0, j = 0;
        while (i < terms_.size() && j < o.terms_.size()) {
            int c = ord.cmp(terms_[i].m, o.terms_[j].m);
            if (c > 0) r.terms_.push_back(terms_[i++]);
            else if (c < 0) r.terms_.push_back(o.terms_[j++]);
            else {
                Scalar s = terms_[i].c + o.terms_[j].c;
                if (!s.is_zero()) r.terms_.push_back({terms_[i].m, s});
                ++i; ++j;
            }
        }
        for (; i < terms_.size(); ++i) r.terms_.push_back(terms_[i]);
        for (; j < o.terms_.size(); ++j) r.terms_.push_back(o.terms_[j]);
        return r;
    }
    Polynomial minus(const Polynomial& o, const MonomialOrder& ord) const {
        return plus(o.scaled(Scalar(-1, p_)), ord);
    }
    Polynomial scaled(const Scalar& c) const {
        Polynomial r(nvars_, p_);
        if (c.is_zero()) return r;
        r.terms_.reserve(terms_.size());
        for (const auto& t : terms_) r.terms_.push_back({t.m, t.c * c});
        return r;
    }
    Polynomial term_multiplied(const Monomial& m, const Scalar& c) const {
        Polynomial r(nvars_, p_);
        if (c.is_zero()) return r;
        r.terms_.reserve(terms_.size());
        for (const auto& t : terms_) r.terms_.push_back({t.m * m, t.c * c});
        return r;
    }
    Polynomial times(const Polynomial& o, const MonomialOrder& ord) const {
        Polynomial r(nvars_, p_);
        for (const auto& t : o.terms_) {
            Polynomial part = term_multiplied(t.m, t.c);
            r = r.plus(part, ord);
        }
        return r;
    }

    bool equals(const Polynomial& o) const {
        if (terms_.size() != o.terms_.size()) return false;
        for (size_t i = 0; i < terms_.size(); ++i)
            if (terms_[i].m != o.terms_[i].m || terms_[i].c != o.terms_[i].c) return false;
        return true;
    }

    // canonical text: terms in stored (descending) order, explicit ^ and *
    std::string str(const std::vector<std::string>& names) const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& t : terms_) {
            Scalar c = t.c;
            bool neg = false;
            if (p_ == 0 && c.value() < 0) { neg = true; c = -c; }
            if (first) { if (neg) os << "-"; first = false; }
            else os << (neg ? " - " : " + ");
            std::string mono = mono_str(t.m, names);
            if (mono.empty()) os << c.str();
            else if (c.is_one()) os << mono;
            else os << c.str() << "*" << mono;
        }
        return os.str();
    }

private:
    static std::string mono_str(const Monomial& m, const std::vector<std::string>& names) {
        std::string s;
        for (size_t i = 0; i < m.e.size(); ++i) {
            if (m.e[i] == 0) continue;
            if (!s.empty()) s += "*";
            s += names[i];
            if (m.e[i] != 1) s += "^" + std::to_string(m.e[i]);
        }
        return s;
    }

    size_t nvars_ = 0;
    uint32_t p_ = 0;
    std::vector<Term> terms_;
};

// Parses sums of terms like "3/2*x^2*y - y^3 + 1". Used by the session DSL
// and fixtures; errors carry a character offset for the caller to map.
class PolynomialParser {
public:
    PolynomialParser(const std::string& text, const std::vector<std::string>& names,
                     uint32_t p, const MonomialOrder& ord)
        : s_(text), names_(names), p_(p), ord_(ord) {}

    Polynomial parse() {
        Polynomial acc(names_.size(), p_);
        skip_ws();
        bool neg = consume_sign();
        acc = acc.plus(term(neg), ord_);
        skip_ws();
        while (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) {
            bool n = s_[pos_] == '-';
            ++pos_;
            acc = acc.plus(term(n), ord_);
            skip_ws();
        }
        if (pos_ != s_.size()) fail("trailing characters in polynomial");
        acc.normalize(ord_);
        return acc;
    }

private:
    [[noreturn]] void fail(const std::string& msg) {
        throw std::invalid_argument(msg + " at offset " + std::to_string(pos_) + " in '" + s_ + "'");
    }
    void skip_ws() { while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_; }
    bool consume_sign() {
        skip_ws();
        if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) {
            bool neg = s_[pos_] == '-';
            ++pos_;
            return neg;
        }
        return false;
    }
    Polynomial term(bool neg) {
        skip_ws();
        Scalar coeff = Scalar::one(p_);
        Monomial mono(names_.size());
        bool any = false;
        bool expect_factor = true;
        while (expect_factor) {
            skip_ws();
            if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                coeff = coeff * number();
                any = true;
            } else if (pos_ < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
                size_t vi = var_index(identifier());
                int ex = 1;
                skip_ws();
                if (pos_ < s_.size() && s_[pos_] == '^') {
                    ++pos_;
                    skip_ws();
                    ex = int_number();
                }
                mono.e[vi] += ex;
                any = true;
            } else {
                fail("expected a coefficient or variable");
            }
            skip_ws();
            if (pos_ < s_.size() && s_[pos_] == '*') { ++pos_; continue; }
            expect_factor = false;
        }
        if (!any) fail("empty term");
        if (neg) coeff = -coeff;
        return Polynomial::monomial(mono, coeff);
    }
    Scalar number() {
        size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        std::string num = s_.substr(start, pos_ - start);
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == '/') {
            size_t save = pos_;
            ++pos_;
            skip_ws();
            if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                size_t dstart = pos_;
                while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
                return Scalar::from_string(num + "/" + s_.substr(dstart, pos_ - dstart), p_);
            }
            pos_ = save;
        }
        return Scalar::from_string(num, p_);
    }
    int int_number() {
        size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected an integer");
        return std::stoi(s_.substr(start, pos_ - start));
    }
    std::string identifier() {
        size_t start = pos_;
        while (pos_ < s_.size() &&
               (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
            ++pos_;
        return s_.substr(start, pos_ - start);
    }
    size_t var_index(const std::string& name) {
        for (size_t i = 0; i < names_.size(); ++i)
            if (names_[i] == name) return i;
        fail("unknown variable '" + name + "'");
    }

    const std::string& s_;
    const std::vector<std::string>& names_;
    uint32_t p_;
    const MonomialOrder& ord_;
    size_t pos_ = 0;
};

inline Polynomial parse_polynomial(const std::string& text, const std::vector<std::string>& names,
                                   uint32_t p, const MonomialOrder& ord) {
    return PolynomialParser(text, names, p, ord).parse();
}

} // namespace dgcm
