#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace dgcm {

// Exponent vector. Internal (weighted) degree comes from the ring's weights.
struct Monomial {
    std::vector<int> e;

    explicit Monomial(size_t nvars = 0) : e(nvars, 0) {}
    explicit Monomial(std::vector<int> exps) : e(std::move(exps)) {}

    size_t nvars() const { return e.size(); }
    bool is_one() const { return std::all_of(e.begin(), e.end(), [](int x) { return x == 0; }); }
    int total() const { return std::accumulate(e.begin(), e.end(), 0); }

    long wdeg(const std::vector<int>& w) const {
        long d = 0;
        for (size_t i = 0; i < e.size(); ++i) d += static_cast<long>(e[i]) * w[i];
        return d;
    }

    Monomial operator*(const Monomial& o) const {
        Monomial r(*this);
        for (size_t i = 0; i < e.size(); ++i) r.e[i] += o.e[i];
        return r;
    }
    bool divides(const Monomial& o) const {
        for (size_t i = 0; i < e.size(); ++i)
            if (e[i] > o.e[i]) return false;
        return true;
    }
    Monomial quotient(const Monomial& o) const { // *this / o, assumes o | *this
        Monomial r(*this);
        for (size_t i = 0; i < e.size(); ++i) {
            r.e[i] -= o.e[i];
            if (r.e[i] < 0) throw std::logic_error("monomial quotient underflow");
        }
        return r;
    }
    static Monomial lcm(const Monomial& a, const Monomial& b) {
        Monomial r(a);
        for (size_t i = 0; i < r.e.size(); ++i) r.e[i] = std::max(a.e[i], b.e[i]);
        return r;
    }
    static bool coprime(const Monomial& a, const Monomial& b) {
        for (size_t i = 0; i < a.e.size(); ++i)
            if (a.e[i] > 0 && b.e[i] > 0) return false;
        return true;
    }

    bool operator==(const Monomial& o) const { return e == o.e; }
    bool operator!=(const Monomial& o) const { return e != o.e; }
};

enum class OrderKind { GrevLex, GrLex, Lex };

inline OrderKind order_from_name(const std::string& s) {
    if (s == "grevlex") return OrderKind::GrevLex;
    if (s == "grlex") return OrderKind::GrLex;
    if (s == "lex") return OrderKind::Lex;
    throw std::invalid_argument("unknown monomial order: " + s);
}
inline std::string order_name(OrderKind k) {
    switch (k) {
        case OrderKind::GrevLex: return "grevlex";
        case OrderKind::GrLex: return "grlex";
        default: return "lex";
    }
}

// Monomial order with the ring's weights baked in. Returns <0, 0, >0 as a > b fails/ties/holds;
// convention: cmp(a,b) > 0 means a > b.
struct MonomialOrder {
    OrderKind kind = OrderKind::GrevLex;
    std::vector<int> weights;

    int cmp(const Monomial& a, const Monomial& b) const {
        if (kind != OrderKind::Lex) {
            long da = a.wdeg(weights), db = b.wdeg(weights);
            if (da != db) return da > db ? 1 : -1;
        }
        if (kind == OrderKind::GrevLex) {
            for (size_t i = a.e.size(); i-- > 0;) {
                int d = a.e[i] - b.e[i];
                if (d != 0) return d < 0 ? 1 : -1;
            }
            return 0;
        }
        for (size_t i = 0; i < a.e.size(); ++i) {
            int d = a.e[i] - b.e[i];
            if (d != 0) return d > 0 ? 1 : -1;
        }
        return 0;
    }
    bool less(const Monomial& a, const Monomial& b) const { return cmp(a, b) < 0; }
};

} // namespace dgcm
