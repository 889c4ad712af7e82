#pragma once

#include "groebner.hpp"

#include <memory>

namespace dgcm {

// Graded base ring: k[x_1..x_n] with positive weights, over Q or F_p, with an
// optional homogeneous defining ideal whose quotient must be Artinian
// (finite-dimensional, checked on the leading-term ideal at construction).
// The graded-local structure lives at the irrelevant ideal m = (x_1..x_n).
class BaseRing {
public:
    static BaseRing make(uint32_t p, std::vector<std::string> names, std::vector<int> weights,
                         std::vector<Polynomial> defining = {},
                         OrderKind order = OrderKind::GrevLex) {
        BaseRing R;
        R.p_ = p;
        R.names_ = std::move(names);
        R.weights_ = std::move(weights);
        R.ord_.kind = order;
        R.ord_.weights = R.weights_;
        for (int w : R.weights_)
            if (w <= 0) throw std::invalid_argument("variable weights must be positive");
        if (p != 0) {
            if (p < 2) throw std::invalid_argument("characteristic must be 0 or prime");
            for (uint32_t d = 2; d * d <= p; ++d)
                if (p % d == 0) throw std::invalid_argument("characteristic must be prime");
        }
        if (!defining.empty()) {
            for (size_t i = 0; i < defining.size(); ++i) {
                if (defining[i].is_zero())
                    throw std::invalid_argument("defining ideal generator " + std::to_string(i) + " is zero");
                if (!defining[i].is_homogeneous(R.weights_))
                    throw std::invalid_argument("defining ideal generator " + std::to_string(i) +
                                                " is not homogeneous");
            }
            R.defining_ = std::move(defining);
            R.defining_gb_ = ideal_groebner(R.defining_, R.ord_);
            if (!R.quotient_is_finite_dimensional())
                throw std::invalid_argument(
                    "defining ideal does not cut out a finite-dimensional quotient");
        }
        return R;
    }

    uint32_t characteristic() const { return p_; }
    size_t nvars() const { return names_.size(); }
    const std::vector<std::string>& names() const { return names_; }
    const std::vector<int>& weights() const { return weights_; }
    const MonomialOrder& order() const { return ord_; }
    bool has_quotient() const { return !defining_.empty(); }
    const std::vector<Polynomial>& defining() const { return defining_; }
    const std::vector<Polynomial>& defining_gb() const { return defining_gb_; }

    Polynomial zero() const { return Polynomial::zero(nvars(), p_); }
    Polynomial one() const { return Polynomial::constant(Scalar::one(p_), nvars()); }
    Polynomial var(size_t i) const { return Polynomial::variable(i, nvars(), p_); }
    Polynomial parse(const std::string& text) const {
        return reduce(parse_polynomial(text, names_, p_, ord_));
    }

    // canonical representative modulo the defining ideal
    Polynomial reduce(const Polynomial& f) const {
        if (defining_gb_.empty()) return f;
        return poly_nf(f, defining_gb_, ord_);
    }
    VecPoly reduce(const VecPoly& v) const {
        if (defining_gb_.empty()) return v;
        VecPoly r = v;
        for (auto& f : r.c) f = reduce(f);
        return r;
    }
    Polynomial mul(const Polynomial& a, const Polynomial& b) const {
        return reduce(a.times(b, ord_));
    }

    bool same_ring(const BaseRing& o) const {
        return p_ == o.p_ && names_ == o.names_ && weights_ == o.weights_ &&
               defining_.size() == o.defining_.size();
    }

    // appends defining-ideal columns so quotient-ring module computations run
    // in the ambient polynomial ring
    std::vector<VecPoly> with_defining(std::vector<VecPoly> gens, size_t rank) const {
        if (defining_.empty()) return gens;
        for (size_t j = 0; j < rank; ++j)
            for (const auto& q : defining_) {
                VecPoly v(rank, nvars(), p_);
                v.c[j] = q;
                gens.push_back(std::move(v));
            }
        return gens;
    }

    std::vector<Monomial> monomials_of_weighted_degree(long d) const {
        std::vector<Monomial> out;
        Monomial cur(nvars());
        enumerate(0, d, cur, out);
        return out;
    }

private:
    bool quotient_is_finite_dimensional() const {
        // finite-dimensional iff every variable has a pure power among the
        // leading monomials
        for (size_t i = 0; i < nvars(); ++i) {
            bool found = false;
            for (const auto& g : defining_gb_) {
                const Monomial& lm = g.leading(ord_).m;
                bool pure = lm.e[i] > 0;
                for (size_t j = 0; j < nvars() && pure; ++j)
                    if (j != i && lm.e[j] != 0) pure = false;
                if (pure) { found = true; break; }
            }
            if (!found) return false;
        }
        return true;
    }
    void enumerate(size_t i, long rem, Monomial& cur, std::vector<Monomial>& out) const {
        if (i == nvars()) {
            if (rem == 0) out.push_back(cur);
            return;
        }
        for (long e = 0; e * weights_[i] <= rem; ++e) {
            cur.e[i] = static_cast<int>(e);
            enumerate(i + 1, rem - e * weights_[i], cur, out);
        }
        cur.e[i] = 0;
    }

    uint32_t p_ = 0;
    std::vector<std::string> names_;
    std::vector<int> weights_;
    MonomialOrder ord_;
    std::vector<Polynomial> defining_;
    std::vector<Polynomial> defining_gb_;
};

// Homogeneous ideal in the base ring.
struct Ideal {
    std::vector<Polynomial> gens;

    static Ideal make(const BaseRing& R, std::vector<Polynomial> gens) {
        Ideal I;
        for (size_t i = 0; i < gens.size(); ++i) {
            Polynomial g = R.reduce(gens[i]);
            if (g.is_zero()) continue; // zero generators are dropped silently for reduced inputs
            if (!g.is_homogeneous(R.weights()))
                throw std::invalid_argument("ideal generator " + std::to_string(i) +
                                            " is not homogeneous");
            const Scalar& lc = g.leading(R.order()).c;
            if (!lc.is_one()) g = g.scaled(Scalar::one(R.characteristic()) / lc);
            I.gens.push_back(std::move(g));
        }
        return I;
    }
    bool is_zero() const { return gens.empty(); }
};

// Reduced Gröbner basis of an ideal over the base (defining ideal folded in).
// Rejects inhomogeneous input naming the offending generator, per contract.
inline std::vector<Polynomial> groebner_basis(const BaseRing& R, const std::vector<Polynomial>& gens) {
    for (size_t i = 0; i < gens.size(); ++i)
        if (!gens[i].is_homogeneous(R.weights()))
            throw std::invalid_argument("generator " + std::to_string(i) + " is not homogeneous");
    std::vector<Polynomial> all = gens;
    for (const auto& q : R.defining()) all.push_back(q);
    return ideal_groebner(all, R.order());
}

inline Polynomial normal_form(const BaseRing& R, const Polynomial& f,
                              const std::vector<Polynomial>& gb) {
    return poly_nf(f, gb, R.order());
}

inline bool ideal_contains(const BaseRing& R, const std::vector<Polynomial>& gb, const Polynomial& f) {
    return normal_form(R, f, gb).is_zero();
}

// Krull dimension of BaseRing/I via the maximal independent variable set of
// the leading-term ideal.
inline int krull_dimension(const BaseRing& R, const Ideal& I) {
    std::vector<Polynomial> gb = groebner_basis(R, I.gens);
    for (const auto& g : gb)
        if (g.is_constant() && !g.is_zero()) return -1; // unit ideal: empty Spec
    std::vector<Monomial> leads;
    for (const auto& g : gb) leads.push_back(g.leading(R.order()).m);
    size_t n = R.nvars();
    int best = -1;
    for (uint32_t mask = 0; mask < (1u << n); ++mask) {
        bool independent = true;
        for (const auto& lm : leads) {
            bool inside = true;
            for (size_t i = 0; i < n && inside; ++i)
                if (lm.e[i] > 0 && !(mask & (1u << i))) inside = false;
            if (inside) { independent = false; break; }
        }
        if (independent) best = std::max(best, static_cast<int>(__builtin_popcount(mask)));
    }
    return best;
}

// Rabinowitsch: f in sqrt(I) iff 1 in (I, 1 - t*f) in one more variable.
inline bool radical_membership(const BaseRing& R, const Polynomial& f, const Ideal& I) {
    if (f.is_zero()) return true;
    size_t n = R.nvars();
    MonomialOrder ord;
    ord.kind = R.order().kind;
    ord.weights = R.weights();
    ord.weights.push_back(1);
    uint32_t p = R.characteristic();
    auto lift = [&](const Polynomial& g) {
        Polynomial out(n + 1, p);
        for (const auto& t : g.terms()) {
            Monomial m(n + 1);
            for (size_t i = 0; i < n; ++i) m.e[i] = t.m.e[i];
            out = out.plus(Polynomial::monomial(m, t.c), ord);
        }
        out.normalize(ord);
        return out;
    };
    std::vector<Polynomial> gens;
    for (const auto& g : I.gens) gens.push_back(lift(g));
    for (const auto& g : R.defining()) gens.push_back(lift(g));
    Monomial t(n + 1);
    t.e[n] = 1;
    Polynomial one = Polynomial::constant(Scalar::one(p), n + 1);
    Polynomial tf = lift(f).times(Polynomial::monomial(t, Scalar::one(p)), ord);
    gens.push_back(one.minus(tf, ord));
    std::vector<Polynomial> gb = ideal_groebner(gens, ord);
    for (const auto& g : gb)
        if (g.is_constant() && !g.is_zero()) return true;
    return false;
}

} // namespace dgcm
