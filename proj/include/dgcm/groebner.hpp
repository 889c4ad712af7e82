#pragma once

#include "polynomial.hpp"

#include <optional>
#include <set>

namespace dgcm {

// Element of a free module A^rank: one polynomial per position.
struct VecPoly {
    std::vector<Polynomial> c;

    VecPoly() = default;
    VecPoly(size_t rank, size_t nvars, uint32_t p) : c(rank, Polynomial(nvars, p)) {}

    size_t rank() const { return c.size(); }
    bool is_zero() const {
        for (const auto& f : c)
            if (!f.is_zero()) return false;
        return true;
    }
    VecPoly plus(const VecPoly& o, const MonomialOrder& ord) const {
        VecPoly r(*this);
        for (size_t i = 0; i < c.size(); ++i) r.c[i] = r.c[i].plus(o.c[i], ord);
        return r;
    }
    VecPoly minus(const VecPoly& o, const MonomialOrder& ord) const {
        VecPoly r(*this);
        for (size_t i = 0; i < c.size(); ++i) r.c[i] = r.c[i].minus(o.c[i], ord);
        return r;
    }
    VecPoly scaled(const Scalar& s) const {
        VecPoly r(*this);
        for (auto& f : r.c) f = f.scaled(s);
        return r;
    }
    VecPoly term_multiplied(const Monomial& m, const Scalar& s) const {
        VecPoly r(*this);
        for (auto& f : r.c) f = f.term_multiplied(m, s);
        return r;
    }
    VecPoly poly_multiplied(const Polynomial& q, const MonomialOrder& ord) const {
        VecPoly r(*this);
        for (auto& f : r.c) f = f.times(q, ord);
        return r;
    }
    bool equals(const VecPoly& o) const {
        for (size_t i = 0; i < c.size(); ++i)
            if (!c[i].equals(o.c[i])) return false;
        return true;
    }
};

struct ModuleTerm {
    size_t pos;
    Monomial m;
    Scalar coeff;
};

// Position-over-term: positions rank by index (smaller index wins), monomial
// order inside a position. Used both for plain module bases and, with the
// generator block appended after the ambient block, as the elimination order
// behind syzygies and lifts.
inline std::optional<ModuleTerm> leading_term(const VecPoly& v, const MonomialOrder& ord) {
    for (size_t i = 0; i < v.c.size(); ++i)
        if (!v.c[i].is_zero()) {
            const auto& t = v.c[i].leading(ord);
            return ModuleTerm{i, t.m, t.c};
        }
    return std::nullopt;
}

// Gröbner basis of a submodule of A^rank, with cofactors over the original
// generators and the harvested Schreyer syzygies.
struct ModuleGB {
    size_t rank = 0;
    std::vector<VecPoly> elems;     // reduced basis, leads monic, sorted
    std::vector<VecPoly> cofactors; // elems[k] = sum_i cofactors[k].c[i] * gens[i]
    std::vector<VecPoly> syzygies;  // relations among the original gens
};

namespace detail {

struct AugVec {
    VecPoly f;   // ambient block
    VecPoly a;   // cofactor block over the original generators
};

// one full reduction of the ambient block against reducers; cofactor blocks ride along
inline AugVec reduce_aug(AugVec v, const std::vector<AugVec>& reducers, const MonomialOrder& ord,
                         bool tail_reduce) {
    size_t nv = ord.weights.size();
    uint32_t p = v.f.c.empty() ? 0 : v.f.c[0].characteristic();
    VecPoly out(v.f.rank(), nv, p);
    while (true) {
        auto lt = leading_term(v.f, ord);
        if (!lt) break;
        bool reduced = false;
        for (const auto& g : reducers) {
            auto glt = leading_term(g.f, ord);
            if (!glt || glt->pos != lt->pos) continue;
            if (!glt->m.divides(lt->m)) continue;
            Monomial q = lt->m.quotient(glt->m);
            Scalar s = lt->coeff / glt->coeff;
            v.f = v.f.minus(g.f.term_multiplied(q, s), ord);
            v.a = v.a.minus(g.a.term_multiplied(q, s), ord);
            reduced = true;
            break;
        }
        if (!reduced) {
            if (!tail_reduce) break;
            // move the irreducible lead into the output and continue on the tail
            Polynomial mono = Polynomial::monomial(lt->m, lt->coeff);
            out.c[lt->pos] = out.c[lt->pos].plus(mono, ord);
            v.f.c[lt->pos] = v.f.c[lt->pos].minus(mono, ord);
        }
    }
    if (tail_reduce) v.f = out;
    return v;
}

} // namespace detail

// Buchberger with the normal strategy: smallest (weighted lcm degree + twist)
// pair first, indices break ties. Deterministic for fixed inputs and order.
// The coprime-lead criterion would skip exactly the reductions that harvest
// Koszul syzygies, so it is only applied when the caller opts out of them.
inline ModuleGB module_groebner(const std::vector<VecPoly>& gens, size_t rank,
                                const MonomialOrder& ord,
                                const std::vector<long>& twists = {},
                                bool want_syzygies = true) {
    using detail::AugVec;
    size_t nv = ord.weights.size();
    uint32_t p = 0;
    if (!gens.empty() && !gens[0].c.empty()) p = gens[0].c[0].characteristic();
    ModuleGB out;
    out.rank = rank;

    std::vector<AugVec> basis;
    std::vector<VecPoly> syz;
    for (size_t i = 0; i < gens.size(); ++i) {
        AugVec v;
        v.f = gens[i];
        v.a = VecPoly(gens.size(), nv, p);
        v.a.c[i] = Polynomial::constant(Scalar::one(p), nv);
        if (v.f.is_zero())
            syz.push_back(v.a);
        else
            basis.push_back(std::move(v));
    }

    auto pair_degree = [&](size_t i, size_t j) {
        auto li = leading_term(basis[i].f, ord), lj = leading_term(basis[j].f, ord);
        Monomial l = Monomial::lcm(li->m, lj->m);
        long tw = twists.empty() ? 0 : twists[li->pos];
        return l.wdeg(ord.weights) + tw;
    };

    std::set<std::tuple<long, size_t, size_t>> pairs;
    auto add_pairs_for = [&](size_t k) {
        auto lk = leading_term(basis[k].f, ord);
        for (size_t i = 0; i < k; ++i) {
            auto li = leading_term(basis[i].f, ord);
            if (li->pos != lk->pos) continue;
            // product criterion: sound for ideals, but it skips syzygy harvests
            if (!want_syzygies && rank == 1 && Monomial::coprime(li->m, lk->m)) continue;
            pairs.insert({pair_degree(i, k), i, k});
        }
    };
    for (size_t k = 0; k < basis.size(); ++k) add_pairs_for(k);

    while (!pairs.empty()) {
        auto [deg, i, j] = *pairs.begin();
        pairs.erase(pairs.begin());
        auto li = leading_term(basis[i].f, ord), lj = leading_term(basis[j].f, ord);
        Monomial l = Monomial::lcm(li->m, lj->m);
        AugVec s;
        s.f = basis[i].f.term_multiplied(l.quotient(li->m), Scalar::one(p) / li->coeff);
        s.a = basis[i].a.term_multiplied(l.quotient(li->m), Scalar::one(p) / li->coeff);
        AugVec t;
        t.f = basis[j].f.term_multiplied(l.quotient(lj->m), Scalar::one(p) / lj->coeff);
        t.a = basis[j].a.term_multiplied(l.quotient(lj->m), Scalar::one(p) / lj->coeff);
        s.f = s.f.minus(t.f, ord);
        s.a = s.a.minus(t.a, ord);
        AugVec r = detail::reduce_aug(std::move(s), basis, ord, /*tail_reduce=*/false);
        if (r.f.is_zero()) {
            if (!r.a.is_zero()) syz.push_back(r.a);
        } else {
            basis.push_back(std::move(r));
            add_pairs_for(basis.size() - 1);
        }
    }

    // minimalize: drop elements whose lead another element's lead divides
    std::vector<char> keep(basis.size(), 1);
    for (size_t i = 0; i < basis.size(); ++i) {
        auto li = leading_term(basis[i].f, ord);
        for (size_t j = 0; j < basis.size(); ++j) {
            if (i == j) continue;
            auto ljt = leading_term(basis[j].f, ord);
            if (ljt->pos != li->pos) continue;
            bool divides = ljt->m.divides(li->m);
            bool equal = li->m == ljt->m;
            if (divides && (!equal || j < i)) {
                keep[i] = 0;
                break;
            }
        }
    }
    std::vector<AugVec> kept;
    for (size_t i = 0; i < basis.size(); ++i)
        if (keep[i]) kept.push_back(std::move(basis[i]));

    // tail-reduce each element against the others, normalize leads to 1
    std::vector<AugVec> reduced;
    for (size_t i = 0; i < kept.size(); ++i) {
        std::vector<AugVec> others;
        for (size_t j = 0; j < kept.size(); ++j)
            if (j != i) others.push_back(kept[j]);
        AugVec r = detail::reduce_aug(kept[i], others, ord, /*tail_reduce=*/true);
        auto lt = leading_term(r.f, ord);
        if (!lt) continue; // fully redundant
        Scalar inv = Scalar::one(p) / lt->coeff;
        r.f = r.f.scaled(inv);
        r.a = r.a.scaled(inv);
        reduced.push_back(std::move(r));
    }
    std::sort(reduced.begin(), reduced.end(), [&](const AugVec& x, const AugVec& y) {
        auto lx = leading_term(x.f, ord), ly = leading_term(y.f, ord);
        if (lx->pos != ly->pos) return lx->pos < ly->pos;
        return ord.cmp(lx->m, ly->m) > 0;
    });

    for (auto& v : reduced) {
        out.elems.push_back(std::move(v.f));
        out.cofactors.push_back(std::move(v.a));
    }
    out.syzygies = std::move(syz);
    return out;
}

// Full normal form against a reduced basis; no term of the result is
// divisible by a basis lead at its position.
inline VecPoly module_nf(const VecPoly& v, const ModuleGB& gb, const MonomialOrder& ord) {
    detail::AugVec w;
    w.f = v;
    w.a = VecPoly(gb.elems.size(), ord.weights.size(), v.c.empty() ? 0 : v.c[0].characteristic());
    std::vector<detail::AugVec> reducers;
    for (size_t i = 0; i < gb.elems.size(); ++i) {
        detail::AugVec g;
        g.f = gb.elems[i];
        g.a = w.a; // unused
        reducers.push_back(std::move(g));
    }
    return detail::reduce_aug(std::move(w), reducers, ord, /*tail_reduce=*/true).f;
}

inline bool in_span(const VecPoly& v, const ModuleGB& gb, const MonomialOrder& ord) {
    return module_nf(v, gb, ord).is_zero();
}

// Expresses v as a combination of the original generators behind gb, if possible.
// Returns coefficients c with v = sum c_i * gens_i.
inline std::optional<VecPoly> module_lift(const VecPoly& v, const ModuleGB& gb,
                                          const std::vector<VecPoly>& gens,
                                          const MonomialOrder& ord) {
    size_t nv = ord.weights.size();
    uint32_t p = v.c.empty() ? 0 : v.c[0].characteristic();
    detail::AugVec w;
    w.f = v;
    w.a = VecPoly(gens.size(), nv, p);
    std::vector<detail::AugVec> reducers;
    for (size_t i = 0; i < gb.elems.size(); ++i) {
        detail::AugVec g;
        g.f = gb.elems[i];
        g.a = gb.cofactors[i];
        reducers.push_back(std::move(g));
    }
    detail::AugVec r = detail::reduce_aug(std::move(w), reducers, ord, /*tail_reduce=*/true);
    if (!r.f.is_zero()) return std::nullopt;
    // invariant: v - sum a_i gens_i = remainder, so v = -(-a) ... signs: w.a
    // accumulated subtractions, v = remainder + sum a_i gens_i with a = -r.a
    VecPoly cof = r.a.scaled(Scalar(-1, p));
    return cof;
}

// Ideal-level wrappers (rank-1 modules).
inline std::vector<Polynomial> ideal_groebner(const std::vector<Polynomial>& gens,
                                              const MonomialOrder& ord) {
    std::vector<VecPoly> vgens;
    for (const auto& g : gens) {
        VecPoly v(1, g.nvars(), g.characteristic());
        v.c[0] = g;
        vgens.push_back(std::move(v));
    }
    ModuleGB gb = module_groebner(vgens, 1, ord, {}, /*want_syzygies=*/false);
    std::vector<Polynomial> out;
    for (const auto& e : gb.elems) out.push_back(e.c[0]);
    return out;
}

inline Polynomial poly_nf(const Polynomial& f, const std::vector<Polynomial>& gb,
                          const MonomialOrder& ord) {
    ModuleGB g;
    g.rank = 1;
    for (const auto& b : gb) {
        VecPoly v(1, f.nvars(), f.characteristic());
        v.c[0] = b;
        g.elems.push_back(std::move(v));
    }
    VecPoly v(1, f.nvars(), f.characteristic());
    v.c[0] = f;
    return module_nf(v, g, ord).c[0];
}

} // namespace dgcm
