#pragma once

#include "dg_algebra.hpp"

#include <limits>

namespace dgcm {

using MElem = std::vector<Polynomial>; // coefficients over the module basis

// DG-module over a DGAlgebra: free underlying complex over the base plus
// action tables of every algebra basis element on every module basis element.
class DGModule {
public:
    struct BasisElem {
        int deg;
        long twist;
        std::string name;
    };

    static DGModule ring_module(AlgebraPtr A) {
        DGModule M;
        M.A_ = std::move(A);
        for (const auto& b : M.A_->basis()) M.basis_.push_back({b.deg, b.twist, b.name});
        for (size_t i = 0; i < M.A_->size(); ++i) M.diff_.push_back(M.A_->diff_of(i));
        for (size_t r = 0; r < M.A_->size(); ++r) {
            std::vector<MElem> row;
            for (size_t m = 0; m < M.A_->size(); ++m) row.push_back(M.A_->product(r, m));
            M.action_.push_back(std::move(row));
        }
        M.finish();
        return M;
    }

    static DGModule from_parts(AlgebraPtr A, std::vector<BasisElem> basis, std::vector<MElem> diff,
                               std::vector<std::vector<MElem>> action,
                               std::optional<int> trusted_min = std::nullopt,
                               bool verify_now = true) {
        DGModule M;
        M.A_ = std::move(A);
        M.basis_ = std::move(basis);
        M.diff_ = std::move(diff);
        M.action_ = std::move(action);
        M.trusted_min_ = trusted_min;
        M.finish();
        if (verify_now) M.verify();
        return M;
    }

    const AlgebraPtr& algebra() const { return A_; }
    const RingPtr& ring() const { return A_->ring(); }
    size_t size() const { return basis_.size(); }
    const std::vector<BasisElem>& basis() const { return basis_; }
    const MElem& diff_of(size_t i) const { return diff_[i]; }
    const MElem& action_of(size_t r, size_t m) const { return action_[r][m]; }
    std::optional<int> trusted_min() const { return trusted_min_; }

    const FreeComplex& underlying() const { return underlying_; }
    const std::vector<std::vector<size_t>>& degree_basis() const { return degree_basis_; }
    size_t position_in_degree(size_t i) const { return pos_in_degree_[i]; }

    MElem zero_elem() const { return MElem(basis_.size(), Polynomial::zero(ring()->nvars(), ring()->characteristic())); }
    MElem basis_elem(size_t i) const {
        MElem e = zero_elem();
        e[i] = ring()->one();
        return e;
    }
    MElem add(const MElem& a, const MElem& b) const {
        MElem r = a;
        for (size_t i = 0; i < r.size(); ++i) r[i] = r[i].plus(b[i], ring()->order());
        return r;
    }
    MElem scale(const MElem& a, const Polynomial& q) const {
        MElem r = zero_elem();
        for (size_t i = 0; i < r.size(); ++i) r[i] = ring()->mul(a[i], q);
        return r;
    }
    bool elem_is_zero(const MElem& a) const {
        for (const auto& q : a)
            if (!q.is_zero()) return false;
        return true;
    }
    MElem d(const MElem& a) const {
        MElem r = zero_elem();
        for (size_t i = 0; i < a.size(); ++i) {
            if (a[i].is_zero()) continue;
            for (size_t k = 0; k < r.size(); ++k)
                if (!diff_[i][k].is_zero())
                    r[k] = r[k].plus(ring()->mul(diff_[i][k], a[i]), ring()->order());
        }
        return r;
    }
    MElem act(const AlgElem& r, const MElem& m) const {
        MElem out = zero_elem();
        for (size_t a = 0; a < r.size(); ++a) {
            if (r[a].is_zero()) continue;
            for (size_t b = 0; b < m.size(); ++b) {
                if (m[b].is_zero()) continue;
                Polynomial q = ring()->mul(r[a], m[b]);
                const MElem& t = action_[a][b];
                for (size_t k = 0; k < out.size(); ++k)
                    if (!t[k].is_zero()) out[k] = out[k].plus(ring()->mul(t[k], q), ring()->order());
            }
        }
        return out;
    }

    // per-degree coordinates of an element concentrated in one degree
    VecPoly to_underlying(int deg, const MElem& m) const {
        const auto& idx = indices_at(deg);
        VecPoly v(idx.size(), ring()->nvars(), ring()->characteristic());
        for (size_t k = 0; k < idx.size(); ++k) v.c[k] = m[idx[k]];
        return v;
    }
    MElem from_underlying(int deg, const VecPoly& v) const {
        const auto& idx = indices_at(deg);
        MElem m = zero_elem();
        for (size_t k = 0; k < idx.size(); ++k) m[idx[k]] = v.c[k];
        return m;
    }
    const std::vector<size_t>& indices_at(int deg) const {
        static const std::vector<size_t> empty;
        if (deg < lo_ || deg > lo_ + static_cast<int>(degree_basis_.size()) - 1) return empty;
        return degree_basis_[deg - lo_];
    }

    DGModule shift(int s) const {
        DGModule M;
        M.A_ = A_;
        for (const auto& b : basis_) M.basis_.push_back({b.deg - s, b.twist, b.name});
        uint32_t p = ring()->characteristic();
        Scalar sgn(s % 2 == 0 ? 1 : -1, p);
        for (const auto& dcol : diff_) {
            MElem d2 = dcol;
            for (auto& q : d2) q = q.scaled(sgn);
            M.diff_.push_back(std::move(d2));
        }
        for (size_t r = 0; r < action_.size(); ++r) {
            std::vector<MElem> row;
            bool flip = (s % 2 != 0) && (A_->basis()[r].deg % 2 != 0);
            for (size_t m = 0; m < action_[r].size(); ++m) {
                MElem a = action_[r][m];
                if (flip)
                    for (auto& q : a) q = q.scaled(Scalar(-1, p));
                row.push_back(std::move(a));
            }
            M.action_.push_back(std::move(row));
        }
        if (trusted_min_) M.trusted_min_ = *trusted_min_ - s;
        M.finish();
        return M;
    }

    void verify() const {
        uint32_t p = ring()->characteristic();
        size_t n = size();
        // unit acts as identity
        for (size_t m = 0; m < n; ++m)
            if (!elems_equal(action_[0][m], basis_elem(m)))
                throw std::logic_error("module unit law fails");
        for (size_t r = 0; r < A_->size(); ++r) {
            int rd = A_->basis()[r].deg;
            for (size_t m = 0; m < n; ++m) {
                // Leibniz: d(r m) = dr m + (-1)^{|r|} r dm
                MElem lhs = d(action_[r][m]);
                MElem rhs = act_basis_on(A_->diff_of(r), m);
                MElem second = act(A_->basis_elem(r), diff_[m]);
                if (rd % 2 != 0)
                    for (auto& q : second) q = q.scaled(Scalar(-1, p));
                rhs = add(rhs, second);
                if (!elems_equal(lhs, rhs)) throw std::logic_error("module Leibniz fails");
            }
        }
        for (size_t r = 0; r < A_->size(); ++r)
            for (size_t s = 0; s < A_->size(); ++s)
                for (size_t m = 0; m < n; ++m) {
                    MElem a = act_basis_on(A_->product(r, s), m);
                    MElem b = act(A_->basis_elem(r), action_[s][m]);
                    if (!elems_equal(a, b)) throw std::logic_error("module associativity fails");
                }
    }

    bool elems_equal(const MElem& a, const MElem& b) const {
        for (size_t i = 0; i < a.size(); ++i)
            if (!a[i].equals(b[i])) return false;
        return true;
    }

private:
    MElem act_basis_on(const AlgElem& r, size_t m) const { return act(r, basis_elem(m)); }

    void finish() {
        lo_ = 0;
        int hi = 0;
        for (const auto& b : basis_) {
            lo_ = std::min(lo_, b.deg);
            hi = std::max(hi, b.deg);
        }
        degree_basis_.assign(hi - lo_ + 1, {});
        pos_in_degree_.assign(basis_.size(), 0);
        for (size_t i = 0; i < basis_.size(); ++i) {
            auto& bucket = degree_basis_[basis_[i].deg - lo_];
            pos_in_degree_[i] = bucket.size();
            bucket.push_back(i);
        }
        std::vector<std::vector<long>> tw;
        std::vector<std::vector<VecPoly>> df;
        for (int dgr = lo_; dgr <= hi; ++dgr) {
            std::vector<long> t;
            for (size_t i : degree_basis_[dgr - lo_]) t.push_back(basis_[i].twist);
            tw.push_back(std::move(t));
        }
        for (int dgr = lo_; dgr <= hi; ++dgr) {
            const auto& src = degree_basis_[dgr - lo_];
            std::vector<size_t> dst;
            if (dgr + 1 <= hi) dst = degree_basis_[dgr + 1 - lo_];
            std::vector<VecPoly> cols;
            for (size_t i : src) {
                VecPoly col(dst.size(), ring()->nvars(), ring()->characteristic());
                for (size_t r = 0; r < dst.size(); ++r) col.c[r] = diff_[i][dst[r]];
                cols.push_back(std::move(col));
            }
            df.push_back(std::move(cols));
        }
        underlying_ = FreeComplex::build(ring(), lo_, std::move(tw), std::move(df));
    }

    AlgebraPtr A_;
    std::vector<BasisElem> basis_;
    std::vector<MElem> diff_;
    std::vector<std::vector<MElem>> action_;
    std::optional<int> trusted_min_;
    int lo_ = 0;
    FreeComplex underlying_;
    std::vector<std::vector<size_t>> degree_basis_;
    std::vector<size_t> pos_in_degree_;
};

// R-linear chain map of degree 0 given by images of the source module basis.
struct DGModuleMap {
    const DGModule* src;
    const DGModule* dst;
    std::vector<MElem> images;

    static DGModuleMap multiplication(const DGModule& M, const Polynomial& q) {
        DGModuleMap f{&M, &M, {}};
        for (size_t i = 0; i < M.size(); ++i) f.images.push_back(M.scale(M.basis_elem(i), q));
        return f;
    }

    MElem apply(const MElem& m) const {
        MElem out = dst->zero_elem();
        for (size_t i = 0; i < m.size(); ++i) {
            if (m[i].is_zero()) continue;
            out = dst->add(out, dst->scale(images[i], m[i]));
        }
        return out;
    }
    void verify_chain() const {
        for (size_t i = 0; i < src->size(); ++i) {
            MElem a = apply(src->diff_of(i));
            MElem b = dst->d(images[i]);
            if (!dst->elems_equal(a, b)) throw std::logic_error("module map does not commute with d");
        }
    }
};

// cone(f)^i = Src^{i+1} (+) Dst^i as a DG-module; the shifted block carries
// the usual sign in both differential and action.
inline DGModule cone_module(const DGModuleMap& f, bool verify_now = true) {
    const DGModule& S = *f.src;
    const DGModule& T = *f.dst;
    AlgebraPtr A = S.algebra();
    uint32_t p = S.ring()->characteristic();
    size_t ns = S.size(), nt = T.size();
    std::vector<DGModule::BasisElem> basis;
    for (const auto& b : S.basis()) basis.push_back({b.deg - 1, b.twist, "s" + b.name});
    for (const auto& b : T.basis()) basis.push_back({b.deg, b.twist, "t" + b.name});

    auto emb = [&](const MElem& sm, const MElem& tm) {
        MElem out(ns + nt, Polynomial::zero(S.ring()->nvars(), p));
        for (size_t i = 0; i < ns; ++i) out[i] = sm[i];
        for (size_t i = 0; i < nt; ++i) out[ns + i] = tm[i];
        return out;
    };

    std::vector<MElem> diff;
    for (size_t i = 0; i < ns; ++i) {
        MElem ds = S.diff_of(i);
        for (auto& q : ds) q = q.scaled(Scalar(-1, p));
        diff.push_back(emb(ds, f.images[i]));
    }
    for (size_t i = 0; i < nt; ++i) diff.push_back(emb(S.zero_elem(), T.diff_of(i)));

    std::vector<std::vector<MElem>> action;
    for (size_t r = 0; r < A->size(); ++r) {
        bool odd = A->basis()[r].deg % 2 != 0;
        std::vector<MElem> row;
        for (size_t i = 0; i < ns; ++i) {
            MElem am = S.action_of(r, i);
            if (odd)
                for (auto& q : am) q = q.scaled(Scalar(-1, p));
            row.push_back(emb(am, T.zero_elem()));
        }
        for (size_t i = 0; i < nt; ++i) row.push_back(emb(S.zero_elem(), T.action_of(r, i)));
        action.push_back(std::move(row));
    }
    std::optional<int> trusted;
    if (S.trusted_min() || T.trusted_min()) {
        int a = S.trusted_min() ? *S.trusted_min() - 1 : std::numeric_limits<int>::min() / 2;
        int b = T.trusted_min() ? *T.trusted_min() : std::numeric_limits<int>::min() / 2;
        trusted = std::max(a, b);
    }
    return DGModule::from_parts(A, std::move(basis), std::move(diff), std::move(action), trusted,
                                verify_now);
}

// Koszul DG-module K(elems; M): iterated cones of the multiplication maps.
inline DGModule koszul_dg_module(const std::vector<Polynomial>& elems, const DGModule& M,
                                 bool verify_now = true) {
    DGModule cur = M;
    for (const auto& e : elems) {
        DGModuleMap f = DGModuleMap::multiplication(cur, cur.ring()->reduce(e));
        cur = cone_module(f, verify_now);
    }
    return cur;
}

} // namespace dgcm
