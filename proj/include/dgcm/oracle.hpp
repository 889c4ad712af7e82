#pragma once

// Dense degreewise backend: cohomology, kernels and induced maps computed per
// internal degree by straight linear algebra over the coefficient field. No
// Groebner machinery anywhere on this path; quotient bases must be monomial so
// reduction is term dropping. Exact in every degree it is asked about, and
// globally exact over Artinian bases.

#include "free_complex.hpp"

namespace dgcm {
namespace oracle {

inline bool base_is_monomial(const BaseRing& R) {
    for (const auto& g : R.defining())
        if (g.size() != 1) return false;
    return true;
}

struct Elim {
    size_t rows = 0, cols = 0;
    std::vector<std::vector<Scalar>> m; // row-major

    Elim(size_t r, size_t c, uint32_t p) : rows(r), cols(c), m(r, std::vector<Scalar>(c, Scalar::zero(p))) {}

    size_t rank() const {
        Elim t = *this;
        return t.reduce();
    }
    size_t reduce() { // in-place row echelon, returns rank
        size_t rk = 0;
        for (size_t c = 0; c < cols && rk < rows; ++c) {
            size_t piv = rk;
            while (piv < rows && m[piv][c].is_zero()) ++piv;
            if (piv == rows) continue;
            std::swap(m[piv], m[rk]);
            Scalar inv = Scalar::one(m[rk][c].characteristic()) / m[rk][c];
            for (auto& x : m[rk]) x *= inv;
            for (size_t i = 0; i < rows; ++i) {
                if (i == rk || m[i][c].is_zero()) continue;
                Scalar f = m[i][c];
                for (size_t j = 0; j < cols; ++j) m[i][j] -= f * m[rk][j];
            }
            ++rk;
        }
        return rk;
    }
    // basis of the right kernel
    std::vector<std::vector<Scalar>> kernel(uint32_t p) const {
        Elim t = *this;
        t.reduce();
        std::vector<long> pivot_of_col(cols, -1);
        size_t r = 0;
        for (size_t c = 0; c < cols && r < rows; ++c) {
            if (!t.m[r][c].is_zero()) pivot_of_col[c] = static_cast<long>(r++);
        }
        std::vector<std::vector<Scalar>> out;
        for (size_t c = 0; c < cols; ++c) {
            if (pivot_of_col[c] >= 0) continue;
            std::vector<Scalar> v(cols, Scalar::zero(p));
            v[c] = Scalar::one(p);
            for (size_t c2 = 0; c2 < c; ++c2)
                if (pivot_of_col[c2] >= 0) v[c2] = -t.m[pivot_of_col[c2]][c];
            out.push_back(std::move(v));
        }
        return out;
    }
};

// monomial basis of the degree-s piece of the ambient free module
struct PieceBasis {
    std::vector<std::pair<size_t, Monomial>> elems; // (ambient position, monomial)
    std::map<std::pair<size_t, std::vector<int>>, size_t> index;
};

inline bool killed_by_defining(const BaseRing& R, const Monomial& m) {
    for (const auto& g : R.defining())
        if (g.terms()[0].m.divides(m)) return true;
    return false;
}

inline PieceBasis piece_basis(const BaseRing& R, const std::vector<long>& twists, long s) {
    PieceBasis b;
    for (size_t j = 0; j < twists.size(); ++j) {
        long d = s - twists[j];
        if (d < 0) continue;
        for (const auto& m : R.monomials_of_weighted_degree(d)) {
            if (killed_by_defining(R, m)) continue;
            b.index[{j, m.e}] = b.elems.size();
            b.elems.push_back({j, m});
        }
    }
    return b;
}

// dense matrix of a polynomial-column map in internal degree s
inline Elim piece_matrix(const BaseRing& R, const std::vector<VecPoly>& cols,
                         const std::vector<long>& src_twists, const std::vector<long>& dst_twists,
                         long s, const PieceBasis& src, const PieceBasis& dst) {
    uint32_t p = R.characteristic();
    Elim m(dst.elems.size(), src.elems.size(), p);
    for (size_t k = 0; k < src.elems.size(); ++k) {
        auto [j, mono] = src.elems[k];
        if (cols.empty()) continue;
        const VecPoly& col = cols[j];
        for (size_t r = 0; r < col.rank(); ++r) {
            for (const auto& t : col.c[r].terms()) {
                Monomial prod = t.m * mono;
                if (killed_by_defining(R, prod)) continue;
                auto it = dst.index.find({r, prod.e});
                if (it == dst.index.end()) continue;
                m.m[it->second][k] += t.c;
            }
        }
    }
    (void)src_twists;
    (void)dst_twists;
    return m;
}

// dim_k H^i(C)_s
inline long cohomology_dim(const FreeComplex& C, int i, long s) {
    const BaseRing& R = *C.ring();
    PieceBasis here = piece_basis(R, C.twists(i), s);
    if (here.elems.empty()) return 0;
    PieceBasis up = piece_basis(R, C.twists(i + 1), s);
    PieceBasis down = piece_basis(R, C.twists(i - 1), s);
    Elim d_i = piece_matrix(R, C.diff(i), C.twists(i), C.twists(i + 1), s, here, up);
    Elim d_prev = piece_matrix(R, C.diff(i - 1), C.twists(i - 1), C.twists(i), s, down, here);
    long ker = static_cast<long>(here.elems.size()) - static_cast<long>(d_i.rank());
    return ker - static_cast<long>(d_prev.rank());
}

inline std::vector<long> cohomology_dims(const FreeComplex& C, int i, long s_lo, long s_hi) {
    std::vector<long> out;
    for (long s = s_lo; s <= s_hi; ++s) out.push_back(cohomology_dim(C, i, s));
    return out;
}

// all internal degrees that can carry a nonzero piece of C^i within [lo, hi]
inline bool cohomology_zero_in_window(const FreeComplex& C, int i, long s_lo, long s_hi) {
    for (long s = s_lo; s <= s_hi; ++s)
        if (cohomology_dim(C, i, s) != 0) return false;
    return true;
}

// Over an Artinian monomial base every graded piece is finite and complexes
// carry finitely many degrees: exact global cohomology dimensions.
inline std::pair<long, long> artinian_degree_window(const FreeComplex& C) {
    const BaseRing& R = *C.ring();
    long top = 0;
    // largest standard monomial degree
    for (long d = 0;; ++d) {
        bool any = false;
        for (const auto& m : R.monomials_of_weighted_degree(d))
            if (!killed_by_defining(R, m)) { any = true; break; }
        if (!any) { top = d - 1; break; }
        if (d > 4096) throw std::logic_error("artinian window runaway");
    }
    long lo = 0, hi = 0;
    for (int i = C.lo(); i <= C.hi(); ++i)
        for (long t : C.twists(i)) {
            lo = std::min(lo, t);
            hi = std::max(hi, t + top);
        }
    return {lo, hi};
}

inline long artinian_total_dim(const FreeComplex& C, int i) {
    auto [lo, hi] = artinian_degree_window(C);
    long total = 0;
    for (long s = lo; s <= hi; ++s) total += cohomology_dim(C, i, s);
    return total;
}

// induced map H^i(f)_s: returns (dim ker, dim coker, nonzero?) data via ranks
struct InducedMapData {
    long src_dim = 0, dst_dim = 0, image_rank = 0;
    bool nonzero() const { return image_rank > 0; }
    bool injective() const { return image_rank == src_dim; }
    bool surjective() const { return image_rank == dst_dim; }
};

inline InducedMapData induced_map(const FreeComplex& C, const FreeComplex& D,
                                  const ComplexMap& f, int i, long s) {
    const BaseRing& R = *C.ring();
    uint32_t p = R.characteristic();
    PieceBasis cb = piece_basis(R, C.twists(i), s);
    PieceBasis cu = piece_basis(R, C.twists(i + 1), s);
    PieceBasis cd = piece_basis(R, C.twists(i - 1), s);
    PieceBasis db = piece_basis(R, D.twists(i), s);
    PieceBasis du = piece_basis(R, D.twists(i + 1), s);
    PieceBasis dd = piece_basis(R, D.twists(i - 1), s);

    Elim dc = piece_matrix(R, C.diff(i), C.twists(i), C.twists(i + 1), s, cb, cu);
    Elim bc = piece_matrix(R, C.diff(i - 1), C.twists(i - 1), C.twists(i), s, cd, cb);
    Elim dm = piece_matrix(R, D.diff(i), D.twists(i), D.twists(i + 1), s, db, du);
    Elim bm = piece_matrix(R, D.diff(i - 1), D.twists(i - 1), D.twists(i), s, dd, db);
    Elim fm = piece_matrix(R, f.at(i), C.twists(i), D.twists(i), s, cb, db);

    auto zc = dc.kernel(p); // cycle basis in C
    long src_rank_b = static_cast<long>(bc.rank());
    InducedMapData out;
    out.src_dim = static_cast<long>(zc.size()) - src_rank_b;
    Elim dmk = dm;
    long dst_cycles = static_cast<long>(db.elems.size()) - static_cast<long>(dm.rank());
    long dst_bound = static_cast<long>(bm.rank());
    out.dst_dim = dst_cycles - dst_bound;

    // rank of (f(cycles) + boundaries) / boundaries
    size_t nb = dd.elems.size();
    Elim big(db.elems.size(), nb + zc.size(), p);
    for (size_t c = 0; c < nb; ++c)
        for (size_t r = 0; r < db.elems.size(); ++r) big.m[r][c] = bm.m[r][c];
    for (size_t k = 0; k < zc.size(); ++k)
        for (size_t r = 0; r < db.elems.size(); ++r) {
            Scalar acc = Scalar::zero(p);
            for (size_t c = 0; c < cb.elems.size(); ++c) acc += fm.m[r][c] * zc[k][c];
            big.m[r][nb + k] = acc;
        }
    out.image_rank = static_cast<long>(big.rank()) - dst_bound;
    (void)dmk;
    return out;
}

} // namespace oracle
} // namespace dgcm
