#pragma once

#include "presented_module.hpp"

#include <map>

namespace dgcm {

// Bounded cohomological complex of finite free graded modules. Differentials
// are stored columnwise: diff(i)[j] is the image of the j-th basis vector of
// C^i inside C^{i+1}. d*d = 0 and homogeneity are enforced at construction.
class FreeComplex {
public:
    FreeComplex() = default;

    static FreeComplex zero_complex(RingPtr R) {
        FreeComplex C;
        C.R_ = std::move(R);
        C.lo_ = 0;
        C.twists_.push_back({});
        C.diff_.push_back({});
        return C;
    }

    static FreeComplex concentrated(RingPtr R, int degree, std::vector<long> twists) {
        FreeComplex C;
        C.R_ = std::move(R);
        C.lo_ = degree;
        C.twists_.push_back(std::move(twists));
        C.diff_.push_back({});
        return C;
    }

    static FreeComplex build(RingPtr R, int lo, std::vector<std::vector<long>> twists,
                             std::vector<std::vector<VecPoly>> diff) {
        FreeComplex C;
        C.R_ = std::move(R);
        C.lo_ = lo;
        C.twists_ = std::move(twists);
        C.diff_ = std::move(diff);
        if (C.diff_.size() + 1 == C.twists_.size()) C.diff_.push_back({});
        if (C.diff_.size() != C.twists_.size())
            throw std::invalid_argument("differential/term count mismatch");
        C.validate();
        return C;
    }

    const RingPtr& ring() const { return R_; }
    int lo() const { return lo_; }
    int hi() const { return lo_ + static_cast<int>(twists_.size()) - 1; }

    size_t rank(int i) const {
        if (i < lo_ || i > hi()) return 0;
        return twists_[i - lo_].size();
    }
    const std::vector<long>& twists(int i) const {
        static const std::vector<long> empty;
        if (i < lo_ || i > hi()) return empty;
        return twists_[i - lo_];
    }
    // columns of d^i (empty when source or target vanish)
    std::vector<VecPoly> diff(int i) const {
        if (i < lo_ || i > hi()) return {};
        std::vector<VecPoly> cols = diff_[i - lo_];
        if (cols.empty() && rank(i) > 0)
            cols.assign(rank(i), VecPoly(rank(i + 1), R_->nvars(), R_->characteristic()));
        return cols;
    }
    VecPoly apply_diff(int i, const VecPoly& v) const {
        auto cols = diff(i);
        VecPoly out(rank(i + 1), R_->nvars(), R_->characteristic());
        for (size_t j = 0; j < cols.size(); ++j)
            out = out.plus(cols[j].poly_multiplied(v.c[j], R_->order()), R_->order());
        return R_->reduce(out);
    }

    // --- algebra -----------------------------------------------------------

    // H^i(shift(C, s)) = H^{i+s}(C); inf drops by s, differential picks (-1)^s
    FreeComplex shift(int s) const {
        FreeComplex C;
        C.R_ = R_;
        C.lo_ = lo_ - s;
        C.twists_ = twists_;
        C.diff_ = diff_;
        if (s % 2 != 0)
            for (auto& cols : C.diff_)
                for (auto& col : cols) col = col.scaled(Scalar(-1, R_->characteristic()));
        return C;
    }

    FreeComplex direct_sum(const FreeComplex& o) const {
        int nlo = std::min(lo_, o.lo_), nhi = std::max(hi(), o.hi());
        std::vector<std::vector<long>> tw;
        std::vector<std::vector<VecPoly>> df;
        for (int i = nlo; i <= nhi; ++i) {
            std::vector<long> t = twists(i);
            auto t2 = o.twists(i);
            t.insert(t.end(), t2.begin(), t2.end());
            tw.push_back(std::move(t));
        }
        for (int i = nlo; i <= nhi; ++i) {
            size_t tgt = rank(i + 1) + o.rank(i + 1);
            std::vector<VecPoly> cols;
            auto my = diff(i);
            auto their = o.diff(i);
            for (size_t j = 0; j < rank(i); ++j) {
                VecPoly col(tgt, R_->nvars(), R_->characteristic());
                for (size_t r = 0; r < rank(i + 1); ++r) col.c[r] = my[j].c[r];
                cols.push_back(std::move(col));
            }
            for (size_t j = 0; j < o.rank(i); ++j) {
                VecPoly col(tgt, R_->nvars(), R_->characteristic());
                for (size_t r = 0; r < o.rank(i + 1); ++r) col.c[rank(i + 1) + r] = their[j].c[r];
                cols.push_back(std::move(col));
            }
            df.push_back(std::move(cols));
        }
        return build(R_, nlo, std::move(tw), std::move(df));
    }

    // --- cohomology --------------------------------------------------------

    std::vector<VecPoly> cycle_generators(int i) const {
        if (rank(i) == 0) return {};
        if (rank(i + 1) == 0) {
            std::vector<VecPoly> gens;
            for (size_t j = 0; j < rank(i); ++j) {
                VecPoly e(rank(i), R_->nvars(), R_->characteristic());
                e.c[j] = R_->one();
                gens.push_back(std::move(e));
            }
            return gens;
        }
        return kernel_generators(*R_, diff(i), rank(i + 1));
    }

    Subquotient cohomology_at(int i) const {
        if (rank(i) == 0) return {PresentedModule::zero(R_), {}};
        std::vector<VecPoly> cycles = cycle_generators(i);
        std::vector<VecPoly> bounds;
        if (rank(i - 1) > 0) bounds = diff(i - 1);
        return subquotient_presentation(R_, twists(i), cycles, bounds);
    }

    bool cohomology_zero_at(int i) const {
        if (rank(i) == 0) return true;
        std::vector<VecPoly> cycles = cycle_generators(i);
        if (cycles.empty()) return true;
        std::vector<VecPoly> bounds;
        if (rank(i - 1) > 0) bounds = diff(i - 1);
        ModuleGB gb = module_groebner(R_->with_defining(bounds, rank(i)), rank(i), R_->order());
        for (const auto& z : cycles)
            if (!module_nf(z, gb, R_->order()).is_zero()) return false;
        return true;
    }

    struct Bounds {
        bool exact = false;
        int inf = 0, sup = 0, amp = 0;
    };

    Bounds cohomology_bounds() const {
        Bounds b;
        std::optional<int> first, last;
        for (int i = lo(); i <= hi(); ++i) {
            if (!cohomology_zero_at(i)) {
                if (!first) first = i;
                last = i;
            }
        }
        if (!first) {
            b.exact = true;
            return b;
        }
        b.inf = *first;
        b.sup = *last;
        b.amp = b.sup - b.inf;
        return b;
    }

    bool is_exact() const { return cohomology_bounds().exact; }

    std::string str() const {
        std::ostringstream os;
        os << "complex [" << lo() << "," << hi() << "] ranks";
        for (int i = lo(); i <= hi(); ++i) os << " " << rank(i);
        return os.str();
    }

private:
    void validate() const {
        const auto& w = R_->weights();
        for (int i = lo(); i <= hi(); ++i) {
            auto cols = diff_[i - lo_];
            if (cols.empty()) continue;
            if (cols.size() != rank(i))
                throw std::invalid_argument("degree " + std::to_string(i) +
                                            ": differential has wrong column count");
            for (size_t j = 0; j < cols.size(); ++j) {
                if (cols[j].rank() != rank(i + 1))
                    throw std::invalid_argument("degree " + std::to_string(i) +
                                                ": differential has wrong row count");
                for (size_t r = 0; r < cols[j].rank(); ++r) {
                    const Polynomial& e = cols[j].c[r];
                    if (e.is_zero()) continue;
                    auto d = e.homogeneous_degree(w);
                    if (!d || *d != twists(i)[j] - twists(i + 1)[r])
                        throw std::invalid_argument(
                            "degree " + std::to_string(i) + ": entry (" + std::to_string(r) + "," +
                            std::to_string(j) + ") is not homogeneous of the required degree");
                }
            }
        }
        for (int i = lo(); i + 1 <= hi(); ++i) {
            if (rank(i) == 0 || rank(i + 1) == 0 || rank(i + 2) == 0) continue;
            auto cols = diff(i);
            for (size_t j = 0; j < cols.size(); ++j) {
                VecPoly dd = apply_diff(i + 1, cols[j]);
                if (!dd.is_zero()) {
                    for (size_t r = 0; r < dd.rank(); ++r)
                        if (!dd.c[r].is_zero())
                            throw std::invalid_argument(
                                "d*d != 0 first failing at degree " + std::to_string(i) +
                                ", column " + std::to_string(j) + ", witness entry " +
                                dd.c[r].str(R_->names()));
                }
            }
        }
    }

    RingPtr R_;
    int lo_ = 0;
    std::vector<std::vector<long>> twists_;
    std::vector<std::vector<VecPoly>> diff_;
};

// Chain map: per-degree columns (image of each source basis vector); squares
// must commute exactly.
struct ComplexMap {
    RingPtr R;
    const FreeComplex* src = nullptr; // non-owning; maps are short-lived
    const FreeComplex* dst = nullptr;
    std::map<int, std::vector<VecPoly>> cols; // degree -> per-source-basis images

    static ComplexMap make(const FreeComplex& src, const FreeComplex& dst,
                           std::map<int, std::vector<VecPoly>> cols) {
        ComplexMap f;
        f.R = src.ring();
        f.src = &src;
        f.dst = &dst;
        f.cols = std::move(cols);
        f.validate();
        return f;
    }
    static ComplexMap identity(const FreeComplex& C) {
        std::map<int, std::vector<VecPoly>> cols;
        for (int i = C.lo(); i <= C.hi(); ++i) {
            std::vector<VecPoly> cs;
            for (size_t j = 0; j < C.rank(i); ++j) {
                VecPoly e(C.rank(i), C.ring()->nvars(), C.ring()->characteristic());
                e.c[j] = C.ring()->one();
                cs.push_back(std::move(e));
            }
            cols[i] = std::move(cs);
        }
        return make(C, C, std::move(cols));
    }
    static ComplexMap zero(const FreeComplex& src, const FreeComplex& dst) {
        std::map<int, std::vector<VecPoly>> cols;
        for (int i = src.lo(); i <= src.hi(); ++i) {
            std::vector<VecPoly> cs(src.rank(i),
                                    VecPoly(dst.rank(i), src.ring()->nvars(),
                                            src.ring()->characteristic()));
            cols[i] = std::move(cs);
        }
        return make(src, dst, std::move(cols));
    }

    std::vector<VecPoly> at(int i) const {
        auto it = cols.find(i);
        if (it != cols.end() && !it->second.empty()) return it->second;
        return std::vector<VecPoly>(src->rank(i),
                                    VecPoly(dst->rank(i), R->nvars(), R->characteristic()));
    }
    VecPoly apply(int i, const VecPoly& v) const {
        auto cs = at(i);
        VecPoly out(dst->rank(i), R->nvars(), R->characteristic());
        for (size_t j = 0; j < cs.size(); ++j)
            out = out.plus(cs[j].poly_multiplied(v.c[j], R->order()), R->order());
        return R->reduce(out);
    }

    void validate() const {
        for (int i = src->lo(); i <= src->hi(); ++i) {
            auto cs = at(i);
            if (cs.size() != src->rank(i))
                throw std::invalid_argument("chain map: wrong column count at degree " +
                                            std::to_string(i));
            for (size_t j = 0; j < cs.size(); ++j) {
                if (cs[j].rank() != dst->rank(i))
                    throw std::invalid_argument("chain map: wrong row count at degree " +
                                                std::to_string(i));
                // homogeneity: source twist preserved
                for (size_t r = 0; r < cs[j].rank(); ++r) {
                    const auto& e = cs[j].c[r];
                    if (e.is_zero()) continue;
                    auto d = e.homogeneous_degree(R->weights());
                    if (!d || *d != src->twists(i)[j] - dst->twists(i)[r])
                        throw std::invalid_argument("chain map: entry not homogeneous at degree " +
                                                    std::to_string(i));
                }
            }
            // commuting square: f(d_src v) = d_dst f(v) on basis vectors
            for (size_t j = 0; j < src->rank(i); ++j) {
                VecPoly e(src->rank(i), R->nvars(), R->characteristic());
                e.c[j] = R->one();
                VecPoly a = apply(i + 1, src->apply_diff(i, e));
                VecPoly b = dst->apply_diff(i, apply(i, e));
                if (!R->reduce(a.minus(b, R->order())).is_zero())
                    throw std::invalid_argument("chain map does not commute at degree " +
                                                std::to_string(i) + ", column " + std::to_string(j));
            }
        }
    }
};

// cone(f)^i = src^{i+1} (+) dst^i with d(c, d') = (-d c, f(c) + d d')
inline FreeComplex cone(const ComplexMap& f) {
    const FreeComplex& C = *f.src;
    const FreeComplex& D = *f.dst;
    RingPtr R = C.ring();
    uint32_t p = R->characteristic();
    size_t nv = R->nvars();
    int lo = std::min(C.lo() - 1, D.lo());
    int hi = std::max(C.hi() - 1, D.hi());
    std::vector<std::vector<long>> tw;
    std::vector<std::vector<VecPoly>> df;
    for (int i = lo; i <= hi; ++i) {
        std::vector<long> t = C.twists(i + 1);
        auto t2 = D.twists(i);
        t.insert(t.end(), t2.begin(), t2.end());
        tw.push_back(std::move(t));
    }
    for (int i = lo; i <= hi; ++i) {
        size_t src_c = C.rank(i + 1), src_d = D.rank(i);
        size_t tgt_c = C.rank(i + 2), tgt_d = D.rank(i + 1);
        std::vector<VecPoly> cols;
        auto dc = C.diff(i + 1);
        auto fc = f.at(i + 1);
        auto dd = D.diff(i);
        for (size_t j = 0; j < src_c; ++j) {
            VecPoly col(tgt_c + tgt_d, nv, p);
            for (size_t r = 0; r < tgt_c; ++r) col.c[r] = dc[j].c[r].scaled(Scalar(-1, p));
            for (size_t r = 0; r < tgt_d; ++r) col.c[tgt_c + r] = fc[j].c[r];
            cols.push_back(std::move(col));
        }
        for (size_t j = 0; j < src_d; ++j) {
            VecPoly col(tgt_c + tgt_d, nv, p);
            for (size_t r = 0; r < tgt_d; ++r) col.c[tgt_c + r] = dd[j].c[r];
            cols.push_back(std::move(col));
        }
        df.push_back(std::move(cols));
    }
    return FreeComplex::build(R, lo, std::move(tw), std::move(df));
}

// Totalization with Koszul signs: d(a (x) b) = da (x) b + (-1)^i a (x) db.
// Basis of degree n: (i, a, b) with a in C^i, b in D^{n-i}, ordered by i, a, b.
inline FreeComplex tensor_complexes(const FreeComplex& C, const FreeComplex& D) {
    RingPtr R = C.ring();
    if (!R->same_ring(*D.ring())) throw std::invalid_argument("tensor: base ring mismatch");
    uint32_t p = R->characteristic();
    size_t nv = R->nvars();
    int lo = C.lo() + D.lo(), hi = C.hi() + D.hi();

    auto index_of = [&](int n, int i, size_t a, size_t b) {
        // offset of (i, a, b) within degree-n basis
        size_t off = 0;
        for (int ii = std::max(C.lo(), n - D.hi()); ii < i; ++ii)
            off += C.rank(ii) * D.rank(n - ii);
        return off + a * D.rank(n - i) + b;
    };
    auto rank_of = [&](int n) {
        size_t r = 0;
        for (int i = C.lo(); i <= C.hi(); ++i) r += C.rank(i) * D.rank(n - i);
        return r;
    };

    std::vector<std::vector<long>> tw;
    std::vector<std::vector<VecPoly>> df;
    for (int n = lo; n <= hi; ++n) {
        std::vector<long> t;
        for (int i = C.lo(); i <= C.hi(); ++i)
            for (size_t a = 0; a < C.rank(i); ++a)
                for (size_t b = 0; b < D.rank(n - i); ++b)
                    t.push_back(C.twists(i)[a] + D.twists(n - i)[b]);
        tw.push_back(std::move(t));
    }
    for (int n = lo; n <= hi; ++n) {
        size_t tgt = rank_of(n + 1);
        std::vector<VecPoly> cols;
        for (int i = C.lo(); i <= C.hi(); ++i) {
            auto dc = C.diff(i);
            auto dd = D.diff(n - i);
            for (size_t a = 0; a < C.rank(i); ++a)
                for (size_t b = 0; b < D.rank(n - i); ++b) {
                    VecPoly col(tgt, nv, p);
                    if (C.rank(i + 1) > 0)
                        for (size_t a2 = 0; a2 < C.rank(i + 1); ++a2) {
                            const Polynomial& e = dc[a].c[a2];
                            if (e.is_zero()) continue;
                            col.c[index_of(n + 1, i + 1, a2, b)] =
                                col.c[index_of(n + 1, i + 1, a2, b)].plus(e, R->order());
                        }
                    if (D.rank(n - i + 1) > 0)
                        for (size_t b2 = 0; b2 < D.rank(n - i + 1); ++b2) {
                            Polynomial e = dd[b].c[b2];
                            if (e.is_zero()) continue;
                            if (i % 2 != 0) e = e.scaled(Scalar(-1, p));
                            col.c[index_of(n + 1, i, a, b2)] =
                                col.c[index_of(n + 1, i, a, b2)].plus(e, R->order());
                        }
                    cols.push_back(std::move(col));
                }
        }
        df.push_back(std::move(cols));
    }
    return FreeComplex::build(R, lo, std::move(tw), std::move(df));
}

// Hom(C, D)^n has basis (i, a, b): a^v (x) b with a in C^i, b in D^{i+n};
// d(f) = d_D f - (-1)^n f d_C.
inline FreeComplex hom_complexes(const FreeComplex& C, const FreeComplex& D) {
    RingPtr R = C.ring();
    if (!R->same_ring(*D.ring())) throw std::invalid_argument("hom: base ring mismatch");
    uint32_t p = R->characteristic();
    size_t nv = R->nvars();
    int lo = D.lo() - C.hi(), hi = D.hi() - C.lo();

    auto rank_of = [&](int n) {
        size_t r = 0;
        for (int i = C.lo(); i <= C.hi(); ++i) r += C.rank(i) * D.rank(i + n);
        return r;
    };
    auto index_of = [&](int n, int i, size_t a, size_t b) {
        size_t off = 0;
        for (int ii = C.lo(); ii < i; ++ii) off += C.rank(ii) * D.rank(ii + n);
        return off + a * D.rank(i + n) + b;
    };

    std::vector<std::vector<long>> tw;
    std::vector<std::vector<VecPoly>> df;
    for (int n = lo; n <= hi; ++n) {
        std::vector<long> t;
        for (int i = C.lo(); i <= C.hi(); ++i)
            for (size_t a = 0; a < C.rank(i); ++a)
                for (size_t b = 0; b < D.rank(i + n); ++b)
                    t.push_back(D.twists(i + n)[b] - C.twists(i)[a]);
        tw.push_back(std::move(t));
    }
    for (int n = lo; n <= hi; ++n) {
        size_t tgt = rank_of(n + 1);
        std::vector<VecPoly> cols;
        for (int i = C.lo(); i <= C.hi(); ++i) {
            auto dd = D.diff(i + n);
            for (size_t a = 0; a < C.rank(i); ++a)
                for (size_t b = 0; b < D.rank(i + n); ++b) {
                    VecPoly col(tgt, nv, p);
                    // d_D o f: (i, a, b2)
                    if (D.rank(i + n + 1) > 0)
                        for (size_t b2 = 0; b2 < D.rank(i + n + 1); ++b2) {
                            const Polynomial& e = dd[b].c[b2];
                            if (e.is_zero()) continue;
                            col.c[index_of(n + 1, i, a, b2)] =
                                col.c[index_of(n + 1, i, a, b2)].plus(e, R->order());
                        }
                    // -(-1)^n f o d_C: source basis a2 in C^{i-1} with d_C(a2) having an a-component
                    if (C.rank(i - 1) > 0) {
                        auto dc = C.diff(i - 1);
                        for (size_t a2 = 0; a2 < C.rank(i - 1); ++a2) {
                            Polynomial e = dc[a2].c[a];
                            if (e.is_zero()) continue;
                            if (n % 2 == 0) e = e.scaled(Scalar(-1, p));
                            col.c[index_of(n + 1, i - 1, a2, b)] =
                                col.c[index_of(n + 1, i - 1, a2, b)].plus(e, R->order());
                        }
                    }
                    cols.push_back(std::move(col));
                }
        }
        df.push_back(std::move(cols));
    }
    return FreeComplex::build(R, lo, std::move(tw), std::move(df));
}

// Free resolution of coker / of a submodule: iterated syzygies over the base.
// Returns columns G_1 -> G_0 -> ... ; gens[0] spans the target submodule.
struct FreeResolution {
    std::vector<std::vector<long>> twists;       // twists of G_j
    std::vector<std::vector<VecPoly>> maps;      // maps[j]: columns of G_{j+1} -> G_j
};

// resolves the submodule spanned by gens (in A^r with ambient twists) over the
// base; gens become G_0. Throws past max_steps (possible over quotient bases).
inline FreeResolution resolve_submodule(const BaseRing& R, const std::vector<VecPoly>& gens,
                                        const std::vector<long>& ambient_twists, size_t r,
                                        size_t max_steps = 64) {
    FreeResolution res;
    std::vector<long> tw;
    for (const auto& g : gens) {
        std::optional<long> deg;
        for (size_t j = 0; j < r; ++j) {
            if (g.c[j].is_zero()) continue;
            auto d = g.c[j].homogeneous_degree(R.weights());
            if (!d) throw std::invalid_argument("resolve_submodule: inhomogeneous generator");
            long full = *d + ambient_twists[j];
            if (deg && *deg != full)
                throw std::invalid_argument("resolve_submodule: inhomogeneous generator");
            deg = full;
        }
        tw.push_back(deg.value_or(0));
    }
    res.twists.push_back(tw);
    std::vector<VecPoly> current = gens;
    std::vector<long> cur_tw = tw;
    size_t cur_rank = r;
    std::vector<long> cur_ambient = ambient_twists;
    for (size_t step = 0; step < max_steps; ++step) {
        if (current.empty()) return res;
        auto aug = R.with_defining(current, cur_rank);
        ModuleGB gb = module_groebner(aug, cur_rank, R.order(), cur_ambient);
        std::vector<VecPoly> syz;
        for (const auto& s : gb.syzygies) {
            VecPoly v(current.size(), R.nvars(), R.characteristic());
            bool nonzero = false;
            for (size_t i = 0; i < current.size(); ++i) {
                v.c[i] = R.reduce(s.c[i]);
                if (!v.c[i].is_zero()) nonzero = true;
            }
            if (nonzero) syz.push_back(std::move(v));
        }
        if (syz.empty()) return res;
        std::vector<long> next_tw;
        for (const auto& s : syz) {
            std::optional<long> deg;
            for (size_t j = 0; j < s.rank(); ++j) {
                if (s.c[j].is_zero()) continue;
                auto d = s.c[j].homogeneous_degree(R.weights());
                long full = (d ? *d : 0) + cur_tw[j];
                if (!deg) deg = full;
            }
            next_tw.push_back(deg.value_or(0));
        }
        res.maps.push_back(syz);
        res.twists.push_back(next_tw);
        cur_ambient = cur_tw;
        cur_rank = current.size();
        cur_tw = next_tw;
        current = syz;
    }
    throw std::runtime_error("resolve_submodule: resolution did not terminate within bound");
}

} // namespace dgcm
