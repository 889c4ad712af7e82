#pragma once

#include "base_ring.hpp"

#include <memory>

namespace dgcm {

using RingPtr = std::shared_ptr<const BaseRing>;

// Dense elimination over the coefficient field; used for residue-field ranks.
struct DenseMatrix {
    size_t rows = 0, cols = 0;
    std::vector<Scalar> a; // row-major

    DenseMatrix(size_t r, size_t c, uint32_t p) : rows(r), cols(c), a(r * c, Scalar::zero(p)) {}
    Scalar& at(size_t i, size_t j) { return a[i * cols + j]; }
    const Scalar& at(size_t i, size_t j) const { return a[i * cols + j]; }

    size_t rank() const {
        DenseMatrix m = *this;
        size_t rk = 0;
        for (size_t c = 0; c < cols && rk < rows; ++c) {
            size_t piv = rk;
            while (piv < rows && m.at(piv, c).is_zero()) ++piv;
            if (piv == rows) continue;
            for (size_t j = 0; j < cols; ++j) std::swap(m.at(piv, j), m.at(rk, j));
            Scalar inv = Scalar::one(m.at(rk, c).characteristic()) / m.at(rk, c);
            for (size_t j = 0; j < cols; ++j) m.at(rk, j) *= inv;
            for (size_t i = 0; i < rows; ++i) {
                if (i == rk || m.at(i, c).is_zero()) continue;
                Scalar f = m.at(i, c);
                for (size_t j = 0; j < cols; ++j) m.at(i, j) -= f * m.at(rk, j);
            }
            ++rk;
        }
        return rk;
    }
};

// Finitely generated graded module over the base, given by ambient rank,
// generator twists and a finite relation matrix (columns). Zero module is
// canonically rank 0.
class PresentedModule {
public:
    static PresentedModule zero(RingPtr R) {
        PresentedModule M;
        M.R_ = std::move(R);
        return M;
    }
    static PresentedModule free_module(RingPtr R, std::vector<long> twists) {
        PresentedModule M;
        M.R_ = std::move(R);
        M.twists_ = std::move(twists);
        return M;
    }
    static PresentedModule cokernel(RingPtr R, std::vector<long> twists, std::vector<VecPoly> rels) {
        PresentedModule M;
        M.R_ = std::move(R);
        M.twists_ = std::move(twists);
        for (size_t k = 0; k < rels.size(); ++k) {
            VecPoly v = M.R_->reduce(rels[k]);
            if (v.is_zero()) continue;
            if (!M.column_degree(v).has_value())
                throw std::invalid_argument("relation column " + std::to_string(k) +
                                            " is not homogeneous for the given twists");
            M.rels_.push_back(std::move(v));
        }
        return M;
    }
    // cyclic quotient BaseRing/I
    static PresentedModule quotient_ring(RingPtr R, const Ideal& I) {
        std::vector<VecPoly> rels;
        for (const auto& g : I.gens) {
            VecPoly v(1, R->nvars(), R->characteristic());
            v.c[0] = g;
            rels.push_back(std::move(v));
        }
        return cokernel(std::move(R), {0}, std::move(rels));
    }
    static PresentedModule residue_field(RingPtr R) {
        std::vector<Polynomial> vars;
        for (size_t i = 0; i < R->nvars(); ++i) vars.push_back(R->var(i));
        return quotient_ring(R, Ideal::make(*R, vars));
    }

    const RingPtr& ring() const { return R_; }
    size_t rank() const { return twists_.size(); }
    const std::vector<long>& twists() const { return twists_; }
    const std::vector<VecPoly>& relations() const { return rels_; }

    std::optional<long> column_degree(const VecPoly& v) const {
        std::optional<long> deg;
        for (size_t j = 0; j < v.c.size(); ++j) {
            if (v.c[j].is_zero()) continue;
            auto d = v.c[j].homogeneous_degree(R_->weights());
            if (!d) return std::nullopt;
            long full = *d + twists_[j];
            if (deg && *deg != full) return std::nullopt;
            deg = full;
        }
        return deg ? deg : std::optional<long>(0);
    }

    const ModuleGB& rel_gb() const {
        if (!relgb_) {
            auto gens = R_->with_defining(rels_, rank());
            relgb_ = std::make_shared<ModuleGB>(
                module_groebner(gens, rank(), R_->order(), twists_));
        }
        return *relgb_;
    }

    bool element_is_zero(const VecPoly& v) const {
        if (rank() == 0) return true;
        return module_nf(v, rel_gb(), R_->order()).is_zero();
    }
    VecPoly normal_form(const VecPoly& v) const {
        return module_nf(v, rel_gb(), R_->order());
    }
    bool is_zero_module() const {
        if (rank() == 0) return true;
        for (size_t j = 0; j < rank(); ++j) {
            VecPoly e(rank(), R_->nvars(), R_->characteristic());
            e.c[j] = R_->one();
            if (!element_is_zero(e)) return false;
        }
        return true;
    }

    // dimension of the internal-degree-s piece over the coefficient field
    long graded_dim(long s) const {
        if (rank() == 0) return 0;
        const ModuleGB& gb = rel_gb();
        const auto& ord = R_->order();
        long total = 0;
        for (size_t j = 0; j < rank(); ++j) {
            long d = s - twists_[j];
            if (d < 0) continue;
            for (const auto& m : R_->monomials_of_weighted_degree(d)) {
                bool standard = true;
                for (const auto& g : gb.elems) {
                    auto lt = leading_term(g, ord);
                    if (lt->pos == j && lt->m.divides(m)) { standard = false; break; }
                }
                if (standard) ++total;
            }
        }
        return total;
    }
    std::vector<long> graded_dims(long lo, long hi) const {
        std::vector<long> out;
        for (long s = lo; s <= hi; ++s) out.push_back(graded_dim(s));
        return out;
    }

    // generators of M/mM: residue classes of ambient basis vectors; relations
    // contribute only their scalar entries
    size_t minimal_generator_count() const { return rank() - scalar_rel_rank(); }
    // ambient indices whose classes form a basis of M/mM
    std::vector<size_t> minimal_generator_indices() const {
        uint32_t p = R_->characteristic();
        size_t r = rank();
        std::vector<VecPoly> scal = scalar_relations();
        std::vector<std::vector<Scalar>> cols;
        for (const auto& s : scal) {
            std::vector<Scalar> col;
            for (size_t i = 0; i < r; ++i) col.push_back(s.c[i].unit_part());
            cols.push_back(std::move(col));
        }
        auto rank_of = [&](const std::vector<std::vector<Scalar>>& cs) {
            DenseMatrix m(r, cs.size(), p);
            for (size_t k = 0; k < cs.size(); ++k)
                for (size_t i = 0; i < r; ++i) m.at(i, k) = cs[k][i];
            return m.rank();
        };
        size_t cur = rank_of(cols);
        std::vector<size_t> out;
        for (size_t j = 0; j < r; ++j) {
            std::vector<Scalar> e(r, Scalar::zero(p));
            e[j] = Scalar::one(p);
            cols.push_back(e);
            if (rank_of(cols) > cur) {
                ++cur;
                out.push_back(j);
            } else {
                cols.pop_back();
            }
        }
        return out;
    }

    std::string str() const {
        std::ostringstream os;
        os << "coker(rank " << rank() << ", twists [";
        for (size_t i = 0; i < twists_.size(); ++i) os << (i ? "," : "") << twists_[i];
        os << "], rels";
        for (const auto& c : rels_) {
            os << " [";
            for (size_t i = 0; i < c.c.size(); ++i)
                os << (i ? ", " : "") << c.c[i].str(R_->names());
            os << "]";
        }
        os << ")";
        return os.str();
    }

private:
    std::vector<VecPoly> scalar_relations() const {
        std::vector<VecPoly> out;
        for (const auto& c : rels_) {
            bool any = false;
            for (const auto& f : c.c)
                if (!f.unit_part().is_zero()) { any = true; break; }
            if (any) out.push_back(c);
        }
        return out;
    }
    size_t scalar_rel_rank() const {
        std::vector<VecPoly> scal = scalar_relations();
        DenseMatrix m(rank(), scal.size(), R_->characteristic());
        for (size_t k = 0; k < scal.size(); ++k)
            for (size_t i = 0; i < rank(); ++i) m.at(i, k) = scal[k].c[i].unit_part();
        return m.rank();
    }

    RingPtr R_;
    std::vector<long> twists_;
    std::vector<VecPoly> rels_;
    mutable std::shared_ptr<ModuleGB> relgb_;
};

// Generators of { v : M v = 0 over the base ring } for the map with the given
// columns; quotient bases fold their defining ideal into the target.
inline std::vector<VecPoly> kernel_generators(const BaseRing& R, const std::vector<VecPoly>& cols,
                                              size_t target_rank) {
    size_t n = cols.size();
    auto aug = R.with_defining(cols, target_rank);
    ModuleGB gb = module_groebner(aug, target_rank, R.order());
    std::vector<VecPoly> out;
    for (const auto& s : gb.syzygies) {
        VecPoly v(n, R.nvars(), R.characteristic());
        for (size_t i = 0; i < n; ++i) v.c[i] = R.reduce(s.c[i]);
        if (!v.is_zero()) out.push_back(std::move(v));
    }
    return out;
}

// Expresses v in the span of gens over the base (mod defining ideal); returns
// coefficients for the gens block only.
inline std::optional<VecPoly> lift_through(const BaseRing& R, const VecPoly& v,
                                           const std::vector<VecPoly>& gens, size_t rank) {
    auto aug = R.with_defining(gens, rank);
    ModuleGB gb = module_groebner(aug, rank, R.order());
    auto cof = module_lift(v, gb, aug, R.order());
    if (!cof) return std::nullopt;
    VecPoly out(gens.size(), R.nvars(), R.characteristic());
    for (size_t i = 0; i < gens.size(); ++i) out.c[i] = R.reduce(cof->c[i]);
    return out;
}

struct Subquotient {
    PresentedModule module;
    std::vector<VecPoly> generators; // representatives in the ambient free module
};

// cycles/boundaries live in A^r with the given ambient twists; boundaries must
// lie in the cycle span (error names the first offender otherwise).
inline Subquotient subquotient_presentation(RingPtr R, const std::vector<long>& ambient_twists,
                                            const std::vector<VecPoly>& cycles,
                                            const std::vector<VecPoly>& boundaries) {
    size_t r = ambient_twists.size();
    std::vector<long> gen_twists;
    std::vector<VecPoly> cyc;
    for (const auto& z : cycles) {
        VecPoly v = R->reduce(z);
        if (v.is_zero()) continue;
        std::optional<long> deg;
        for (size_t j = 0; j < r; ++j) {
            if (v.c[j].is_zero()) continue;
            auto d = v.c[j].homogeneous_degree(R->weights());
            if (!d) throw std::invalid_argument("cycle generator is not homogeneous");
            long full = *d + ambient_twists[j];
            if (deg && *deg != full) throw std::invalid_argument("cycle generator is not homogeneous");
            deg = full;
        }
        gen_twists.push_back(deg.value_or(0));
        cyc.push_back(std::move(v));
    }
    // relations: lifts of boundaries + syzygies among the cycle generators
    auto aug = R->with_defining(cyc, r);
    ModuleGB gb = module_groebner(aug, r, R->order());
    std::vector<VecPoly> rels;
    for (size_t b = 0; b < boundaries.size(); ++b) {
        VecPoly v = R->reduce(boundaries[b]);
        if (v.is_zero()) continue;
        auto cof = module_lift(v, gb, aug, R->order());
        if (!cof)
            throw std::invalid_argument("boundary " + std::to_string(b) +
                                        " lies outside the cycle span");
        VecPoly rel(cyc.size(), R->nvars(), R->characteristic());
        for (size_t i = 0; i < cyc.size(); ++i) rel.c[i] = R->reduce(cof->c[i]);
        if (!rel.is_zero()) rels.push_back(std::move(rel));
    }
    for (const auto& s : gb.syzygies) {
        VecPoly rel(cyc.size(), R->nvars(), R->characteristic());
        for (size_t i = 0; i < cyc.size(); ++i) rel.c[i] = R->reduce(s.c[i]);
        if (!rel.is_zero()) rels.push_back(std::move(rel));
    }
    Subquotient out{PresentedModule::cokernel(R, gen_twists, rels), cyc};
    return out;
}

// {a : a*f in span(gens)} as an ideal; f and gens live in A^rank.
inline Ideal submodule_quotient(const BaseRing& R, const VecPoly& f,
                                const std::vector<VecPoly>& gens, size_t rank) {
    std::vector<VecPoly> cols;
    cols.push_back(f);
    for (const auto& g : gens) cols.push_back(g);
    auto ker = kernel_generators(R, cols, rank);
    std::vector<Polynomial> qgens;
    for (const auto& v : ker)
        if (!v.c[0].is_zero()) qgens.push_back(v.c[0]);
    return Ideal::make(R, qgens);
}

inline Ideal ideal_intersection(const BaseRing& R, const Ideal& I, const Ideal& J) {
    // first coordinates of syzygies of the columns (1,1), (i,0), (0,j)
    size_t n = R.nvars();
    uint32_t p = R.characteristic();
    std::vector<VecPoly> cols;
    VecPoly diag(2, n, p);
    diag.c[0] = R.one();
    diag.c[1] = R.one();
    cols.push_back(diag);
    for (const auto& g : I.gens) {
        VecPoly v(2, n, p);
        v.c[0] = g;
        cols.push_back(std::move(v));
    }
    for (const auto& g : J.gens) {
        VecPoly v(2, n, p);
        v.c[1] = g;
        cols.push_back(std::move(v));
    }
    auto ker = kernel_generators(R, cols, 2);
    std::vector<Polynomial> gens;
    for (const auto& v : ker)
        if (!v.c[0].is_zero()) gens.push_back(v.c[0]);
    return Ideal::make(R, gens);
}

// Full annihilator via iterated quotients against the generators.
inline Ideal annihilator(const PresentedModule& M) {
    const BaseRing& R = *M.ring();
    if (M.rank() == 0) return Ideal::make(R, {R.one()});
    std::optional<Ideal> acc;
    for (size_t j = 0; j < M.rank(); ++j) {
        VecPoly e(M.rank(), R.nvars(), R.characteristic());
        e.c[j] = R.one();
        Ideal q = submodule_quotient(R, e, M.relations(), M.rank());
        if (!acc)
            acc = q;
        else
            acc = ideal_intersection(R, *acc, q);
    }
    return *acc;
}

inline bool ideals_equal(const BaseRing& R, const Ideal& I, const Ideal& J) {
    auto gi = groebner_basis(R, I.gens);
    auto gj = groebner_basis(R, J.gens);
    for (const auto& g : I.gens)
        if (!normal_form(R, g, gj).is_zero()) return false;
    for (const auto& g : J.gens)
        if (!normal_form(R, g, gi).is_zero()) return false;
    return true;
}

// Gamma_I(M): stabilizing union of (0 : I^t), presented as a subquotient.
inline Subquotient torsion_saturation(const PresentedModule& M, const Ideal& I) {
    const BaseRing& R = *M.ring();
    size_t r = M.rank();
    uint32_t p = R.characteristic();
    size_t n = R.nvars();
    if (r == 0) return {PresentedModule::zero(M.ring()), {}};

    // gens of {v in F : f*v in span(sub + rels)} for every f in I
    auto colon_into = [&](const std::vector<VecPoly>& sub) {
        std::vector<VecPoly> current; // intersection over the ideal generators
        bool first = true;
        for (const auto& f : I.gens) {
            std::vector<VecPoly> cols;
            for (size_t j = 0; j < r; ++j) {
                VecPoly v(r, n, p);
                v.c[j] = f;
                cols.push_back(std::move(v));
            }
            size_t nf = cols.size();
            for (const auto& s : sub) cols.push_back(s);
            for (const auto& s : M.relations()) cols.push_back(s);
            auto ker = kernel_generators(R, cols, r);
            std::vector<VecPoly> sol;
            for (const auto& k : ker) {
                VecPoly v(r, n, p);
                bool nonzero = false;
                for (size_t j = 0; j < nf; ++j)
                    if (!k.c[j].is_zero()) nonzero = true;
                if (!nonzero) continue;
                for (size_t j = 0; j < r; ++j) v.c[j] = k.c[j];
                sol.push_back(std::move(v));
            }
            if (first) {
                current = sol;
                first = false;
            } else {
                // submodule intersection via syzygies of [U | -V]
                std::vector<VecPoly> cols2;
                for (const auto& u : current) cols2.push_back(u);
                for (const auto& v : sol) cols2.push_back(v.scaled(Scalar(-1, p)));
                auto ker2 = kernel_generators(R, cols2, r);
                std::vector<VecPoly> inter;
                for (const auto& k : ker2) {
                    VecPoly x(r, n, p);
                    for (size_t t = 0; t < current.size(); ++t)
                        x = x.plus(current[t].poly_multiplied(k.c[t], R.order()), R.order());
                    x = R.reduce(x);
                    if (!x.is_zero()) inter.push_back(std::move(x));
                }
                current = inter;
            }
        }
        if (I.gens.empty()) {
            // Gamma over the zero ideal is everything
            for (size_t j = 0; j < r; ++j) {
                VecPoly e(r, n, p);
                e.c[j] = R.one();
                current.push_back(std::move(e));
            }
        }
        return current;
    };

    auto span_gb = [&](const std::vector<VecPoly>& sub) {
        std::vector<VecPoly> cols = sub;
        for (const auto& s : M.relations()) cols.push_back(s);
        return module_groebner(R.with_defining(cols, r), r, R.order());
    };
    auto contained = [&](const std::vector<VecPoly>& a, const ModuleGB& bgb) {
        for (const auto& v : a)
            if (!module_nf(v, bgb, R.order()).is_zero()) return false;
        return true;
    };

    std::vector<VecPoly> prev; // (0 : I^0) = 0
    while (true) {
        std::vector<VecPoly> next = colon_into(prev);
        ModuleGB prev_gb = span_gb(prev);
        if (contained(next, prev_gb)) break;
        prev = std::move(next);
    }
    std::vector<VecPoly> cycles = prev;
    std::vector<VecPoly> bound = M.relations();
    for (const auto& s : M.relations()) cycles.push_back(s);
    return subquotient_presentation(M.ring(), M.twists(), cycles, bound);
}

} // namespace dgcm
