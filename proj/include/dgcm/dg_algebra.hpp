#pragma once

#include "free_complex.hpp"

namespace dgcm {

// Element of the DG-algebra: base-ring coefficients over the module basis.
using AlgElem = std::vector<Polynomial>;

// Finite semi-free graded-commutative DG-algebra over the base: Koszul complex
// of a sequence, a square-zero extension realized on a free resolution, or the
// base ring itself. Basis element 0 is always the unit in degree 0.
class DGAlgebra {
public:
    enum class Tag { Base, Koszul, SquareZero };

    struct BasisElem {
        int deg;    // cohomological, <= 0
        long twist; // internal
        std::string name;
    };

    static DGAlgebra base_ring(RingPtr R) {
        DGAlgebra A;
        A.R_ = std::move(R);
        A.tag_ = Tag::Base;
        A.basis_.push_back({0, 0, "1"});
        A.diff_.push_back(A.zero_elem());
        A.mult_ = {{A.unit_elem()}};
        A.gorenstein_ = true;
        A.finish();
        return A;
    }

    // K(A; f_1..f_s): exterior generators e_i with d(e_i) = f_i
    static DGAlgebra koszul(RingPtr R, std::vector<Polynomial> elems) {
        for (size_t i = 0; i < elems.size(); ++i) {
            Polynomial f = R->reduce(elems[i]);
            if (f.is_zero() || !f.is_homogeneous(R->weights()) ||
                !f.unit_part().is_zero())
                throw std::invalid_argument("koszul element " + std::to_string(i) +
                                            " must be homogeneous of positive degree");
            elems[i] = std::move(f);
        }
        DGAlgebra A;
        A.R_ = std::move(R);
        A.tag_ = Tag::Koszul;
        A.koszul_elems_ = elems;
        size_t s = elems.size();
        std::vector<long> fdeg;
        for (const auto& f : elems) fdeg.push_back(*f.homogeneous_degree(A.R_->weights()));

        // subsets ordered by size then mask: degree-major, deterministic
        std::vector<uint32_t> masks;
        for (size_t sz = 0; sz <= s; ++sz)
            for (uint32_t m = 0; m < (1u << s); ++m)
                if (static_cast<size_t>(__builtin_popcount(m)) == sz) masks.push_back(m);
        std::map<uint32_t, size_t> idx;
        for (size_t i = 0; i < masks.size(); ++i) {
            uint32_t m = masks[i];
            idx[m] = i;
            long tw = 0;
            std::string nm = m == 0 ? "1" : "e";
            for (size_t b = 0; b < s; ++b)
                if (m & (1u << b)) {
                    tw += fdeg[b];
                    nm += std::to_string(b + 1);
                }
            A.basis_.push_back({-__builtin_popcount(m), tw, nm});
        }
        // d(e_S) = sum_{t in S} (-1)^{pos(t,S)} f_t e_{S-t}
        for (uint32_t m : masks) {
            AlgElem d = A.zero_elem_n(masks.size());
            int pos = 0;
            for (size_t b = 0; b < s; ++b) {
                if (!(m & (1u << b))) continue;
                Scalar sign(pos % 2 == 0 ? 1 : -1, A.R_->characteristic());
                d[idx.at(m & ~(1u << b))] =
                    d[idx.at(m & ~(1u << b))].plus(elems[b].scaled(sign), A.R_->order());
                ++pos;
            }
            A.diff_.push_back(std::move(d));
        }
        // e_S * e_T = shuffle sign * e_{S u T} when disjoint
        for (uint32_t m1 : masks) {
            std::vector<AlgElem> row;
            for (uint32_t m2 : masks) {
                AlgElem prod = A.zero_elem_n(masks.size());
                if ((m1 & m2) == 0) {
                    int inv = 0;
                    for (size_t b1 = 0; b1 < s; ++b1)
                        if (m1 & (1u << b1))
                            for (size_t b2 = 0; b2 < s; ++b2)
                                if ((m2 & (1u << b2)) && b2 < b1) ++inv;
                    prod[idx.at(m1 | m2)] =
                        Polynomial::constant(Scalar(inv % 2 == 0 ? 1 : -1, A.R_->characteristic()),
                                             A.R_->nvars());
                }
                row.push_back(std::move(prod));
            }
            A.mult_.push_back(std::move(row));
        }
        // Koszul over a polynomial base, or over a zero-dimensional complete
        // intersection, is a Gorenstein presentation
        A.gorenstein_ = !A.R_->has_quotient() ||
                        (A.R_->defining().size() == A.R_->nvars());
        A.finish();
        return A;
    }

    // A (+) M[j] with zero differential onto the base, realized on a free
    // resolution of M; products of resolution generators vanish.
    static DGAlgebra square_zero(RingPtr R, const PresentedModule& M, int j) {
        if (j <= 0) throw std::invalid_argument("square-zero shift must be positive");
        if (M.rank() == 0) return base_ring(std::move(R));
        FreeResolution res = resolve_submodule(*R, M.relations(), M.twists(), M.rank());
        DGAlgebra A;
        A.R_ = R;
        A.tag_ = Tag::SquareZero;
        A.sqzero_shift_ = j;
        A.basis_.push_back({0, 0, "1"});
        // resolution layer l sits in cohomological degree -j - l; layer 0 is
        // the ambient free module of M
        std::vector<std::vector<size_t>> layer_index;
        {
            std::vector<size_t> l0;
            for (size_t t = 0; t < M.rank(); ++t) {
                l0.push_back(A.basis_.size());
                A.basis_.push_back({-j, M.twists()[t], "u" + std::to_string(t)});
            }
            layer_index.push_back(std::move(l0));
        }
        std::vector<std::vector<long>> layer_twists;
        layer_twists.push_back(M.twists());
        std::vector<std::vector<VecPoly>> layer_maps;
        if (!M.relations().empty()) {
            layer_maps.push_back(M.relations());
            layer_twists.push_back(res.twists[0]);
            for (const auto& m : res.maps) layer_maps.push_back(m);
            for (size_t l = 0; l < res.maps.size(); ++l) layer_twists.push_back(res.twists[l + 1]);
        }
        for (size_t l = 1; l < layer_twists.size(); ++l) {
            std::vector<size_t> li;
            for (size_t t = 0; t < layer_twists[l].size(); ++t) {
                li.push_back(A.basis_.size());
                A.basis_.push_back({-j - static_cast<int>(l), layer_twists[l][t],
                                    "u" + std::to_string(l) + "_" + std::to_string(t)});
            }
            layer_index.push_back(std::move(li));
        }
        size_t n = A.basis_.size();
        A.diff_.assign(n, A.zero_elem_n(n));
        for (size_t l = 0; l < layer_maps.size(); ++l) {
            const auto& cols = layer_maps[l]; // layer l+1 -> layer l
            for (size_t t = 0; t < cols.size(); ++t) {
                AlgElem d = A.zero_elem_n(n);
                for (size_t r = 0; r < cols[t].rank(); ++r)
                    d[layer_index[l][r]] = cols[t].c[r];
                A.diff_[layer_index[l + 1][t]] = std::move(d);
            }
        }
        for (size_t i = 0; i < n; ++i) {
            std::vector<AlgElem> row;
            for (size_t k = 0; k < n; ++k) {
                if (i == 0) {
                    AlgElem e = A.zero_elem_n(n);
                    e[k] = A.R_->one();
                    row.push_back(std::move(e));
                } else if (k == 0) {
                    AlgElem e = A.zero_elem_n(n);
                    e[i] = A.R_->one();
                    row.push_back(std::move(e));
                } else {
                    row.push_back(A.zero_elem_n(n)); // square-zero products
                }
            }
            A.mult_.push_back(std::move(row));
        }
        A.gorenstein_ = false;
        A.finish();
        return A;
    }

    const RingPtr& ring() const { return R_; }
    Tag tag() const { return tag_; }
    bool gorenstein_presented() const { return gorenstein_; }
    const std::vector<Polynomial>& koszul_elements() const { return koszul_elems_; }
    size_t size() const { return basis_.size(); }
    const std::vector<BasisElem>& basis() const { return basis_; }
    const AlgElem& diff_of(size_t i) const { return diff_[i]; }
    const AlgElem& product(size_t i, size_t j) const { return mult_[i][j]; }

    AlgElem zero_elem() const { return zero_elem_n(basis_.size()); }
    AlgElem unit_elem() const {
        AlgElem e = zero_elem();
        e[0] = R_->one();
        return e;
    }
    AlgElem scalar_elem(const Polynomial& q) const {
        AlgElem e = zero_elem();
        e[0] = R_->reduce(q);
        return e;
    }

    AlgElem add(const AlgElem& a, const AlgElem& b) const {
        AlgElem r = a;
        for (size_t i = 0; i < r.size(); ++i) r[i] = r[i].plus(b[i], R_->order());
        return r;
    }
    AlgElem scale(const AlgElem& a, const Polynomial& q) const {
        AlgElem r = zero_elem();
        for (size_t i = 0; i < r.size(); ++i) r[i] = R_->mul(a[i], q);
        return r;
    }
    AlgElem mul(const AlgElem& a, const AlgElem& b) const {
        AlgElem r = zero_elem();
        for (size_t i = 0; i < a.size(); ++i) {
            if (a[i].is_zero()) continue;
            for (size_t j = 0; j < b.size(); ++j) {
                if (b[j].is_zero()) continue;
                Polynomial q = R_->mul(a[i], b[j]);
                const AlgElem& p = mult_[i][j];
                for (size_t k = 0; k < r.size(); ++k)
                    if (!p[k].is_zero()) r[k] = r[k].plus(R_->mul(p[k], q), R_->order());
            }
        }
        return r;
    }
    AlgElem d(const AlgElem& a) const {
        // d(sum q_i b_i) = sum q_i d(b_i); coefficients live in degree 0
        AlgElem r = zero_elem();
        for (size_t i = 0; i < a.size(); ++i) {
            if (a[i].is_zero()) continue;
            for (size_t k = 0; k < r.size(); ++k)
                if (!diff_[i][k].is_zero())
                    r[k] = r[k].plus(R_->mul(diff_[i][k], a[i]), R_->order());
        }
        return r;
    }
    bool elem_is_zero(const AlgElem& a) const {
        for (const auto& q : a)
            if (!q.is_zero()) return false;
        return true;
    }

    // underlying bounded complex; basis index map: per degree, list of algebra
    // basis indices (insertion order)
    const FreeComplex& underlying() const { return underlying_; }
    const std::vector<std::vector<size_t>>& degree_basis() const { return degree_basis_; }
    int lo_deg() const { return underlying_.lo(); }
    size_t span() const { return static_cast<size_t>(-underlying_.lo()); }
    size_t position_in_degree(size_t basis_index) const { return pos_in_degree_[basis_index]; }

    // exact checks of the defining laws on all basis pairs/triples
    void verify_laws() const {
        for (size_t i = 0; i < size(); ++i) {
            if (basis_[i].deg > 0) throw std::logic_error("algebra basis in positive degree");
            // unit
            if (!elems_equal(mult_[0][i], basis_elem(i)) || !elems_equal(mult_[i][0], basis_elem(i)))
                throw std::logic_error("unit law fails");
        }
        for (size_t i = 0; i < size(); ++i)
            for (size_t j = 0; j < size(); ++j) {
                // strict graded commutativity
                int s = basis_[i].deg * basis_[j].deg;
                AlgElem lhs = mult_[i][j];
                AlgElem rhs = mult_[j][i];
                if (s % 2 != 0) rhs = scale(rhs, Polynomial::constant(Scalar(-1, R_->characteristic()), R_->nvars()));
                if (!elems_equal(lhs, rhs)) throw std::logic_error("graded commutativity fails");
                if (i == j && basis_[i].deg % 2 != 0 && !elem_is_zero(mult_[i][i]))
                    throw std::logic_error("odd square is nonzero");
                // Leibniz: d(b_i b_j) = d(b_i) b_j + (-1)^{|b_i|} b_i d(b_j)
                AlgElem left = d(mult_[i][j]);
                AlgElem right = mul(diff_[i], basis_elem(j));
                AlgElem second = mul(basis_elem(i), diff_[j]);
                if (basis_[i].deg % 2 != 0)
                    second = scale(second, Polynomial::constant(Scalar(-1, R_->characteristic()), R_->nvars()));
                right = add(right, second);
                if (!elems_equal(left, right)) throw std::logic_error("Leibniz fails on basis pair");
            }
        for (size_t i = 0; i < size(); ++i)
            for (size_t j = 0; j < size(); ++j)
                for (size_t k = 0; k < size(); ++k) {
                    AlgElem a = mul(mult_[i][j], basis_elem(k));
                    AlgElem b = mul(basis_elem(i), mult_[j][k]);
                    if (!elems_equal(a, b)) throw std::logic_error("associativity fails");
                }
    }

    AlgElem basis_elem(size_t i) const {
        AlgElem e = zero_elem();
        e[i] = R_->one();
        return e;
    }
    bool elems_equal(const AlgElem& a, const AlgElem& b) const {
        for (size_t i = 0; i < a.size(); ++i)
            if (!a[i].equals(b[i])) return false;
        return true;
    }

private:
    AlgElem zero_elem_n(size_t n) const { return AlgElem(n, Polynomial::zero(R_->nvars(), R_->characteristic())); }

    void finish() {
        int lo = 0;
        for (const auto& b : basis_) lo = std::min(lo, b.deg);
        degree_basis_.assign(-lo + 1, {});
        pos_in_degree_.assign(basis_.size(), 0);
        for (size_t i = 0; i < basis_.size(); ++i) {
            auto& bucket = degree_basis_[basis_[i].deg - lo];
            pos_in_degree_[i] = bucket.size();
            bucket.push_back(i);
        }
        std::vector<std::vector<long>> tw;
        std::vector<std::vector<VecPoly>> df;
        for (int d = lo; d <= 0; ++d) {
            std::vector<long> t;
            for (size_t i : degree_basis_[d - lo]) t.push_back(basis_[i].twist);
            tw.push_back(std::move(t));
        }
        for (int d = lo; d <= 0; ++d) {
            const auto& src = degree_basis_[d - lo];
            std::vector<size_t> dst;
            if (d + 1 <= 0) dst = degree_basis_[d + 1 - lo];
            std::vector<VecPoly> cols;
            for (size_t i : src) {
                VecPoly col(dst.size(), R_->nvars(), R_->characteristic());
                for (size_t r = 0; r < dst.size(); ++r) col.c[r] = diff_[i][dst[r]];
                cols.push_back(std::move(col));
            }
            df.push_back(std::move(cols));
        }
        underlying_ = FreeComplex::build(R_, lo, std::move(tw), std::move(df));
    }

    RingPtr R_;
    Tag tag_ = Tag::Base;
    bool gorenstein_ = false;
    std::vector<Polynomial> koszul_elems_;
    int sqzero_shift_ = 0;
    std::vector<BasisElem> basis_;
    std::vector<AlgElem> diff_;
    std::vector<std::vector<AlgElem>> mult_;
    FreeComplex underlying_;
    std::vector<std::vector<size_t>> degree_basis_;
    std::vector<size_t> pos_in_degree_;
};

using AlgebraPtr = std::shared_ptr<const DGAlgebra>;

struct H0Data {
    PresentedModule h0;          // H^0(R) as a cyclic-quotient presentation over the base
    Ideal defining0;             // ideal cutting H^0(R) out of the base
    PresentedModule residue;     // k = base/m
};

inline H0Data h0_presentation(const DGAlgebra& A) {
    RingPtr R = A.ring();
    std::vector<Polynomial> gens;
    for (size_t i = 0; i < A.size(); ++i) {
        if (A.basis()[i].deg != -1) continue;
        const Polynomial& q = A.diff_of(i)[0];
        if (!q.is_zero()) gens.push_back(q);
    }
    Ideal I0 = Ideal::make(*R, gens);
    return {PresentedModule::quotient_ring(R, I0), I0, PresentedModule::residue_field(R)};
}

} // namespace dgcm
