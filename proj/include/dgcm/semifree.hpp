#pragma once

#include "dg_module.hpp"

#include <limits>

namespace dgcm {

// Semi-free DG-module: free R-generators with a triangular differential.
// Built by the killing-cycles procedure; carries its certificate data.
class SemifreeModule {
public:
    struct Gen {
        int deg;
        long twist;
    };

    AlgebraPtr A;
    std::vector<Gen> gens;
    // d(gen t) = sum over (s, r): r * gen_s
    std::vector<std::vector<std::pair<size_t, AlgElem>>> dcoef;
    // chain map into the resolved DG-module (empty for presentation targets)
    std::vector<MElem> eps;

    int trusted_min = 0;  // cohomology certified for degrees >= trusted_min
    bool complete = false; // quasi-isomorphism verified in every degree
    bool minimal = false;
    std::vector<std::string> ladder; // construction log for certificates

    size_t gen_count_at_or_below(int deg) const {
        size_t n = 0;
        for (const auto& g : gens)
            if (g.deg <= deg) ++n;
        return n;
    }
    std::optional<int> lowest_gen_degree() const {
        std::optional<int> d;
        for (const auto& g : gens) d = d ? std::min(*d, g.deg) : g.deg;
        return d;
    }
    std::optional<int> highest_gen_degree() const {
        std::optional<int> d;
        for (const auto& g : gens) d = d ? std::max(*d, g.deg) : g.deg;
        return d;
    }

    // materialize as a DGModule: basis pairs (gen t, algebra basis a)
    DGModule to_module(bool verify_now = false) const {
        const DGAlgebra& R = *A;
        uint32_t p = R.ring()->characteristic();
        size_t na = R.size();
        size_t n = gens.size() * na;
        auto index = [&](size_t t, size_t a) { return t * na + a; };

        std::vector<DGModule::BasisElem> basis;
        for (size_t t = 0; t < gens.size(); ++t)
            for (size_t a = 0; a < na; ++a)
                basis.push_back({gens[t].deg + R.basis()[a].deg,
                                 gens[t].twist + R.basis()[a].twist,
                                 "g" + std::to_string(t) + "." + R.basis()[a].name});

        std::vector<MElem> diff(n, MElem(n, Polynomial::zero(R.ring()->nvars(), p)));
        for (size_t t = 0; t < gens.size(); ++t)
            for (size_t a = 0; a < na; ++a) {
                MElem& d = diff[index(t, a)];
                // d(b_a) gen_t
                const AlgElem& da = R.diff_of(a);
                for (size_t a2 = 0; a2 < na; ++a2)
                    if (!da[a2].is_zero())
                        d[index(t, a2)] = d[index(t, a2)].plus(da[a2], R.ring()->order());
                // (-1)^{|a|} b_a d(gen_t)
                bool odd = R.basis()[a].deg % 2 != 0;
                for (const auto& [s, rho] : dcoef[t]) {
                    AlgElem prod = R.mul(R.basis_elem(a), rho);
                    for (size_t e = 0; e < na; ++e) {
                        if (prod[e].is_zero()) continue;
                        Polynomial q = odd ? prod[e].scaled(Scalar(-1, p)) : prod[e];
                        d[index(s, e)] = d[index(s, e)].plus(q, R.ring()->order());
                    }
                }
            }

        std::vector<std::vector<MElem>> action;
        for (size_t r = 0; r < na; ++r) {
            std::vector<MElem> row(n, MElem(n, Polynomial::zero(R.ring()->nvars(), p)));
            for (size_t t = 0; t < gens.size(); ++t)
                for (size_t a = 0; a < na; ++a) {
                    const AlgElem& prod = R.product(r, a);
                    for (size_t e = 0; e < na; ++e)
                        if (!prod[e].is_zero()) row[index(t, a)][index(t, e)] = prod[e];
                }
            action.push_back(std::move(row));
        }
        std::optional<int> trusted = complete ? std::optional<int>() : std::optional<int>(trusted_min);
        return DGModule::from_parts(A, std::move(basis), std::move(diff), std::move(action), trusted,
                                    verify_now);
    }

    // differential entries must avoid units for the residue tensor to vanish
    bool check_minimal() const {
        for (const auto& d : dcoef)
            for (const auto& [s, rho] : d)
                if (!rho[0].unit_part().is_zero()) return false;
        return true;
    }

    // F (x)_R k: one k-line per generator; entry (t -> s) is the constant part
    // of the unit-basis coefficient
    struct ResidueTensor {
        std::vector<Gen> gens;
        std::vector<std::vector<std::pair<size_t, Scalar>>> d; // t -> (s, scalar)
    };
    ResidueTensor residue_tensor() const {
        ResidueTensor out;
        out.gens = gens;
        for (const auto& dt : dcoef) {
            std::vector<std::pair<size_t, Scalar>> row;
            for (const auto& [s, rho] : dt) {
                Scalar c = rho[0].unit_part();
                if (!c.is_zero()) row.push_back({s, c});
            }
            out.d.push_back(std::move(row));
        }
        return out;
    }
};

struct ResolutionCert {
    int bound = 0;
    int trusted_min = 0;
    bool complete = false;
    bool minimal = false;
    std::vector<std::string> ladder;
};

namespace detail {

// convert an underlying-coordinate vector of the semifree module at a fixed
// degree into differential coefficients over the generators
inline std::vector<std::pair<size_t, AlgElem>> underlying_to_coeffs(const SemifreeModule& F,
                                                                    const DGModule& Fm, int deg,
                                                                    const VecPoly& v) {
    const DGAlgebra& R = *F.A;
    size_t na = R.size();
    std::map<size_t, AlgElem> acc;
    const auto& idx = Fm.indices_at(deg);
    for (size_t k = 0; k < idx.size(); ++k) {
        if (v.c[k].is_zero()) continue;
        size_t t = idx[k] / na, a = idx[k] % na;
        auto it = acc.find(t);
        if (it == acc.end()) it = acc.emplace(t, R.zero_elem()).first;
        it->second[a] = it->second[a].plus(v.c[k], R.ring()->order());
    }
    std::vector<std::pair<size_t, AlgElem>> out;
    for (auto& [t, r] : acc) out.push_back({t, std::move(r)});
    return out;
}

} // namespace detail

// Minimal semi-free resolution of a DG-module target by killing cycles on the
// cone of the partial comparison map, from the top degree down to -bound.
inline SemifreeModule semifree_resolution(const DGModule& M, int bound) {
    AlgebraPtr A = M.algebra();
    const DGAlgebra& R = *A;
    uint32_t p = R.ring()->characteristic();

    SemifreeModule F;
    F.A = A;

    auto cone_complex = [&](const DGModule& Fm, const FreeComplex& Fc) {
        std::map<int, std::vector<VecPoly>> cols;
        for (int i = Fc.lo(); i <= Fc.hi(); ++i) {
            std::vector<VecPoly> cs;
            const auto& idx = Fm.indices_at(i);
            size_t na = R.size();
            for (size_t k = 0; k < idx.size(); ++k) {
                size_t t = idx[k] / na, a = idx[k] % na;
                MElem img = M.act(R.basis_elem(a), F.eps[t]);
                cs.push_back(M.to_underlying(i, img));
            }
            cols[i] = std::move(cs);
        }
        ComplexMap f = ComplexMap::make(Fc, M.underlying(), std::move(cols));
        return cone(f);
    };

    int top = M.underlying().hi();
    int bottom = -bound;
    if (M.trusted_min()) bottom = std::max(bottom, *M.trusted_min());
    for (int t = top; t >= bottom; --t) {
        DGModule Fm = F.gens.empty() ? DGModule() : F.to_module(false);
        FreeComplex cn;
        if (F.gens.empty()) {
            cn = M.underlying();
        } else {
            cn = cone_complex(Fm, Fm.underlying());
        }
        if (cn.rank(t) == 0) continue;
        Subquotient H = cn.cohomology_at(t);
        if (H.module.is_zero_module()) continue;
        auto picks = H.module.minimal_generator_indices();
        size_t f_rank = F.gens.empty() ? 0 : Fm.underlying().rank(t + 1);
        for (size_t pi : picks) {
            const VecPoly& rep = H.generators[pi];
            // split cone coordinates: first block F^{t+1}, then M^t
            VecPoly fpart(f_rank, R.ring()->nvars(), p);
            for (size_t k = 0; k < f_rank; ++k) fpart.c[k] = rep.c[k];
            VecPoly mpart(rep.rank() - f_rank, R.ring()->nvars(), p);
            for (size_t k = f_rank; k < rep.rank(); ++k) mpart.c[k - f_rank] = rep.c[k];

            long tw = 0;
            {
                std::optional<long> d;
                const auto& cone_tw = cn.twists(t);
                for (size_t k = 0; k < rep.rank(); ++k)
                    if (!rep.c[k].is_zero()) {
                        auto hd = rep.c[k].homogeneous_degree(R.ring()->weights());
                        d = (hd ? *hd : 0) + cone_tw[k];
                        break;
                    }
                tw = d.value_or(0);
            }
            std::vector<std::pair<size_t, AlgElem>> dnew;
            if (f_rank > 0) dnew = detail::underlying_to_coeffs(F, Fm, t + 1, fpart);
            MElem e = M.zero_elem();
            {
                MElem raw = M.from_underlying(t, mpart);
                for (auto& q : raw) q = q.scaled(Scalar(-1, p));
                e = std::move(raw);
            }
            F.gens.push_back({t, tw});
            F.dcoef.push_back(std::move(dnew));
            F.eps.push_back(std::move(e));
        }
        F.ladder.push_back("deg " + std::to_string(t) + ": +" + std::to_string(picks.size()) +
                           " generators");
    }

    F.trusted_min = bottom + 1;
    F.minimal = F.check_minimal();
    // full quasi-isomorphism check on the bounded cone (meaningless for
    // targets that are themselves truncated)
    if (!M.trusted_min()) {
        if (!F.gens.empty()) {
            DGModule Fm = F.to_module(false);
            FreeComplex cn = cone_complex(Fm, Fm.underlying());
            F.complete = true;
            for (int i = cn.lo(); i <= cn.hi(); ++i)
                if (!cn.cohomology_zero_at(i)) { F.complete = false; break; }
        } else {
            F.complete = M.underlying().is_exact();
        }
    }
    if (F.complete) F.trusted_min = std::numeric_limits<int>::min() / 2;
    return F;
}

// Minimal semi-free resolution of a presented H^0(R)-module sitting in degree
// zero (k, H^0(R)/I, ...). The module must be killed by the degree-(-1) image
// ideal so the R-action descends.
inline SemifreeModule semifree_resolution_of_module(AlgebraPtr A, const PresentedModule& W,
                                                    int bound) {
    const DGAlgebra& R = *A;
    RingPtr base = R.ring();
    uint32_t p = base->characteristic();

    H0Data h0 = h0_presentation(R);
    // I0 * W = 0 inside W
    for (const auto& q : h0.defining0.gens)
        for (size_t j = 0; j < W.rank(); ++j) {
            VecPoly v(W.rank(), base->nvars(), p);
            v.c[j] = q;
            if (!W.element_is_zero(v))
                throw std::invalid_argument("module is not an H^0-module for this DG-ring");
        }

    SemifreeModule F;
    F.A = A;

    // generators: a minimal generating set of W
    auto picks = W.minimal_generator_indices();
    for (size_t j : picks) {
        F.gens.push_back({0, W.twists()[j]});
        F.dcoef.push_back({});
        F.eps.push_back({});
    }
    F.ladder.push_back("deg 0: +" + std::to_string(picks.size()) + " generators");

    // relations of the minimal generators: {v : sum v_j e_{picks[j]} in span(rels)}
    {
        std::vector<VecPoly> cols;
        for (size_t j : picks) {
            VecPoly e(W.rank(), base->nvars(), p);
            e.c[j] = base->one();
            cols.push_back(std::move(e));
        }
        size_t npick = cols.size();
        for (const auto& r : W.relations()) cols.push_back(r);
        auto ker = kernel_generators(*base, cols, W.rank());
        std::vector<VecPoly> rels;
        for (const auto& kv : ker) {
            VecPoly v(npick, base->nvars(), p);
            bool nz = false;
            for (size_t j = 0; j < npick; ++j) {
                v.c[j] = base->reduce(kv.c[j]);
                if (!v.c[j].is_zero()) nz = true;
            }
            if (nz) rels.push_back(std::move(v));
        }
        size_t added = 0;
        for (const auto& v : rels) {
            std::optional<long> tw;
            std::vector<std::pair<size_t, AlgElem>> d;
            for (size_t j = 0; j < v.rank(); ++j) {
                if (v.c[j].is_zero()) continue;
                if (!v.c[j].unit_part().is_zero())
                    throw std::logic_error("minimal generators produced a unit relation");
                d.push_back({j, R.scalar_elem(v.c[j])});
                auto hd = v.c[j].homogeneous_degree(base->weights());
                if (!tw) tw = (hd ? *hd : 0) + F.gens[j].twist;
            }
            F.gens.push_back({-1, tw.value_or(0)});
            F.dcoef.push_back(std::move(d));
            F.eps.push_back({});
            ++added;
        }
        F.ladder.push_back("deg -1: +" + std::to_string(added) + " relations");
    }

    // kill H^t(F) for t = -1 .. -bound
    for (int t = -1; t >= -bound; --t) {
        DGModule Fm = F.to_module(false);
        Subquotient H = Fm.underlying().cohomology_at(t);
        if (H.module.is_zero_module()) continue;
        auto kp = H.module.minimal_generator_indices();
        for (size_t pi : kp) {
            const VecPoly& rep = H.generators[pi];
            long tw = 0;
            {
                const auto& tws = Fm.underlying().twists(t);
                for (size_t k = 0; k < rep.rank(); ++k)
                    if (!rep.c[k].is_zero()) {
                        auto hd = rep.c[k].homogeneous_degree(base->weights());
                        tw = (hd ? *hd : 0) + tws[k];
                        break;
                    }
            }
            F.gens.push_back({t - 1, tw});
            F.dcoef.push_back(detail::underlying_to_coeffs(F, Fm, t, rep));
            F.eps.push_back({});
        }
        F.ladder.push_back("deg " + std::to_string(t - 1) + ": +" + std::to_string(kp.size()) +
                           " generators");
    }

    F.trusted_min = -bound;
    F.minimal = F.check_minimal();
    // completeness: exactness strictly below the certified window
    {
        DGModule Fm = F.to_module(false);
        F.complete = true;
        for (int i = Fm.underlying().lo(); i < -bound; ++i)
            if (!Fm.underlying().cohomology_zero_at(i)) { F.complete = false; break; }
    }
    if (F.complete) F.trusted_min = std::numeric_limits<int>::min() / 2;
    return F;
}

struct PdResult {
    bool finite = false;
    int value = 0;
    int bound_used = 0;
    std::string note;
};

// pd(F) = sup(F) - inf(F~ (x) k) on a complete minimal resolution; a resolution
// still acquiring generators at the bound yields the bounded verdict.
inline PdResult projective_dimension(const DGModule& M, int bound) {
    PdResult out;
    out.bound_used = bound;
    auto B = M.underlying().cohomology_bounds();
    if (B.exact) {
        out.finite = true;
        out.value = std::numeric_limits<int>::min();
        out.note = "acyclic module";
        return out;
    }
    SemifreeModule F = semifree_resolution(M, bound);
    if (!F.complete || !F.minimal) {
        out.finite = false;
        out.note = !F.complete ? "generators still appearing at the degree bound"
                               : "resolution not minimal";
        return out;
    }
    int lowest = *F.lowest_gen_degree();
    out.finite = true;
    out.value = B.sup - lowest;
    return out;
}

} // namespace dgcm
