#include "loopfilt/vinberg.hpp"

#include "loopfilt/sample.hpp"

#include <stdexcept>

namespace lf {

GradedAlgebra::GradedAlgebra(const TwistedLoopDatum& d, ApartmentPoint x) : d_(&d), x_(std::move(x)) {
    residues_ = jump_set(d, x_, Window{Rat(0), Rat(1)});
    for (const auto& j : residues_) comps_.emplace(j, quotient(j));
}

GradedAlgebra build_grading(const TwistedLoopDatum& d, const ApartmentPoint& x) { return GradedAlgebra(d, x); }

GradedElement zero_element(const GradedAlgebra& G, const Rat& r) {
    return GradedElement{r, zero_vec(G.dim(r))};
}

GradedElement basis_element(const GradedAlgebra& G, const Rat& r, size_t i) {
    return GradedElement{r, unit_vec(G.dim(r), i)};
}

GradedElement operator+(const GradedElement& a, const GradedElement& b) {
    if (a.r != b.r) throw std::invalid_argument("adding graded elements of different degree");
    return GradedElement{a.r, a.coeffs + b.coeffs};
}

GradedElement operator*(const Scalar& c, const GradedElement& a) { return GradedElement{a.r, c * a.coeffs}; }

bool is_zero(const GradedElement& z) { return is_zero(z.coeffs); }

std::string graded_str(const GradedAlgebra& G, const GradedElement& z) {
    return loop_str(G.root_datum(), f_embed(G, z));
}

LoopElement f_embed(const GradedAlgebra& G, const GradedElement& z) {
    MPQuotient q = G.quotient(z.r);
    if (static_cast<int>(z.coeffs.size()) != q.total_dim)
        throw std::invalid_argument("graded element does not match its quotient");
    LoopElement g;
    size_t i = 0;
    for (const auto& s : q.spaces)
        for (const auto& b : s.basis) {
            if (!z.coeffs[i].is_zero()) g.add(s.level, z.coeffs[i] * b);
            ++i;
        }
    return g;
}

LieVec to_lie(const GradedAlgebra& G, const GradedElement& z) {
    LieVec v = zero_vec(G.datum().dim());
    for (const auto& [level, part] : f_embed(G, z).terms) v = v + part;
    return v;
}

std::optional<GradedElement> from_loop(const GradedAlgebra& G, const Rat& r, const LoopElement& g) {
    auto c = quotient_coords(G.datum(), G.quotient(r), g);
    if (!c) return std::nullopt;
    return GradedElement{r, *c};
}

std::optional<GradedElement> from_lie(const GradedAlgebra& G, const Rat& r, const LieVec& v) {
    MPQuotient q = G.quotient(r);
    LoopElement g;
    LieVec covered = zero_vec(v.size());
    for (const auto& s : q.spaces) {
        LieVec c = weight_component(G.datum(), v, s.alpha);
        g.add(s.level, c);
        covered = covered + c;
    }
    if (covered != v) return std::nullopt;
    return from_loop(G, r, g);
}

GradedElement graded_bracket(const GradedAlgebra& G, const GradedElement& a, const GradedElement& b) {
    LoopElement g = loop_bracket(G.root_datum(), f_embed(G, a), f_embed(G, b));
    auto out = from_loop(G, a.r + b.r, g);
    if (!out) throw std::logic_error("bracket left the graded component");
    return *out;
}

SMatrix ad_matrix(const GradedAlgebra& G, const GradedElement& z, const Rat& target_j) {
    MPQuotient src = G.quotient(target_j), dst = G.quotient(target_j + z.r);
    LoopElement F = f_embed(G, z);
    auto basis = flat_basis(src);
    SMatrix m(dst.total_dim, src.total_dim);
    for (size_t c = 0; c < basis.size(); ++c) {
        auto col = quotient_coords(G.datum(), dst, loop_bracket(G.root_datum(), F, basis[c]));
        if (!col) throw std::logic_error("ad image outside the target component");
        for (size_t i = 0; i < col->size(); ++i) m(i, c) = (*col)[i];
    }
    return m;
}

SMatrix full_ad(const GradedAlgebra& G, const GradedElement& z) { return ad_matrix(G.root_datum(), to_lie(G, z)); }

bool is_nilpotent(const GradedAlgebra& G, const GradedElement& z) { return is_nilpotent_matrix(full_ad(G, z)); }

bool is_semisimple(const GradedAlgebra& G, const GradedElement& z) { return is_semisimple_matrix(full_ad(G, z)); }

std::pair<GradedElement, GradedElement> jordan_decompose(const GradedAlgebra& G, const GradedElement& z) {
    SMatrix ad = full_ad(G, z);
    if (is_nilpotent_matrix(ad)) return {zero_element(G, z.r), z};
    auto [S, U] = jordan_matrix(ad);
    (void)U;
    // Solve ad(y) = S for y in h_r; ad is injective since h is semisimple.
    MPQuotient q = G.quotient(z.r);
    auto basis = flat_basis(q);
    size_t N = ad.rows();
    SMatrix sys(N * N, basis.size());
    for (size_t c = 0; c < basis.size(); ++c) {
        LieVec b = zero_vec(N);
        for (const auto& [level, part] : basis[c].terms) b = b + part;
        SMatrix adb = ad_matrix(G.root_datum(), b);
        for (size_t i = 0; i < N; ++i)
            for (size_t j = 0; j < N; ++j) sys(i * N + j, c) = adb(i, j);
    }
    Vec rhs(N * N);
    for (size_t i = 0; i < N; ++i)
        for (size_t j = 0; j < N; ++j) rhs[i * N + j] = S(i, j);
    auto y = solve(sys, rhs);
    if (!y) throw std::logic_error("semisimple part is not ad of an element of h_r");
    GradedElement ss{z.r, *y};
    GradedElement nil{z.r, z.coeffs - *y};
    return {ss, nil};
}

SMatrix loop_window_ad(const GradedAlgebra& G, const GradedElement& z, int periods) {
    const TwistedLoopDatum& d = G.datum();
    // Basis: piece vectors at levels k/n + m, 0 <= m < periods.
    std::map<std::pair<Rat, IVec>, size_t> offset;
    std::vector<std::pair<Rat, LieVec>> basis;
    for (int m = 0; m < periods; ++m)
        for (const auto& [key, vecs] : d.pieces) {
            Rat level = make_rat(key.second, d.n) + m;
            offset[{level, key.first}] = basis.size();
            for (const auto& v : vecs) basis.push_back({level, v});
        }
    LoopElement F = f_embed(G, z);
    SMatrix out(basis.size(), basis.size());
    for (size_t c = 0; c < basis.size(); ++c) {
        LoopElement img = loop_bracket(d.datum, F, monomial(basis[c].first, basis[c].second));
        for (const auto& [level, v] : img.terms) {
            Rat l = level - Rat(periods * floor_rat(Rat(level / periods)));
            for (const auto& w : d.weights) {
                LieVec part = weight_component(d, v, w);
                if (is_zero(part)) continue;
                auto it = offset.find({l, w});
                if (it == offset.end()) throw std::logic_error("loop bracket left the window basis");
                int k = static_cast<int>(mpz_class(Rat(frac(l) * d.n).get_num()).get_si());
                const auto& pb = d.piece(w, k);
                MPQuotient one{G.x(), 0, {AffineRootSpace{w, l, pb}}, static_cast<int>(pb.size())};
                auto coords = quotient_coords(d, one, monomial(l, part));
                if (!coords) throw std::logic_error("loop bracket left the eigenspace");
                for (size_t i = 0; i < coords->size(); ++i) out(it->second + i, c) = (*coords)[i];
            }
        }
    }
    return out;
}

std::vector<GradedElement> centralizer_in(const GradedAlgebra& G, const std::vector<GradedElement>& zs, const Rat& j) {
    int dim = G.dim(j);
    if (zs.empty()) {
        std::vector<GradedElement> out;
        for (int i = 0; i < dim; ++i) out.push_back(basis_element(G, j, i));
        return out;
    }
    std::vector<SMatrix> blocks;
    size_t rows = 0;
    for (const auto& z : zs) {
        blocks.push_back(ad_matrix(G, z, j));
        rows += blocks.back().rows();
    }
    SMatrix stacked(rows, dim);
    size_t r0 = 0;
    for (const auto& b : blocks) {
        for (size_t i = 0; i < b.rows(); ++i)
            for (size_t c = 0; c < b.cols(); ++c) stacked(r0 + i, c) = b(i, c);
        r0 += b.rows();
    }
    std::vector<GradedElement> out;
    for (auto& v : kernel(stacked)) out.push_back(GradedElement{j, v});
    return out;
}

CartanResult cartan_subspace(const GradedAlgebra& G, const Rat& r, std::uint64_t seed, int tries) {
    CartanResult res;
    if (G.dim(r) == 0) throw std::invalid_argument("cartan_subspace: h_r is zero");
    Sampler rng(seed);
    std::vector<Vec> span;
    for (;;) {
        auto C = centralizer_in(G, res.basis, r);
        if (C.size() == res.basis.size()) {
            res.certified = true;
            break;
        }
        // Basis vectors, their sum, then pseudo-random combinations.
        std::vector<GradedElement> candidates(C.begin(), C.end());
        GradedElement sum = zero_element(G, r);
        for (const auto& c : C) sum = sum + c;
        candidates.push_back(sum);
        for (int t = 0; t < tries; ++t) {
            GradedElement v = zero_element(G, r);
            for (const auto& c : C) v = v + rng.coeff(3) * c;
            candidates.push_back(v);
        }
        bool grew = false;
        for (const auto& v : candidates) {
            GradedElement s = jordan_decompose(G, v).first;
            if (is_zero(s) || in_span(span, s.coeffs)) continue;
            res.basis.push_back(s);
            span = span_basis([&] {
                std::vector<Vec> vs;
                for (const auto& b : res.basis) vs.push_back(b.coeffs);
                return vs;
            }());
            grew = true;
            break;
        }
        if (!grew) {
            res.certified = true;
            break;
        }
    }
    return res;
}

}  // namespace lf
