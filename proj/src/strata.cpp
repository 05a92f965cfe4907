#include "loopfilt/strata.hpp"

#include "loopfilt/sample.hpp"

#include <json.hpp>

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace lf {

namespace {

struct SimpleType {
    int rank, dim;
    IVec degrees;
};

std::vector<SimpleType> simple_types(int max_rank) {
    std::vector<SimpleType> out;
    for (int l = 1; l <= max_rank; ++l) {
        IVec a;
        for (int i = 2; i <= l + 1; ++i) a.push_back(i);
        out.push_back({l, l * (l + 2), a});
        if (l >= 2) {
            IVec b;
            for (int i = 2; i <= 2 * l; i += 2) b.push_back(i);
            out.push_back({l, l * (2 * l + 1), b});  // B_l and C_l
        }
        if (l >= 4) {
            IVec d;
            for (int i = 2; i <= 2 * l - 2; i += 2) d.push_back(i);
            d.push_back(l);
            out.push_back({l, l * (2 * l - 1), d});
        }
    }
    if (max_rank >= 2) out.push_back({2, 14, {2, 6}});
    if (max_rank >= 4) out.push_back({4, 52, {2, 6, 8, 12}});
    if (max_rank >= 6) out.push_back({6, 78, {2, 5, 6, 8, 9, 12}});
    if (max_rank >= 7) out.push_back({7, 133, {2, 6, 8, 10, 12, 14, 18}});
    if (max_rank >= 8) out.push_back({8, 248, {2, 8, 12, 14, 18, 20, 24, 30}});
    return out;
}

Vec lie_of(const GradedAlgebra& G, const LoopElement& g) {
    LieVec v = zero_vec(G.datum().dim());
    for (const auto& [level, part] : g.terms) v = v + part;
    return v;
}

std::vector<Vec> columns_of(const SMatrix& m) {
    std::vector<Vec> out;
    for (size_t j = 0; j < m.cols(); ++j) out.push_back(column(m, j));
    return out;
}

bool same_span(const std::vector<Vec>& a, const std::vector<Vec>& b) {
    size_t ra = span_rank(a), rb = span_rank(b);
    if (ra != rb) return false;
    std::vector<Vec> u = a;
    u.insert(u.end(), b.begin(), b.end());
    return span_rank(u) == ra;
}

std::string degree_str(const IVec& v) {
    std::string s = "[";
    for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + "]";
}

}  // namespace

std::string LeviLabel::str() const {
    if (diamond) return "diamond";
    std::ostringstream os;
    os << "L(dim=" << dimension << ",split=" << split_rank << ",support=[";
    for (size_t i = 0; i < support.size(); ++i)
        os << (i ? "," : "") << to_string(support[i].first) << ":" << support[i].second;
    os << "],degrees=" << (degrees_known ? degree_str(degrees) : std::string("?")) << ")";
    return os.str();
}

LeviLabel diamond_label() {
    LeviLabel l;
    l.diamond = true;
    return l;
}

bool label_below(const LeviLabel& a, const LeviLabel& b) {
    if (a.diamond) return false;
    if (b.diamond) return true;
    return a.dimension < b.dimension && a.split_rank >= b.split_rank;
}

bool label_report_order(const LeviLabel& a, const LeviLabel& b) {
    if (a.diamond != b.diamond) return b.diamond;
    if (a.dimension != b.dimension) return a.dimension < b.dimension;
    return a.str() < b.str();
}

std::vector<IVec> semisimple_degree_candidates(int rank, int dim) {
    auto types = simple_types(rank);
    std::set<IVec> found;
    IVec acc;
    std::function<void(size_t, int, int)> rec = [&](size_t from, int r, int d) {
        if (r == 0 && d == 0) {
            IVec s = acc;
            std::sort(s.begin(), s.end());
            found.insert(s);
            return;
        }
        if (r <= 0 || d <= 0) return;
        for (size_t t = from; t < types.size(); ++t) {
            if (types[t].rank > r || types[t].dim > d) continue;
            acc.insert(acc.end(), types[t].degrees.begin(), types[t].degrees.end());
            rec(t, r - types[t].rank, d - types[t].dim);
            acc.resize(acc.size() - types[t].degrees.size());
        }
    };
    rec(0, rank, dim);
    return {found.begin(), found.end()};
}

bool unstable_test(const GradedAlgebra& G, const InvariantSystem& inv, const GradedElement& z) {
    bool nil = is_nilpotent(G, z);
    bool fiber = q_xr(G, inv, z).is_zero();
    if (nil != fiber)
        throw InconsistentOracles("nilpotency and q_xr disagree on " + graded_str(G, z));
    return nil;
}

std::optional<Cocharacter> halfspace_cocharacter(const GradedAlgebra& G, const GradedElement& z) {
    const TwistedLoopDatum& d = G.datum();
    int R = d.res_rank;
    LinearProgram lp;
    for (int k = 0; k < R; ++k) lp.variables.push_back("w" + std::to_string(k));
    lp.variables.push_back("delta");
    lp.objective.assign(R + 1, Rat(0));
    lp.objective[R] = 1;
    MPQuotient q = G.quotient(z.r);
    size_t i = 0;
    std::set<IVec> support;
    for (const auto& s : q.spaces) {
        for (size_t b = 0; b < s.basis.size(); ++b, ++i)
            if (!z.coeffs[i].is_zero()) support.insert(s.alpha);
    }
    for (const auto& a : support) {
        std::vector<Rat> c(R + 1);
        for (int k = 0; k < R; ++k) c[k] = a[k];
        c[R] = -1;
        lp.constraints.push_back({c, Relation::GE, 0});
    }
    for (int k = 0; k < R; ++k) {
        std::vector<Rat> c(R + 1, Rat(0));
        c[k] = 1;
        lp.constraints.push_back({c, Relation::LE, 1});
        lp.constraints.push_back({c, Relation::GE, -1});
    }
    std::vector<Rat> cap(R + 1, Rat(0));
    cap[R] = 1;
    lp.constraints.push_back({cap, Relation::LE, 1});
    LPResult res = solve(lp);
    if (res.status != LPResult::Status::Optimal || res.value <= 0) return std::nullopt;
    return Cocharacter{std::vector<Rat>(res.point.begin(), res.point.begin() + R), res.value};
}

bool strictly_deepened(const TwistedLoopDatum& d, const ApartmentPoint& y, const Rat& r, const LoopElement& g) {
    for (const auto& [depth, part] : by_depth(d, y, g))
        if (depth <= r) return false;
    return true;
}

ApartmentPoint destabilize(const GradedAlgebra& G, const InvariantSystem& inv, const GradedElement& z) {
    if (!unstable_test(G, inv, z)) throw std::invalid_argument("destabilize: element is semistable");
    if (is_zero(z)) return G.x();
    auto cc = halfspace_cocharacter(G, z);
    if (!cc) throw NeedsConjugation("support weights of " + graded_str(G, z) + " are not in an open half-space");
    const TwistedLoopDatum& d = G.datum();
    const ApartmentPoint& x = G.x();
    int R = d.res_rank;
    // Largest eps keeping the sandwich; halved for the strict inequalities.
    LinearProgram lp{{"eps"}, {{{Rat(1)}, Relation::LE, 1}}, {Rat(1)}, true};
    for (const auto& [key, basis] : d.pieces) {
        Rat dw = 0;
        for (int k = 0; k < R; ++k) dw += key.first[k] * cc->w[k];
        if (dw == 0) continue;
        Rat f = frac(Rat(pairing(d, key.first, x) + make_rat(key.second, d.n) - z.r));
        Rat bound = dw > 0 ? (f > 0 ? Rat(1 - f) : Rat(1)) : (f > 0 ? f : Rat(1));
        lp.constraints.push_back({{dw > 0 ? dw : Rat(-dw)}, Relation::LE, bound});
    }
    LPResult res = solve(lp);
    if (res.status != LPResult::Status::Optimal) throw std::logic_error("destabilize: step program failed");
    Rat eps = res.value / 2;
    ApartmentPoint y = x;
    for (int k = 0; k < R; ++k) y.coords[k] += eps * cc->w[k];
    if (!strictly_deepened(d, y, z.r, f_embed(G, z)) || !sandwich_test(d, x, y, z.r))
        throw std::logic_error("destabilize: postcondition failed");
    return y;
}

std::vector<AffineHalfspace> halfspaces_of(const TwistedLoopDatum& d, const ApartmentPoint& x, const Rat& r) {
    std::vector<AffineHalfspace> out;
    for (const auto& [key, basis] : d.pieces) {
        Rat base = make_rat(key.second, d.n);
        Rat need = r - pairing(d, key.first, x) - base;
        Rat level = base + Rat(-floor_rat(Rat(-need)));
        out.push_back({key.first, level});
        out.push_back({key.first, level + 1});
    }
    return out;
}

DeepeningResult deepening_lp(const TwistedLoopDatum& d, const ApartmentPoint& x, const Rat& r) {
    int R = d.res_rank;
    DeepeningResult out;
    LinearProgram& lp = out.program;
    for (int k = 0; k < R; ++k) lp.variables.push_back("y" + std::to_string(k));
    lp.variables.push_back("s");
    lp.objective.assign(R + 1, Rat(0));
    lp.objective[R] = 1;
    for (const auto& h : reduce_halfspaces(halfspaces_of(d, x, r))) {
        std::vector<Rat> c(R + 1);
        for (int k = 0; k < R; ++k) c[k] = h.alpha[k];
        c[R] = -1;
        lp.constraints.push_back({c, Relation::GE, Rat(-h.level)});
    }
    out.solution = solve(lp);
    out.status = out.solution.status;
    if (out.status == LPResult::Status::Optimal) {
        out.s = out.solution.value;
        out.y = x;
        for (int k = 0; k < R; ++k) out.y.coords[k] = out.solution.point[k];
    }
    return out;
}

Centralizer centralizer_label(const GradedAlgebra& G, const GradedElement& z) {
    if (!is_semisimple(G, z)) throw NotSemisimple(graded_str(G, z) + " is not semisimple");
    const TwistedLoopDatum& d = G.datum();
    Centralizer out;
    LeviSubdatum& L = out.levi;
    L.x = G.x();
    L.r = z.r;
    L.defining = f_embed(G, z);
    std::vector<std::pair<Rat, LoopElement>> all;
    std::set<std::pair<IVec, Rat>> roots;
    for (const auto& j : G.residues()) {
        auto basis = flat_basis(G.components().at(j));
        auto ker = kernel(ad_matrix(G, z, j));
        if (ker.empty()) continue;
        auto& piece = L.pieces[j];
        for (const auto& v : span_basis(ker)) {
            LoopElement g;
            for (size_t i = 0; i < v.size(); ++i)
                if (!v[i].is_zero()) g += v[i] * basis[i];
            piece.push_back(g);
            all.push_back({j, g});
            for (const auto& [level, part] : g.terms)
                for (const auto& w : d.weights)
                    if (!is_zero(weight_component(d, part, w))) roots.insert({w, level});
        }
        L.dimension += static_cast<int>(ker.size());
        out.label.support.push_back({j, static_cast<int>(ker.size())});
    }
    L.affine_roots.assign(roots.begin(), roots.end());

    // Centre: c in K_j with [c, K] = 0, computed on h.
    size_t N = d.dim();
    int center_dim = 0;
    for (const auto& [j, piece] : L.pieces) {
        SMatrix sys(N * all.size(), piece.size());
        for (size_t c = 0; c < piece.size(); ++c) {
            LieVec pc = lie_of(G, piece[c]);
            for (size_t k = 0; k < all.size(); ++k) {
                LieVec br = bracket(d.datum, pc, lie_of(G, all[k].second));
                for (size_t i = 0; i < N; ++i) sys(k * N + i, c) = br[i];
            }
        }
        for (const auto& v : kernel(sys)) {
            LoopElement g;
            for (size_t i = 0; i < v.size(); ++i)
                if (!v[i].is_zero()) g += v[i] * piece[i];
            L.center.push_back(g);
            ++center_dim;
            if (j == 0) ++out.label.split_rank;
        }
    }

    LeviLabel& lab = out.label;
    lab.dimension = L.dimension;
    int ss_rank = d.datum.rank - center_dim, ss_dim = L.dimension - center_dim;
    auto cands = semisimple_degree_candidates(ss_rank, ss_dim);
    if (ss_rank == 0) cands = {IVec{}};
    if (cands.size() == 1) {
        lab.degrees = IVec(center_dim, 1);
        lab.degrees.insert(lab.degrees.end(), cands[0].begin(), cands[0].end());
        std::sort(lab.degrees.begin(), lab.degrees.end());
    } else {
        lab.degrees_known = false;
    }
    return out;
}

LeviLabel stratum_of(const GradedAlgebra& G, const InvariantSystem& inv, const GradedElement& z) {
    if (unstable_test(G, inv, z)) return diamond_label();
    return centralizer_label(G, jordan_decompose(G, z).first).label;
}

bool is_central(const GradedAlgebra& G, const LeviSubdatum& L, const GradedElement& z) {
    if (!(L.x == G.x())) return false;
    SubQuotient sq = levi_restrict(G.datum(), L, G.x(), z.r);
    if (!in_span(span_basis(sq.basis), z.coeffs)) return false;
    LieVec v = to_lie(G, z);
    for (const auto& [j, piece] : L.pieces)
        for (const auto& g : piece)
            if (!is_zero(bracket(G.root_datum(), v, lie_of(G, g)))) return false;
    return true;
}

bool gen_test(const GradedAlgebra& G, const LeviSubdatum& L, const GradedElement& z) {
    if (!is_central(G, L, z)) throw std::invalid_argument("gen_test: element is not central in the Levi");
    return static_cast<int>(kernel(full_ad(G, z)).size()) == L.dimension;
}

LoopElement exp_ad(const TwistedLoopDatum& d, const ApartmentPoint& x, const LoopElement& w, const LoopElement& g,
                   const Rat& cap) {
    if (!w.is_zero() && min_depth(d, x, w) <= 0) throw std::invalid_argument("exp_ad: w must have positive depth");
    LoopElement sum = truncate_depth(d, x, g, cap), term = sum;
    for (long m = 1; !term.is_zero(); ++m) {
        term = truncate_depth(d, x, Scalar(make_rat(1, m)) * loop_bracket(d.datum, w, term), cap);
        sum += term;
    }
    return sum;
}

AlignResult align_lift(const GradedAlgebra& G, const GradedElement& z, const LoopElement& g1, const Rat& depth_cap,
                       const std::vector<GradedElement>& fixed) {
    const TwistedLoopDatum& d = G.datum();
    const ApartmentPoint& x = G.x();
    const Rat& r = z.r;
    LoopElement F = f_embed(G, z);
    if (!(truncate_depth(d, x, g1, r) == F)) throw std::invalid_argument("align_lift: g1 does not lift z");
    AlignResult res{truncate_depth(d, x, g1, depth_cap), {}};
    Window win{r, depth_cap, true, true};
    for (const auto& s : jump_set(d, x, win)) {
        auto parts = by_depth(d, x, res.g);
        auto it = parts.find(s);
        if (it == parts.end()) continue;
        auto target = from_loop(G, s, it->second);
        if (!target) throw std::logic_error("align_lift: component outside the quotient");
        // Solve c_s = [z, w] + kappa, w in h_{s-r} centralising `fixed`, kappa in ker ad z.
        auto W = centralizer_in(G, fixed, s - r);
        SMatrix A = ad_matrix(G, z, s - r);
        std::vector<GradedElement> Kfix = fixed;
        Kfix.push_back(z);
        auto K = centralizer_in(G, Kfix, s);
        size_t rows = target->coeffs.size();
        SMatrix sys(rows, W.size() + K.size());
        for (size_t c = 0; c < W.size(); ++c) {
            Vec col = lf::apply(A, W[c].coeffs);
            for (size_t i = 0; i < rows; ++i) sys(i, c) = col[i];
        }
        for (size_t c = 0; c < K.size(); ++c)
            for (size_t i = 0; i < rows; ++i) sys(i, W.size() + c) = K[c].coeffs[i];
        auto sol = solve(sys, target->coeffs);
        if (!sol) throw NoAlignment("defect at depth " + to_string(s) + " is not in [z, k] + ker ad z");
        GradedElement w = zero_element(G, s - r);
        for (size_t c = 0; c < W.size(); ++c)
            if (!(*sol)[c].is_zero()) w = w + (*sol)[c] * W[c];
        if (is_zero(w)) continue;
        // [w, F] = -[F, w] cancels the image part of c_s.
        LoopElement Wl = f_embed(G, w);
        res.g = exp_ad(d, x, Wl, res.g, depth_cap);
        res.conjugators.push_back(Wl);
    }
    return res;
}

std::vector<LoopElement> multi_align(const GradedAlgebra& G, const std::vector<GradedElement>& zs, const Rat& depth_cap,
                                     std::vector<LoopElement> lifts) {
    for (size_t i = 0; i < zs.size(); ++i)
        for (size_t j = i + 1; j < zs.size(); ++j)
            if (!loop_bracket(G.root_datum(), f_embed(G, zs[i]), f_embed(G, zs[j])).is_zero())
                throw std::invalid_argument("multi_align: elements do not commute");
    if (lifts.empty())
        for (const auto& z : zs) lifts.push_back(f_embed(G, z));
    if (lifts.size() != zs.size()) throw std::invalid_argument("multi_align: lift count mismatch");
    std::vector<GradedElement> fixed;
    for (size_t k = 0; k < zs.size(); ++k) {
        AlignResult res = align_lift(G, zs[k], lifts[k], depth_cap, fixed);
        lifts[k] = res.g;
        for (size_t j = k + 1; j < zs.size(); ++j)
            for (const auto& W : res.conjugators) lifts[j] = exp_ad(G.datum(), G.x(), W, lifts[j], depth_cap);
        fixed.push_back(zs[k]);
    }
    return lifts;
}

namespace {

struct Outcome {
    LeviLabel label;
    int centralizer_dim = 0;
    bool gen = false;
    std::vector<BasecaseReport::Counterexample> failures;
};

Outcome run_checks(const GradedAlgebra& G, const InvariantSystem& inv, const GradedElement& z) {
    Outcome out;
    const TwistedLoopDatum& d = G.datum();
    const Rat& r = z.r;
    std::string name = graded_str(G, z);
    auto fail = [&](char c, const std::string& detail) { out.failures.push_back({name, c, detail}); };

    Centralizer C = centralizer_label(G, z);
    const LeviSubdatum& L = C.levi;
    out.label = C.label;
    out.centralizer_dim = L.dimension;
    size_t N = d.dim();

    // (a) graded kernel dimension against the full kernel and the rank over k((t^(1/n))).
    SMatrix ad = full_ad(G, z);
    auto ker_full = kernel(ad);
    Matrix<LaurentScalar> lad(N, N, LaurentScalar(d.n));
    for (const auto& [level, part] : L.defining.terms) {
        SMatrix m = ad_matrix(d.datum, part);
        for (size_t i = 0; i < N; ++i)
            for (size_t j = 0; j < N; ++j)
                if (!m(i, j).is_zero()) lad(i, j) += LaurentScalar::monomial(m(i, j), level, d.n);
    }
    int laurent_dim = static_cast<int>(N - bareiss_rank(lad));
    if (L.dimension != static_cast<int>(ker_full.size()) || L.dimension != laurent_dim)
        fail('a', "graded=" + std::to_string(L.dimension) + " full=" + std::to_string(ker_full.size()) +
                      " laurent=" + std::to_string(laurent_dim));

    // (b) kernel of ad z on h, intersected with h_r, against levi_restrict.
    MPQuotient q = G.quotient(r);
    auto qb = flat_basis(q);
    std::vector<Vec> hr;
    for (const auto& b : qb) hr.push_back(lie_of(G, b));
    SubQuotient sq = levi_restrict(d, L, G.x(), r);
    std::vector<Vec> lr;
    for (const auto& c : sq.basis) {
        Vec v = zero_vec(N);
        for (size_t i = 0; i < c.size(); ++i)
            if (!c[i].is_zero()) v = v + c[i] * hr[i];
        lr.push_back(v);
    }
    auto ker_r = intersect(ker_full, hr);
    if (!same_span(ker_r, lr))
        fail('b', "kernel in h_r has dim " + std::to_string(span_rank(ker_r)) + ", restriction has dim " +
                      std::to_string(span_rank(lr)));

    // (c) [h_0, z] + (h_r)^L = h_r.
    auto img0 = columns_of(ad_matrix(G, z, 0));
    size_t rk0 = span_rank(img0), lrd = span_rank(sq.basis);
    auto both = img0;
    both.insert(both.end(), sq.basis.begin(), sq.basis.end());
    if (rk0 + lrd != static_cast<size_t>(q.total_dim) || span_rank(both) != static_cast<size_t>(q.total_dim))
        fail('c', std::to_string(rk0) + "+" + std::to_string(lrd) + " vs " + std::to_string(q.total_dim));

    // (d) h_s = [z, h_{s-r}] + ker(ad z on h_s) for every residue s.
    for (const auto& s : G.residues()) {
        auto img = columns_of(ad_matrix(G, z, s - r));
        auto ker = kernel(ad_matrix(G, z, s));
        int ds = G.dim(s);
        size_t ri = span_rank(img);
        auto u = img;
        u.insert(u.end(), ker.begin(), ker.end());
        if (ri + ker.size() != static_cast<size_t>(ds) || span_rank(u) != static_cast<size_t>(ds))
            fail('d', "s=" + to_string(s) + ": " + std::to_string(ri) + "+" + std::to_string(ker.size()) + " vs " +
                          std::to_string(ds));
    }

    // (e) z lies in the centre of L, is generic there, and recovers the label.
    bool central = is_central(G, L, z);
    out.gen = central && gen_test(G, L, z);
    LeviLabel again = stratum_of(G, inv, z);
    if (!central || !out.gen || !(again == C.label))
        fail('e', std::string("central=") + (central ? "1" : "0") + " gen=" + (out.gen ? "1" : "0") +
                      " label=" + again.str());
    return out;
}

}  // namespace

std::vector<BasecaseReport::Counterexample> basecase_checks(const GradedAlgebra& G, const InvariantSystem& inv,
                                                            const GradedElement& z) {
    return run_checks(G, inv, z).failures;
}

std::vector<GradedElement> basecase_samples(const GradedAlgebra& G, const Rat& r, int sample_size, std::uint64_t seed) {
    std::vector<GradedElement> out;
    int dim = G.dim(r);
    if (dim == 0 || sample_size <= 0) return out;
    Sampler rng(seed);
    auto cartan = cartan_subspace(G, r, seed).basis;
    int half = cartan.empty() ? 0 : sample_size / 2;
    for (size_t i = 0; i < cartan.size() && static_cast<int>(out.size()) < half; ++i) out.push_back(cartan[i]);
    for (int guard = 0; static_cast<int>(out.size()) < half && guard < 50 * sample_size; ++guard) {
        GradedElement z = zero_element(G, r);
        for (const auto& c : cartan) z = z + rng.coeff(2) * c;
        if (!is_zero(z)) out.push_back(z);
    }
    for (int guard = 0; static_cast<int>(out.size()) < sample_size && guard < 50 * sample_size; ++guard) {
        GradedElement z = zero_element(G, r);
        for (auto& c : z.coeffs) c = rng.coeff(2);
        if (!is_zero(z)) out.push_back(z);
    }
    return out;
}

BasecaseReport verify_basecase(const GradedAlgebra& G, const InvariantSystem& inv, const Rat& r, int sample_size,
                               std::uint64_t seed, bool parallel) {
    BasecaseReport rep;
    rep.x = G.x();
    rep.r = r;
    auto samples = basecase_samples(G, r, sample_size, seed);
    std::vector<Outcome> outcomes(samples.size());
    long count = static_cast<long>(samples.size());
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (long i = 0; i < count; ++i) {
        Outcome& o = outcomes[i];
        try {
            if (unstable_test(G, inv, samples[i])) {
                o.label = diamond_label();
            } else {
                GradedElement ss = jordan_decompose(G, samples[i]).first;
                o = run_checks(G, inv, ss);
                // The stratum of z is that of its semisimple part.
                o.label = centralizer_label(G, ss).label;
            }
        } catch (const std::exception& e) {
            o.label = LeviLabel{};
            o.failures.push_back({graded_str(G, samples[i]), 'x', e.what()});
        }
    }
    for (size_t i = 0; i < samples.size(); ++i) {
        const Outcome& o = outcomes[i];
        rep.samples.push_back({graded_str(G, samples[i]), o.label, o.gen, o.centralizer_dim});
        auto it = std::find_if(rep.strata.begin(), rep.strata.end(),
                               [&](const BasecaseReport::Stratum& s) { return s.label == o.label; });
        if (it == rep.strata.end()) {
            rep.strata.push_back({o.label, 0, {}});
            it = rep.strata.end() - 1;
        }
        ++it->count;
        if (!o.label.diamond)
            for (int c = 0; c < 5; ++c) {
                bool failed = std::any_of(o.failures.begin(), o.failures.end(),
                                          [&](const auto& f) { return f.check == 'a' + c || f.check == 'x'; });
                failed ? ++it->checks[c].fail : ++it->checks[c].pass;
            }
        rep.counterexamples.insert(rep.counterexamples.end(), o.failures.begin(), o.failures.end());
    }
    std::sort(rep.strata.begin(), rep.strata.end(),
              [](const auto& a, const auto& b) { return label_report_order(a.label, b.label); });
    return rep;
}

std::string BasecaseReport::json() const {
    nlohmann::ordered_json j;
    j["x"] = nlohmann::json::array();
    for (const auto& c : x.coords) j["x"].push_back(to_string(c));
    j["r"] = to_string(r);
    j["strata"] = nlohmann::json::array();
    for (const auto& s : strata) {
        nlohmann::ordered_json e;
        e["label"] = s.label.str();
        e["count"] = s.count;
        nlohmann::ordered_json checks = nlohmann::ordered_json::object();
        if (!s.label.diamond)
            for (int c = 0; c < 5; ++c)
                checks[std::string(1, static_cast<char>('a' + c))] = s.checks[c].fail ? "fail" : "pass";
        e["checks"] = checks;
        j["strata"].push_back(e);
    }
    j["samples"] = nlohmann::json::array();
    for (const auto& s : samples)
        j["samples"].push_back(
            {{"element", s.element}, {"label", s.label.str()}, {"gen", s.gen}, {"centralizer_dim", s.centralizer_dim}});
    j["counterexamples"] = nlohmann::json::array();
    for (const auto& c : counterexamples)
        j["counterexamples"].push_back(
            {{"element", c.element}, {"check", std::string(1, c.check)}, {"detail", c.detail}});
    return j.dump(2);
}

}  // namespace lf
