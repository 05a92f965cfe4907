#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "loopfilt/suite.hpp"

#include <set>

using namespace lf;

namespace {

ApartmentPoint pt(std::vector<Rat> c) { return ApartmentPoint{std::move(c)}; }
const Rat half = make_rat(1, 2);

GradedElement element(const GradedAlgebra& G, const Rat& r, const LoopElement& g) {
    auto z = from_loop(G, r, g);
    REQUIRE(z.has_value());
    return *z;
}

// Smallest <alpha,y> + level over the nonzero Chevalley coordinates of g.
Rat depth_oracle(const TwistedLoopDatum& d, const ApartmentPoint& y, const LoopElement& g) {
    std::optional<Rat> best;
    for (const auto& [level, v] : g.terms)
        for (size_t b = 0; b < v.size(); ++b) {
            if (v[b].is_zero()) continue;
            Rat depth = level;
            for (int k = 0; k < d.res_rank; ++k) depth += d.basis_weight[b][k] * y.coords[k];
            if (!best || depth < *best) best = depth;
        }
    return *best;
}

LeviLabel label(int dim, int split, std::vector<std::pair<Rat, int>> support, IVec degrees) {
    LeviLabel l;
    l.dimension = dim;
    l.split_rank = split;
    l.support = std::move(support);
    l.degrees = std::move(degrees);
    return l;
}

// Number of roots beta of A2 with <beta, c1 h1 + c2 h2> = 0.
int roots_on_wall(const RootDatum& d, long c1, long c2) {
    int count = 0;
    for (const auto& beta : d.roots) {
        long p = 0;
        for (int j = 0; j < d.rank; ++j) p += beta[j] * (c1 * d.cartan[0][j] + c2 * d.cartan[1][j]);
        count += p == 0;
    }
    return count;
}

}  // namespace

TEST_CASE("unstable test on the running example") {
    auto d = make_loop_datum('A', 1);
    auto inv = invariant_system(d.datum);
    GradedAlgebra G(d, pt({half}));
    LieVec e = basis_vec(d.datum, 0), f = basis_vec(d.datum, 1);
    CHECK(unstable_test(G, inv, element(G, half, monomial(0, e))));
    CHECK_FALSE(unstable_test(G, inv, element(G, half, monomial(0, e) + monomial(1, f))));
    CHECK(unstable_test(G, inv, zero_element(G, half)));
}

TEST_CASE("destabilising cocharacters") {
    auto d = make_loop_datum('A', 1);
    auto inv = invariant_system(d.datum);
    auto x = pt({half});
    GradedAlgebra G(d, x);
    LieVec e = basis_vec(d.datum, 0);
    LoopElement g = monomial(0, e);
    ApartmentPoint y = destabilize(G, inv, element(G, half, g));
    CHECK(depth_oracle(d, y, g) > half);
    CHECK(sandwich_test(d, x, y, half));
    // <alpha,y> = 1 also deepens e and keeps the sandwich.
    CHECK(depth_oracle(d, pt({1}), g) > half);
    CHECK(sandwich_test(d, x, pt({1}), half));
    CHECK(destabilize(G, inv, zero_element(G, half)) == x);
    CHECK_THROWS_AS(destabilize(G, inv, element(G, half, g + monomial(1, basis_vec(d.datum, 1)))),
                    std::invalid_argument);

    auto a2 = make_loop_datum('A', 2);
    GradedAlgebra G2(a2, origin(a2));
    LoopElement e1 = monomial(0, basis_vec(a2.datum, 0));
    ApartmentPoint y2 = destabilize(G2, invariant_system(a2.datum), element(G2, 0, e1));
    CHECK(depth_oracle(a2, y2, e1) > 0);
    CHECK(strictly_deepened(a2, y2, 0, e1));
    CHECK(sandwich_test(a2, origin(a2), y2, 0));
}

TEST_CASE("destabilize postconditions on random unstable elements") {
    Sampler rng(21);
    for (const auto& g : acceptance_matrix()) {
        if (g.type == 'D' || g.type == 'G') continue;
        auto d = make_group(g);
        auto inv = invariant_system(d.datum);
        for (const auto& x : sample_points(d, 3, 11)) {
            GradedAlgebra G(d, x);
            for (const auto& r : G.residues()) {
                for (int k = 0; k < 6; ++k) {
                    GradedElement z = random_element(G, r, rng);
                    if (!unstable_test(G, inv, z) || is_zero(z)) continue;
                    try {
                        ApartmentPoint y = destabilize(G, inv, z);
                        CHECK(depth_oracle(d, y, f_embed(G, z)) > r);
                        CHECK(sandwich_test(d, x, y, r));
                    } catch (const NeedsConjugation&) {
                    }
                }
            }
        }
    }
}

TEST_CASE("deepening programs") {
    auto d = make_loop_datum('A', 1);
    auto at0 = deepening_lp(d, origin(d), 0);
    REQUIRE(at0.status == LPResult::Status::Optimal);
    CHECK(at0.s == 0);
    // e: y >= s, f t: 1 - y >= s, h t: 1 >= s, so s = 1/2 at y = 1/2.
    auto at_half = deepening_lp(d, pt({half}), half);
    REQUIRE(at_half.status == LPResult::Status::Optimal);
    CHECK(at_half.s == half);
    CHECK(at_half.y == pt({half}));
    CHECK(verify_dual(at_half.program, at_half.solution));
    auto hs = halfspaces_of(d, origin(d), 0);
    CHECK(reduce_halfspaces(hs).size() == 3);
}

TEST_CASE("deepening optimum dominates a grid") {
    Sampler rng(22);
    auto d = make_loop_datum('A', 2);
    for (const auto& x : sample_points(d, 3, 12))
        for (const auto& r : jump_set(d, x, Window{0, 1})) {
            auto res = deepening_lp(d, x, r);
            REQUIRE(res.status == LPResult::Status::Optimal);
            CHECK(deepening_value(d, x, r, res.y) == res.s);
            for (int k = 0; k < 20; ++k) {
                ApartmentPoint y{{rng.rational(4, 4), rng.rational(4, 4)}};
                CHECK(deepening_value(d, x, r, y) <= res.s);
            }
        }
}

TEST_CASE("centraliser labels") {
    auto d = make_loop_datum('A', 1);
    GradedAlgebra G0(d, origin(d));
    LieVec e = basis_vec(d.datum, 0), f = basis_vec(d.datum, 1), h = basis_vec(d.datum, 2);
    auto split = centralizer_label(G0, element(G0, 0, monomial(0, Scalar(3) * h)));
    CHECK(split.label == label(1, 1, {{0, 1}}, {1}));
    auto full = centralizer_label(G0, zero_element(G0, 0));
    CHECK(full.label == label(3, 0, {{0, 3}}, {2}));

    GradedAlgebra G(d, pt({half}));
    auto ell = centralizer_label(G, element(G, half, monomial(0, e) + monomial(1, f)));
    CHECK(ell.label == label(1, 0, {{half, 1}}, {1}));
    CHECK(ell.label != split.label);
    CHECK(ell.label.str() == "L(dim=1,split=0,support=[1/2:1],degrees=[1])");
    // The torus restricted to the quotient is the line through e + f t.
    auto sub = levi_restrict(d, ell.levi, G.x(), half);
    CHECK(sub.dim() == 1);
    auto split_sub = levi_restrict(d, split.levi, G0.x(), 0);
    CHECK(split_sub.dim() == 1);
}

TEST_CASE("strata of elements") {
    auto d = make_loop_datum('A', 1);
    auto inv = invariant_system(d.datum);
    GradedAlgebra G(d, pt({half}));
    LieVec e = basis_vec(d.datum, 0), f = basis_vec(d.datum, 1);
    CHECK(stratum_of(G, inv, element(G, half, monomial(0, e))).diamond);
    GradedElement z = element(G, half, monomial(0, e) + monomial(1, f));
    CHECK(stratum_of(G, inv, z) == label(1, 0, {{half, 1}}, {1}));
    CHECK(stratum_of(G, inv, jordan_decompose(G, z).first) == stratum_of(G, inv, z));
    CHECK(label_below(stratum_of(G, inv, z), diamond_label()));
    CHECK_FALSE(label_below(diamond_label(), stratum_of(G, inv, z)));
}

TEST_CASE("gen test on A2 Levis") {
    auto d = make_loop_datum('A', 2);
    GradedAlgebra G(d, origin(d));
    const RootDatum& a2 = d.datum;
    int R = a2.num_roots();
    auto cartan = [&](long c1, long c2) {
        return element(G, 0, monomial(0, Scalar(c1) * basis_vec(a2, R) + Scalar(c2) * basis_vec(a2, R + 1)));
    };
    // h1 + 2h2 is orthogonal to alpha1 only: a GL2-type Levi of dimension 2 + 2.
    REQUIRE(roots_on_wall(a2, 1, 2) == 2);
    auto L = centralizer_label(G, cartan(1, 2));
    CHECK(L.label.dimension == 2 + roots_on_wall(a2, 1, 2));
    CHECK(gen_test(G, full_levi(d, origin(d)), zero_element(G, 0)));
    CHECK(gen_test(G, L.levi, cartan(3, 6)));
    CHECK(gen_test(G, L.levi, cartan(-1, -2)));
    // 0 is central in L and lies on every wall.
    CHECK_FALSE(gen_test(G, L.levi, zero_element(G, 0)));
    // Elements off the centre of L are rejected.
    CHECK_THROWS_AS(gen_test(G, L.levi, cartan(2, 1)), std::invalid_argument);
    // For the maximal torus, 2h1 + h2 lies on the alpha2 wall and 1h1 + 3h2 on none.
    REQUIRE(roots_on_wall(a2, 2, 1) == 2);
    REQUIRE(roots_on_wall(a2, 1, 3) == 0);
    auto T = centralizer_label(G, cartan(1, 3));
    CHECK(T.label.dimension == 2);
    CHECK_FALSE(gen_test(G, T.levi, cartan(2, 1)));
    CHECK(gen_test(G, T.levi, cartan(1, 3)));
    CHECK(gen_test(G, T.levi, cartan(1, 0)) == (roots_on_wall(a2, 1, 0) == 0));
    CHECK(is_central(G, L.levi, cartan(1, 2)));
    CHECK_FALSE(is_central(G, L.levi, cartan(1, 0)));
}

TEST_CASE("labels are invariant under scaling") {
    Sampler rng(24);
    for (const auto& g : acceptance_matrix()) {
        if (g.type == 'D' || g.type == 'G') continue;
        auto d = make_group(g);
        auto inv = invariant_system(d.datum);
        for (const auto& x : sample_points(d, 2, 13)) {
            GradedAlgebra G(d, x);
            for (const auto& r : G.residues())
                for (const auto& z : basecase_samples(G, r, 6, 3)) {
                    if (!is_semisimple(G, z)) continue;
                    Scalar c = rng.coeff(3);
                    if (c.is_zero()) c = -3;
                    CHECK(stratum_of(G, inv, c * z) == stratum_of(G, inv, z));
                }
        }
    }
}

TEST_CASE("semicontinuity along lines in the Cartan subspace") {
    for (const auto& g : acceptance_matrix()) {
        if (g.type == 'D' || g.type == 'G') continue;
        auto d = make_group(g);
        for (const auto& x : sample_points(d, 2, 14)) {
            GradedAlgebra G(d, x);
            for (const auto& r : G.residues()) {
                auto c = cartan_subspace(G, r).basis;
                if (c.size() < 1) continue;
                GradedElement z0 = c[0], z1 = zero_element(G, r);
                for (size_t i = 0; i < c.size(); ++i) z1 = z1 + Scalar(static_cast<long>(i + 2)) * c[i];
                auto cdim = [&](const GradedElement& z) { return kernel(full_ad(G, z)).size(); };
                size_t at0 = cdim(z0);
                std::set<std::string> labels;
                for (int k = 1; k <= 8; ++k) {
                    GradedElement zu = z0 + Scalar(make_rat(k, 3)) * z1;
                    CHECK(cdim(zu) <= at0);
                    labels.insert(centralizer_label(G, zu).label.str());
                }
                CHECK(labels.size() <= 2);
            }
        }
    }
}

TEST_CASE("Levi compatibility of centraliser kernels") {
    auto d = make_loop_datum('A', 2);
    GradedAlgebra G(d, origin(d));
    const RootDatum& a2 = d.datum;
    int R = a2.num_roots();
    auto L = centralizer_label(G, element(G, 0, monomial(0, basis_vec(a2, R) + Scalar(2) * basis_vec(a2, R + 1))));
    // z = h1 + e1 lies in the Levi; its kernel inside the Levi is contained in its full kernel.
    LieVec zl = basis_vec(a2, R) + basis_vec(a2, 0);
    auto z = element(G, 0, monomial(0, zl));
    auto full_kernel = kernel(full_ad(G, z));
    for (const auto& [s, basis] : L.levi.pieces)
        for (const auto& b : basis) {
            LieVec v(a2.dim());
            for (const auto& [level, w] : b.terms) v = v + w;
            if (!is_zero(bracket(a2, zl, v))) continue;
            CHECK(in_span(full_kernel, v));
        }
}

TEST_CASE("lift alignment") {
    auto d = make_loop_datum('A', 1);
    GradedAlgebra G(d, pt({half}));
    LieVec e = basis_vec(d.datum, 0), f = basis_vec(d.datum, 1), h = basis_vec(d.datum, 2);
    GradedElement z = element(G, half, monomial(0, e) + monomial(1, f));
    LoopElement F = f_embed(G, z);
    Rat cap = 3;
    CHECK(align_lift(G, z, F, cap).g == F);
    for (Rat eps : {make_rat(1, 2), make_rat(-2, 3), Rat(3)}) {
        LoopElement g1 = exp_ad(d, G.x(), monomial(1, Scalar(eps) * h), F, cap);
        CHECK(g1 != F);
        auto res = align_lift(G, z, g1, cap);
        CHECK(truncate_depth(d, G.x(), res.g, half) == F);
        CHECK(loop_bracket(d.datum, F, res.g).is_zero());
        CHECK(truncate_depth(d, G.x(), align_lift(G, z, g1, half).g, half) == F);
    }
}

TEST_CASE("multi alignment") {
    auto d = make_loop_datum('A', 2);
    GradedAlgebra G(d, origin(d));
    const RootDatum& a2 = d.datum;
    int R = a2.num_roots();
    CHECK(multi_align(G, {}, 2).empty());
    GradedElement z1 = element(G, 0, monomial(0, basis_vec(a2, R) + Scalar(3) * basis_vec(a2, R + 1)));
    GradedElement z2 = element(G, 0, monomial(0, basis_vec(a2, R) + Scalar(2) * basis_vec(a2, R + 1)));
    auto out = multi_align(G, {z1, z2}, 2);
    REQUIRE(out.size() == 2);
    CHECK(out[0] == f_embed(G, z1));
    CHECK(out[1] == f_embed(G, z2));
    CHECK(loop_bracket(a2, out[0], out[1]).is_zero());
    auto one = multi_align(G, {z1}, 2);
    REQUIRE(one.size() == 1);
    CHECK(one[0] == align_lift(G, z1, f_embed(G, z1), 2).g);
}

TEST_CASE("base case verifier") {
    auto a1 = make_loop_datum('A', 1);
    auto inv1 = invariant_system(a1.datum);
    auto rep = verify_basecase(GradedAlgebra(a1, pt({half})), inv1, half, 16, 1);
    CHECK(rep.all_pass());
    std::set<std::string> got;
    for (const auto& s : rep.strata) got.insert(s.label.str());
    CHECK(got.count("L(dim=1,split=0,support=[1/2:1],degrees=[1])") == 1);
    for (const auto& s : rep.strata) CHECK((s.label.diamond || s.label == label(1, 0, {{half, 1}}, {1})));

    auto rep0 = verify_basecase(GradedAlgebra(a1, origin(a1)), inv1, 0, 16, 1);
    CHECK(rep0.all_pass());
    for (const auto& s : rep0.strata) CHECK((s.label.diamond || s.label == label(1, 1, {{0, 1}}, {1})));

    auto a2 = make_loop_datum('A', 2);
    auto rep2 = verify_basecase(GradedAlgebra(a2, origin(a2)), invariant_system(a2.datum), 0, 48, 2);
    CHECK(rep2.all_pass());
    std::set<std::string> labels2;
    for (const auto& s : rep2.strata) labels2.insert(s.label.str());
    LeviLabel torus = label(2, 2, {{0, 2}}, {1, 1}), gl2 = label(4, 1, {{0, 4}}, {1, 2});
    CHECK(labels2.count(torus.str()) == 1);
    CHECK(labels2.count(gl2.str()) == 1);
    for (const auto& s : rep2.strata) CHECK((s.label.diamond || s.label == torus || s.label == gl2));
}

TEST_CASE("serial and parallel verifiers agree") {
    auto d = make_loop_datum('A', 2, "swap");
    GradedAlgebra G(d, origin(d));
    auto inv = invariant_system(d.datum);
    for (const auto& r : G.residues()) {
        auto par = verify_basecase(G, inv, r, 24, 5, true);
        auto ser = verify_basecase(G, inv, r, 24, 5, false);
        CHECK(par.json() == ser.json());
        CHECK(par.all_pass());
    }
}
