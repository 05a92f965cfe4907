#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "loopfilt/suite.hpp"

using namespace lf;

namespace {

ApartmentPoint pt(std::vector<Rat> c) { return ApartmentPoint{std::move(c)}; }
const Rat half = make_rat(1, 2);

BigradedPoint point(std::initializer_list<std::tuple<int, Rat, Scalar>> es) {
    BigradedPoint p;
    for (const auto& [s, e, c] : es) p.entries[{s, e}] = c;
    return p;
}

// exp(ad x) v for nilpotent ad x.
LieVec exp_ad_lie(const RootDatum& d, const LieVec& x, const LieVec& v) {
    LieVec out = v, term = v;
    for (int k = 1; k <= 2 * d.dim(); ++k) {
        term = Scalar(make_rat(1, k)) * bracket(d, x, term);
        if (is_zero(term)) break;
        out = out + term;
    }
    return out;
}

// Invariants through the representation, via the Hessenberg characteristic polynomial.
std::vector<Scalar> invariants_oracle(const InvariantSystem& inv, const LieVec& v) {
    SMatrix m(inv.rep_dim, inv.rep_dim);
    for (size_t a = 0; a < v.size(); ++a)
        if (!v[a].is_zero()) m = m + v[a] * inv.rep[a];
    Poly cp = char_poly_hessenberg(m);
    cp.resize(inv.rep_dim + 1);
    std::vector<Scalar> out;
    for (size_t s = 0; s < inv.degrees.size(); ++s) {
        int i = inv.degrees[s];
        Scalar c = cp[inv.rep_dim - i];
        out.push_back(i % 2 ? -c : c);
    }
    return out;
}

}  // namespace

TEST_CASE("representations are homomorphisms") {
    for (auto [t, n] : std::vector<std::pair<char, int>>{
             {'A', 1}, {'A', 2}, {'A', 3}, {'B', 2}, {'B', 3}, {'C', 2}, {'C', 3}, {'D', 4}, {'G', 2}}) {
        RootDatum d = build_root_datum(t, n);
        CAPTURE(t);
        CAPTURE(n);
        auto inv = invariant_system(d);
        CHECK(check_representation(d, inv));
        CHECK(inv.slots() == n);
    }
    auto d4 = invariant_system(build_root_datum('D', 4));
    CHECK(d4.labels == std::vector<std::string>{"2", "4", "6", "4'"});
    CHECK(invariant_system(build_root_datum('G', 2)).experimental);
}

TEST_CASE("invariants are invariant") {
    Sampler rng(12);
    for (auto [t, n] : std::vector<std::pair<char, int>>{{'A', 2}, {'B', 2}, {'C', 3}, {'D', 4}, {'G', 2}}) {
        RootDatum d = build_root_datum(t, n);
        auto inv = invariant_system(d);
        for (int k = 0; k < 4; ++k) {
            LieVec v(d.dim());
            for (auto& c : v) c = rng.coeff(2);
            int root = static_cast<int>(rng.uniform(0, d.num_roots() - 1));
            LieVec x = rng.coeff(2) * basis_vec(d, root);
            CHECK(invariants_of(inv, v) == invariants_of(inv, exp_ad_lie(d, x, v)));
            if (t != 'D') CHECK(invariants_of(inv, v) == invariants_oracle(inv, v));
        }
    }
}

TEST_CASE("q on loop elements of A1") {
    auto d = make_loop_datum('A', 1);
    auto inv = invariant_system(d.datum);
    LieVec e = basis_vec(d.datum, 0), f = basis_vec(d.datum, 1);
    CHECK(q_full(d, inv, LoopElement{}).is_zero());
    // det(lambda - [[0,1],[t,0]]) = lambda^2 - t.
    CHECK(q_full(d, inv, monomial(0, e) + monomial(1, f)) == point({{0, 1, Scalar(-1)}}));
    CHECK(q_full(d, inv, monomial(0, e)).is_zero());
    CHECK(q_full(d, inv, monomial(0, e) + monomial(3, f)) == point({{0, 3, Scalar(-1)}}));
    auto x = pt({half});
    CHECK(check_depth_bound(d, inv, x, half, monomial(0, e) + monomial(1, f)));
    CHECK(check_depth_bound(d, inv, x, half, monomial(0, e) + monomial(3, f)));
    CHECK_THROWS_AS(check_depth_bound(d, inv, x, half, monomial(0, f)), SupportViolation);
}

TEST_CASE("q on the graded quotient") {
    auto d = make_loop_datum('A', 1);
    auto inv = invariant_system(d.datum);
    GradedAlgebra G(d, pt({half}));
    LieVec e = basis_vec(d.datum, 0), f = basis_vec(d.datum, 1);
    auto z = from_loop(G, half, monomial(0, e) + monomial(1, f));
    REQUIRE(z.has_value());
    CHECK(q_xr(G, inv, *z) == point({{0, 1, Scalar(-1)}}));
    auto n = from_loop(G, half, monomial(0, e));
    CHECK(q_xr(G, inv, *n).is_zero());
    CHECK(q_xr(G, inv, *z).json(inv) == "{\"2,1\": \"-1\"}");
}

TEST_CASE("q_xr is homogeneous") {
    Sampler rng(14);
    for (const auto& g : acceptance_matrix()) {
        if (g.type == 'D') continue;
        auto d = make_group(g);
        auto inv = invariant_system(d.datum);
        for (const auto& x : sample_points(d, 2, 7)) {
            GradedAlgebra G(d, x);
            for (const auto& r : G.residues()) {
                GradedElement z = random_element(G, r, rng);
                Scalar c = rng.coeff(3);
                if (c.is_zero()) c = 2;
                auto q = q_xr(G, inv, z), qc = q_xr(G, inv, c * z);
                BigradedPoint scaled;
                for (const auto& [key, v] : q.entries) {
                    Scalar p(1);
                    for (int i = 0; i < inv.degrees[key.first]; ++i) p *= c;
                    scaled.entries[key] = p * v;
                }
                CHECK(qc == scaled);
            }
        }
    }
}

TEST_CASE("specialising t to 1") {
    Sampler rng(15);
    for (auto [t, n] : std::vector<std::pair<char, int>>{{'A', 1}, {'A', 2}, {'C', 2}}) {
        auto d = make_loop_datum(t, n);
        auto inv = invariant_system(d.datum);
        for (const auto& x : sample_points(d, 3, 8)) {
            GradedAlgebra G(d, x);
            for (const auto& r : G.residues()) {
                GradedElement z = random_element(G, r, rng);
                auto q = q_xr(G, inv, z);
                std::vector<Scalar> at_one(inv.slots());
                for (const auto& [key, v] : q.entries) at_one[key.first] += v;
                LieVec flat(d.dim());
                for (const auto& [level, v] : f_embed(G, z).terms) flat = flat + v;
                CHECK(at_one == invariants_of(inv, flat));
            }
        }
    }
}

TEST_CASE("unstable fibre on an exhaustive grid") {
    auto d = make_loop_datum('A', 1);
    auto inv = invariant_system(d.datum);
    GradedAlgebra G(d, pt({half}));
    int nilpotent = 0;
    for (int a = -2; a <= 2; ++a)
        for (int b = -2; b <= 2; ++b) {
            GradedElement z = zero_element(G, half);
            z.coeffs = {Scalar(a), Scalar(b)};
            bool nil = is_nilpotent(G, z);
            CHECK(q_xr(G, inv, z).is_zero() == nil);
            // ab = 0 exactly on the nilpotent cone of this grading.
            CHECK(nil == (a * b == 0));
            nilpotent += nil;
        }
    CHECK(nilpotent == 9);
}

TEST_CASE("exponent gate") {
    auto a1 = make_loop_datum('A', 1);
    auto inv = invariant_system(a1.datum);
    CHECK(exponent_gate(a1, inv, half));
    CHECK_FALSE(exponent_gate(a1, inv, make_rat(1, 3)));
    GradedAlgebra G(a1, pt({make_rat(1, 3)}));
    REQUIRE(G.dim(make_rat(1, 3)) == 1);
    CHECK(is_nilpotent(G, basis_element(G, make_rat(1, 3), 0)));
    auto ta2 = make_loop_datum('A', 2, "swap");
    CHECK(exponent_gate(ta2, invariant_system(ta2.datum), make_rat(1, 4)));
}

TEST_CASE("bad denominators force nilpotence") {
    Sampler rng(16);
    for (const auto& g : acceptance_matrix()) {
        if (g.type == 'D') continue;
        auto d = make_group(g);
        auto inv = invariant_system(d.datum);
        for (const auto& x : sample_points(d, 4, 9)) {
            GradedAlgebra G(d, x);
            for (const auto& r : G.residues()) {
                if (exponent_gate(d, inv, r)) continue;
                for (int i = 0; i < G.dim(r); ++i) CHECK(is_nilpotent(G, basis_element(G, r, i)));
                CHECK(is_nilpotent(G, random_element(G, r, rng)));
            }
        }
    }
}

TEST_CASE("Kostant slice of sl2") {
    RootDatum d = build_root_datum('A', 1);
    auto inv = invariant_system(d);
    auto s = kostant_slice(d);
    REQUIRE(s.basis.size() == 1);
    CHECK(kostant_point(s, {Scalar(0)}) == basis_vec(d, 0));
    CHECK(kostant_slice_eval(inv, s, {Scalar(0)}) == std::vector<Scalar>{Scalar(0)});
    CHECK(kostant_point(s, {Scalar(1)}) == basis_vec(d, 0) + basis_vec(d, 1));
    CHECK(kostant_slice_eval(inv, s, {Scalar(1)}) == std::vector<Scalar>{Scalar(-1)});
}

TEST_CASE("Kostant slice Jacobians") {
    Sampler rng(18);
    for (int n = 2; n <= 3; ++n) {
        RootDatum d = build_root_datum('A', n);
        auto inv = invariant_system(d);
        auto s = kostant_slice(d);
        REQUIRE(s.basis.size() == static_cast<size_t>(n));
        for (int k = 0; k < 5; ++k) {
            std::vector<Scalar> c(n);
            for (auto& v : c) v = rng.coeff(3);
            SMatrix J = slice_jacobian(inv, s, c);
            CHECK(lf::rank(J) == static_cast<size_t>(n));
            // Forward differences of the degree <= n+1 polynomial along each coordinate.
            int top = n + 1;
            for (int col = 0; col < n; ++col) {
                std::vector<std::vector<Scalar>> vals;
                for (int p = 0; p <= top; ++p) {
                    auto cc = c;
                    cc[col] += Scalar(p);
                    vals.push_back(kostant_slice_eval(inv, s, cc));
                }
                for (int row = 0; row < n; ++row) {
                    std::vector<Scalar> diff;
                    for (const auto& v : vals) diff.push_back(v[row]);
                    Scalar deriv;
                    for (int m = 1; m <= top; ++m) {
                        std::vector<Scalar> next;
                        for (size_t i = 0; i + 1 < diff.size(); ++i) next.push_back(diff[i + 1] - diff[i]);
                        diff = next;
                        deriv += Scalar(make_rat(m % 2 ? 1 : -1, m)) * diff[0];
                    }
                    CHECK(J(row, col) == deriv);
                }
            }
        }
    }
}
