#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "loopfilt/rootdata.hpp"

#include <set>

using namespace lf;

namespace {

// Orbit of the simple roots under the simple reflections, from the Cartan matrix alone.
size_t reflection_closure(const RootDatum& d) {
    std::set<IVec> seen;
    std::vector<IVec> todo;
    for (int i = 0; i < d.rank; ++i) {
        IVec a(d.rank, 0);
        a[i] = 1;
        todo.push_back(a);
    }
    while (!todo.empty()) {
        IVec b = todo.back();
        todo.pop_back();
        if (!seen.insert(b).second) continue;
        for (int i = 0; i < d.rank; ++i) {
            int p = 0;
            for (int j = 0; j < d.rank; ++j) p += b[j] * d.cartan[i][j];
            IVec c = b;
            c[i] -= p;
            if (!seen.count(c)) todo.push_back(c);
        }
    }
    return seen.size();
}

// dim ker(sigma - 1) on all of g.
size_t fixed_dim_oracle(const RootDatum& d, const PinnedAutomorphism& s) {
    SMatrix m = s.matrix();
    for (int i = 0; i < d.dim(); ++i) m(i, i) -= Scalar(1);
    return kernel(m).size();
}

}  // namespace

TEST_CASE("sl2") {
    RootDatum d = build_root_datum('A', 1);
    CHECK(d.num_roots() == 2);
    CHECK(d.dim() == 3);
    LieVec e = basis_vec(d, 0), f = basis_vec(d, 1), h = basis_vec(d, 2);
    CHECK(bracket(d, e, f) == h);
    CHECK(bracket(d, h, e) == Scalar(2) * e);
    CHECK(bracket(d, h, f) == Scalar(-2) * f);
    CHECK(d.basis_label(0) == "e[1]");
    CHECK(d.basis_label(2) == "h1");
}

TEST_CASE("root counts match the reflection closure") {
    for (auto [t, n] : std::vector<std::pair<char, int>>{
             {'A', 1}, {'A', 2}, {'A', 3}, {'B', 2}, {'B', 3}, {'C', 3}, {'D', 4}, {'G', 2}, {'F', 4}}) {
        RootDatum d = build_root_datum(t, n);
        CAPTURE(t);
        CAPTURE(n);
        CHECK(static_cast<size_t>(d.num_roots()) == reflection_closure(d));
        CHECK(classified_root_count(t, n) == IVec{d.num_roots()});
    }
    CHECK(build_root_datum('A', 2).dim() == 8);
    CHECK(build_root_datum('G', 2).dim() == 14);
}

TEST_CASE("unsupported types") {
    CHECK_THROWS_AS(build_root_datum('H', 3), UnsupportedType);
    CHECK_THROWS_AS(build_root_datum('D', 3), UnsupportedType);
    CHECK_THROWS_AS(build_root_datum('E', 6), UnsupportedType);
    CHECK(build_root_datum('E', 6, 6).num_roots() == 72);
}

TEST_CASE("Cartan elements commute and root brackets follow the table") {
    RootDatum d = build_root_datum('A', 2);
    int R = d.num_roots();
    CHECK(is_zero(bracket(d, basis_vec(d, R), basis_vec(d, R + 1))));
    int sum = d.root_index({1, 1});
    REQUIRE(sum >= 0);
    LieVec b = bracket(d, basis_vec(d, 0), basis_vec(d, 1));
    LieVec expected = Scalar(d.N[0][1]) * basis_vec(d, sum);
    CHECK(b == expected);
    CHECK((d.N[0][1] == 1 || d.N[0][1] == -1));
}

TEST_CASE("Jacobi identity") {
    for (auto [t, n] : std::vector<std::pair<char, int>>{{'A', 1}, {'A', 2}, {'B', 2}, {'C', 2}, {'G', 2}})
        CHECK(check_jacobi(build_root_datum(t, n)));
    for (auto [t, n] : std::vector<std::pair<char, int>>{{'A', 3}, {'B', 3}, {'C', 3}, {'D', 4}})
        CHECK(check_jacobi(build_root_datum(t, n), 6));
}

TEST_CASE("pinned automorphisms") {
    RootDatum a1 = build_root_datum('A', 1);
    auto id = pinned_automorphism(a1, named_symmetry(a1, "none"));
    CHECK(id.order == 1);

    RootDatum a2 = build_root_datum('A', 2);
    auto swap = pinned_automorphism(a2, named_symmetry(a2, "swap"));
    CHECK(swap.order == 2);
    CHECK(preserves_brackets(a2, swap));
    CHECK(fixed_subalgebra_dim(a2, swap) == 3);
    CHECK(fixed_dim_oracle(a2, swap) == 3);
    Sl2Triple t = principal_sl2(a2);
    CHECK(swap.apply(t.e) == t.e);

    RootDatum a3 = build_root_datum('A', 3);
    auto s3 = pinned_automorphism(a3, named_symmetry(a3, "swap"));
    CHECK(preserves_brackets(a3, s3));
    CHECK(fixed_subalgebra_dim(a3, s3) == 10);
    CHECK(fixed_dim_oracle(a3, s3) == 10);

    RootDatum d4 = build_root_datum('D', 4);
    auto tri = pinned_automorphism(d4, named_symmetry(d4, "triality"));
    CHECK(tri.order == 3);
    CHECK(preserves_brackets(d4, tri));
    CHECK(fixed_subalgebra_dim(d4, tri) == 14);
    CHECK(fixed_dim_oracle(d4, tri) == 14);

    CHECK_THROWS_AS(named_symmetry(a1, "swap"), NotADiagramSymmetry);
    CHECK_THROWS_AS(pinned_automorphism(a2, {0, 0}), NotADiagramSymmetry);
}

TEST_CASE("principal sl2 triples") {
    RootDatum a1 = build_root_datum('A', 1);
    Sl2Triple t1 = principal_sl2(a1);
    CHECK(t1.e == basis_vec(a1, 0));
    CHECK(t1.f == basis_vec(a1, 1));
    CHECK(t1.h == basis_vec(a1, 2));

    // [e1 + e2, a f1 + b f2] = a h1 + b h2 = 2 h1 + 2 h2 forces a = b = 2.
    RootDatum a2 = build_root_datum('A', 2);
    Sl2Triple t = principal_sl2(a2);
    int R = a2.num_roots();
    CHECK(t.e == basis_vec(a2, 0) + basis_vec(a2, 1));
    CHECK(t.h == Scalar(2) * basis_vec(a2, R) + Scalar(2) * basis_vec(a2, R + 1));
    CHECK(t.f == Scalar(2) * basis_vec(a2, a2.negative_of(0)) + Scalar(2) * basis_vec(a2, a2.negative_of(1)));
    for (auto [ty, n] : std::vector<std::pair<char, int>>{{'B', 3}, {'C', 3}, {'D', 4}, {'G', 2}, {'F', 4}})
        CHECK(check_sl2(build_root_datum(ty, n), principal_sl2(build_root_datum(ty, n))));
}

TEST_CASE("serialisation is deterministic") {
    CHECK(serialize(build_root_datum('B', 3)) == serialize(build_root_datum('B', 3)));
    CHECK(serialize(build_root_datum('B', 3)) != serialize(build_root_datum('C', 3)));
}
