#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "loopfilt/linalg.hpp"
#include "loopfilt/sample.hpp"

using namespace lf;

namespace {

Scalar random_scalar(Sampler& rng, int n) {
    std::vector<Rat> c(euler_phi(n));
    for (auto& q : c) q = rng.rational(4, 3);
    return Scalar(n, c);
}

Scalar eval_cyclotomic(int n) {
    const auto& phi = cyclotomic_poly(n);
    Scalar z = Scalar::zeta(1, n), acc, pw(1);
    for (const auto& c : phi) {
        acc += Scalar(Rat(c)) * pw;
        pw *= z;
    }
    return acc;
}

}  // namespace

TEST_CASE("rationals parse and print canonically") {
    CHECK(parse_rat("6/4") == make_rat(3, 2));
    CHECK(parse_rat("-1/3") == make_rat(-1, 3));
    CHECK(to_string(make_rat(-2, 4)) == "-1/2");
    CHECK(to_string(make_rat(4, 2)) == "2");
    CHECK(frac(make_rat(-1, 3)) == make_rat(2, 3));
    CHECK(floor_rat(make_rat(-1, 3)) == -1);
    CHECK_THROWS_AS(parse_rat("1/0"), DivisionByZero);
    CHECK_THROWS_AS(parse_rat("0.5"), std::invalid_argument);
}

TEST_CASE("cyclotomic products") {
    CHECK(Scalar::zeta(1, 4) * Scalar::zeta(1, 4) == Scalar(-1));
    CHECK(Scalar::zeta(1, 3) + Scalar::zeta(2, 3) == Scalar(-1));
    // (1+z)^-1 = -z - z^3 in Q(zeta_5): (1+z)(-z-z^3) = -(z+z^2+z^3+z^4) = 1.
    Scalar z = Scalar::zeta(1, 5);
    Scalar a = Scalar(1) + z;
    Scalar expected = -z - Scalar::zeta(3, 5);
    CHECK(a.inverse() == expected);
    CHECK(a.inverse() * a == Scalar(1));
    CHECK_THROWS_AS(Scalar().inverse(), DivisionByZero);
}

TEST_CASE("roots of unity") {
    CHECK(Scalar::zeta(0, 3) == Scalar(1));
    CHECK(Scalar::zeta(3, 3) == Scalar(1));
    CHECK(Scalar::zeta(2, 4) == Scalar(-1));
    CHECK(Scalar::zeta(-1, 6) * Scalar::zeta(1, 6) == Scalar(1));
}

TEST_CASE("cyclotomic identities for every supported conductor") {
    for (int n : {1, 2, 3, 4, 5, 6, 8, 12}) {
        CAPTURE(n);
        Scalar p(1);
        for (int k = 0; k < n; ++k) p *= Scalar::zeta(1, n);
        CHECK(p == Scalar(1));
        CHECK(eval_cyclotomic(n).is_zero());
    }
}

TEST_CASE("field axioms on random samples") {
    Sampler rng(11);
    for (int n : {1, 3, 4, 5, 8}) {
        for (int t = 0; t < 40; ++t) {
            Scalar a = random_scalar(rng, n), b = random_scalar(rng, n), c = random_scalar(rng, n);
            CAPTURE(a.str());
            CHECK((a * b) * c == a * (b * c));
            CHECK((a + b) * c == a * c + b * c);
            CHECK(a * b == b * a);
            if (!a.is_zero()) CHECK(a * a.inverse() == Scalar(1));
        }
    }
}

TEST_CASE("rationals mix with any conductor, distinct conductors do not") {
    Scalar z3 = Scalar::zeta(1, 3);
    CHECK((z3 + Scalar(1)).conductor() == 3);
    CHECK((z3 - z3).is_rational());
    CHECK_THROWS_AS(z3 * Scalar::zeta(1, 4), ConductorMismatch);
}

TEST_CASE("scalar text round trip") {
    Sampler rng(2);
    for (int n : {1, 3, 4}) {
        for (int t = 0; t < 10; ++t) {
            Scalar a = random_scalar(rng, n);
            CHECK(parse_scalar(a.str(), n) == a);
        }
    }
}

TEST_CASE("Laurent scalars") {
    auto t = [](const Scalar& c, const Rat& e, int n) { return LaurentScalar::monomial(c, e, n); };
    Rat h = make_rat(1, 2);
    CHECK(t(1, h, 2) * t(1, h, 2) == t(1, 1, 2));
    LaurentScalar s = t(1, 0, 1) + t(1, 1, 1);
    s += LaurentScalar(Scalar(-1));
    CHECK(s == t(1, 1, 1));
    Rat a = make_rat(1, 3), b = make_rat(2, 3);
    CHECK(t(Scalar::zeta(1, 3), a, 3) * t(Scalar::zeta(2, 3), b, 3) == t(1, 1, 3));
    CHECK(t(1, a, 3).at_one() == Scalar(1));
}

TEST_CASE("Laurent multiplication is commutative and degree additive") {
    Sampler rng(5);
    for (int k = 0; k < 30; ++k) {
        Rat e1 = make_rat(rng.uniform(-6, 6), 6), e2 = make_rat(rng.uniform(-6, 6), 6);
        Scalar c1 = random_scalar(rng, 3), c2 = random_scalar(rng, 3);
        if (c1.is_zero() || c2.is_zero()) continue;
        auto m1 = LaurentScalar::monomial(c1, e1, 6), m2 = LaurentScalar::monomial(c2, e2, 6);
        CHECK(m1 * m2 == m2 * m1);
        CHECK((m1 * m2).min_exponent() == e1 + e2);
    }
    CHECK_THROWS(LaurentScalar::monomial(1, make_rat(1, 2), 3));
}

TEST_CASE("Laurent exact division") {
    auto t = [](long c, long e) { return LaurentScalar::monomial(Scalar(c), Rat(e), 1); };
    LaurentScalar a = t(1, 0) + t(1, 1), b = t(1, 0) - t(1, 1);
    CHECK((a * b).divexact(b) == a);
    CHECK_THROWS_AS((a + t(1, 3)).divexact(b), std::domain_error);
}

TEST_CASE("characteristic polynomial routes agree") {
    Sampler rng(3);
    for (int k = 0; k < 40; ++k) {
        int n = k % 3 == 0 ? 3 : 1;
        size_t N = 1 + k % 6;
        SMatrix m(N, N);
        for (size_t i = 0; i < N; ++i)
            for (size_t j = 0; j < N; ++j)
                if (rng.uniform(0, 2)) m(i, j) = Scalar(rng.coeff(3)) * Scalar::zeta(rng.uniform(0, 2), n);
        Poly a = char_poly(m);
        trim(a);
        CHECK(a == char_poly_hessenberg(m));
    }
}

TEST_CASE("nilpotent and semisimple matrices") {
    SMatrix j(3, 3);
    j(0, 1) = 1;
    j(1, 2) = 1;
    CHECK(is_nilpotent_matrix(j));
    CHECK_FALSE(is_semisimple_matrix(j));
    SMatrix d(2, 2);
    d(0, 0) = 1;
    d(1, 1) = -1;
    CHECK(is_semisimple_matrix(d));
    CHECK_FALSE(is_nilpotent_matrix(d));
    // s = diag(2,2,5), u = e_{01}: commuting parts of s + u.
    SMatrix m(3, 3);
    m(0, 0) = 2;
    m(1, 1) = 2;
    m(2, 2) = 5;
    m(0, 1) = 1;
    auto [s, u] = jordan_matrix(m);
    SMatrix s_exp(3, 3), u_exp(3, 3);
    s_exp(0, 0) = 2;
    s_exp(1, 1) = 2;
    s_exp(2, 2) = 5;
    u_exp(0, 1) = 1;
    CHECK(s == s_exp);
    CHECK(u == u_exp);
}
