#pragma once

#include <gmpxx.h>

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace lf {

using Rat = mpq_class;

struct DivisionByZero : std::domain_error {
    using std::domain_error::domain_error;
};

struct ConductorMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

Rat make_rat(long num, long den = 1);
// Accepts "p", "-p", "p/q".
Rat parse_rat(const std::string& text);
std::string to_string(const Rat& q);
bool is_integer(const Rat& q);
mpz_class floor_rat(const Rat& q);
// Fractional part in [0,1).
Rat frac(const Rat& q);

int euler_phi(int n);
// Integer coefficients of the n-th cyclotomic polynomial, lowest degree first.
const std::vector<mpz_class>& cyclotomic_poly(int n);

// Element of Q(zeta_n), stored as the reduced residue modulo Phi_n.
class Scalar {
public:
    Scalar();
    Scalar(long v);  // NOLINT: rational constants embed implicitly
    Scalar(const Rat& q, int n = 1);
    Scalar(int n, std::vector<Rat> coeffs);

    static Scalar zeta(long k, int n);

    int conductor() const { return n_; }
    const std::vector<Rat>& coeffs() const { return c_; }
    bool is_zero() const;
    bool is_one() const;
    bool is_rational() const;
    Rat rational_value() const;  // throws unless is_rational()

    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);
    Scalar inverse() const;

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
    friend bool operator==(const Scalar& a, const Scalar& b);
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    // Total order used only to build canonical keys.
    friend bool operator<(const Scalar& a, const Scalar& b);

    std::string str() const;

private:
    int n_;
    std::vector<Rat> c_;
    int unify(const Scalar& o) const;
    void lift_to(int n);
    void trim_conductor();
};

Scalar parse_scalar(const std::string& text, int n);

// Finite Laurent polynomial in t^(1/n) with Scalar coefficients.
class LaurentScalar {
public:
    explicit LaurentScalar(int n = 1) : n_(n) {}
    LaurentScalar(const Scalar& c, int n = 1);  // NOLINT
    static LaurentScalar monomial(const Scalar& c, const Rat& exponent, int n);

    int root_order() const { return n_; }
    const std::map<Rat, Scalar>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    Scalar coeff(const Rat& exponent) const;
    Rat min_exponent() const;  // throws on zero
    Rat max_exponent() const;

    LaurentScalar operator-() const;
    LaurentScalar& operator+=(const LaurentScalar& o);
    LaurentScalar& operator-=(const LaurentScalar& o);
    LaurentScalar& operator*=(const LaurentScalar& o);
    LaurentScalar& operator*=(const Scalar& c);
    friend LaurentScalar operator+(LaurentScalar a, const LaurentScalar& b) { return a += b; }
    friend LaurentScalar operator-(LaurentScalar a, const LaurentScalar& b) { return a -= b; }
    friend LaurentScalar operator*(LaurentScalar a, const LaurentScalar& b) { return a *= b; }
    friend LaurentScalar operator*(LaurentScalar a, const Scalar& c) { return a *= c; }
    friend bool operator==(const LaurentScalar& a, const LaurentScalar& b);
    friend bool operator!=(const LaurentScalar& a, const LaurentScalar& b) { return !(a == b); }

    // Exact quotient; throws std::domain_error if b does not divide *this.
    LaurentScalar divexact(const LaurentScalar& b) const;
    // Substitute t = 1.
    Scalar at_one() const;

    std::string str() const;

private:
    int n_;
    std::map<Rat, Scalar> terms_;
    void check_exponent(const Rat& e) const;
    int unify(const LaurentScalar& o) const;
};

}  // namespace lf
