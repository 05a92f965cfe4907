#include "loopfilt/exact.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <mutex>
#include <numeric>

namespace lf {

Rat make_rat(long num, long den) {
    if (den == 0) throw DivisionByZero("zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

static bool all_digits(const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

Rat parse_rat(const std::string& raw) {
    std::string text;
    for (char c : raw)
        if (!std::isspace(static_cast<unsigned char>(c))) text += c;
    std::string body = text;
    bool neg = false;
    if (!body.empty() && (body[0] == '-' || body[0] == '+')) {
        neg = body[0] == '-';
        body = body.substr(1);
    }
    auto slash = body.find('/');
    std::string num = body.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) throw std::invalid_argument("not a rational: '" + raw + "'");
    mpz_class d(den);
    if (d == 0) throw DivisionByZero("zero denominator in '" + raw + "'");
    Rat q(mpz_class(num), d);
    q.canonicalize();
    return neg ? Rat(-q) : q;
}

std::string to_string(const Rat& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

bool is_integer(const Rat& q) { return q.get_den() == 1; }

mpz_class floor_rat(const Rat& q) {
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return f;
}

Rat frac(const Rat& q) { return q - Rat(floor_rat(q)); }

int euler_phi(int n) {
    if (n <= 0) throw std::invalid_argument("conductor must be positive");
    int result = n, m = n;
    for (int p = 2; p * p <= m; ++p) {
        if (m % p) continue;
        while (m % p == 0) m /= p;
        result -= result / p;
    }
    if (m > 1) result -= result / m;
    return result;
}

namespace {

using ZPoly = std::vector<mpz_class>;

// Exact division of integer polynomials (divisor monic).
ZPoly zdiv(const ZPoly& a, const ZPoly& b) {
    ZPoly rem = a;
    size_t db = b.size() - 1;
    if (rem.size() < b.size()) return {0};
    ZPoly q(rem.size() - db, 0);
    for (size_t k = rem.size(); k-- > db;) {
        mpz_class c = rem[k];
        q[k - db] = c;
        for (size_t j = 0; j <= db; ++j) rem[k - db + j] -= c * b[j];
    }
    return q;
}

constexpr int kMaxConductor = 240;

const std::vector<ZPoly>& cyclotomic_table() {
    static const std::vector<ZPoly> table = [] {
        std::vector<ZPoly> t(kMaxConductor + 1);
        for (int n = 1; n <= kMaxConductor; ++n) {
            ZPoly p(n + 1, 0);
            p[0] = -1;
            p[n] = 1;
            for (int d = 1; d < n; ++d)
                if (n % d == 0) p = zdiv(p, t[d]);
            t[n] = p;
        }
        return t;
    }();
    return table;
}

using QPoly = std::vector<Rat>;

void qtrim(QPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

QPoly qsub(const QPoly& a, const QPoly& b) {
    QPoly r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    qtrim(r);
    return r;
}

QPoly qmul(const QPoly& a, const QPoly& b) {
    if (a.empty() || b.empty()) return {};
    QPoly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    qtrim(r);
    return r;
}

void qdivmod(const QPoly& a, const QPoly& b, QPoly& q, QPoly& r) {
    r = a;
    qtrim(r);
    q.assign(r.size() >= b.size() ? r.size() - b.size() + 1 : 0, 0);
    while (!r.empty() && r.size() >= b.size()) {
        size_t shift = r.size() - b.size();
        Rat c = r.back() / b.back();
        q[shift] = c;
        for (size_t j = 0; j < b.size(); ++j) r[shift + j] -= c * b[j];
        qtrim(r);
    }
    qtrim(q);
}

}  // namespace

const std::vector<mpz_class>& cyclotomic_poly(int n) {
    if (n <= 0 || n > kMaxConductor) throw std::invalid_argument("unsupported conductor " + std::to_string(n));
    return cyclotomic_table()[n];
}

// ---------------------------------------------------------------- Scalar

Scalar::Scalar() : n_(1), c_{Rat(0)} {}
Scalar::Scalar(long v) : n_(1), c_{Rat(v)} {}
Scalar::Scalar(const Rat& q, int) : n_(1), c_{q} {}

Scalar::Scalar(int n, std::vector<Rat> coeffs) : n_(n), c_(std::move(coeffs)) {
    const auto& phi = cyclotomic_poly(n);
    size_t deg = phi.size() - 1;
    if (c_.empty()) c_.push_back(0);
    for (size_t k = c_.size(); k-- > deg;) {
        Rat a = c_[k];
        if (a == 0) continue;
        for (size_t j = 0; j <= deg; ++j) c_[k - deg + j] -= a * phi[j];
    }
    c_.resize(deg, Rat(0));
    trim_conductor();
}

Scalar Scalar::zeta(long k, int n) {
    if (n <= 0) throw std::invalid_argument("conductor must be positive");
    long e = ((k % n) + n) % n;
    std::vector<Rat> c(e + 1, Rat(0));
    c[e] = 1;
    return Scalar(n, std::move(c));
}

void Scalar::trim_conductor() {
    if (n_ == 1) return;
    for (size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return;
    n_ = 1;
    c_.resize(1);
}

void Scalar::lift_to(int n) {
    if (n_ == n) return;
    c_.resize(euler_phi(n), Rat(0));
    n_ = n;
}

bool Scalar::is_zero() const { return n_ == 1 && c_[0] == 0; }
bool Scalar::is_one() const { return n_ == 1 && c_[0] == 1; }
bool Scalar::is_rational() const { return n_ == 1; }

Rat Scalar::rational_value() const {
    if (n_ != 1) throw std::domain_error("scalar is not rational: " + str());
    return c_[0];
}

int Scalar::unify(const Scalar& o) const {
    if (n_ == o.n_ || o.n_ == 1) return n_;
    if (n_ == 1) return o.n_;
    throw ConductorMismatch("conductors " + std::to_string(n_) + " and " + std::to_string(o.n_));
}

Scalar Scalar::operator-() const {
    Scalar r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
    int n = unify(o);
    lift_to(n);
    if (o.n_ == 1)
        c_[0] += o.c_[0];
    else
        for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    trim_conductor();
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
    int n = unify(o);
    lift_to(n);
    if (o.n_ == 1)
        c_[0] -= o.c_[0];
    else
        for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    trim_conductor();
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
    int n = unify(o);
    if (o.n_ == 1) {
        for (auto& c : c_) c *= o.c_[0];
        trim_conductor();
        return *this;
    }
    if (n_ == 1) {
        Rat k = c_[0];
        c_ = o.c_;
        n_ = o.n_;
        for (auto& c : c_) c *= k;
        trim_conductor();
        return *this;
    }
    std::vector<Rat> prod(c_.size() + o.c_.size() - 1, Rat(0));
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (size_t j = 0; j < o.c_.size(); ++j) prod[i + j] += c_[i] * o.c_[j];
    }
    *this = Scalar(n, std::move(prod));
    return *this;
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw DivisionByZero("inverse of zero scalar");
    if (n_ == 1) return Scalar(Rat(1) / c_[0]);
    // Extended Euclid: find u with u*a = 1 mod Phi_n.
    const auto& phi = cyclotomic_poly(n_);
    QPoly r0(phi.begin(), phi.end()), r1 = c_;
    qtrim(r1);
    QPoly s0, s1{Rat(1)};
    while (r1.size() > 1) {
        QPoly q, rem;
        qdivmod(r0, r1, q, rem);
        QPoly s2 = qsub(s0, qmul(q, s1));
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (r1.empty()) throw DivisionByZero("non-invertible residue");
    Rat inv = Rat(1) / r1[0];
    for (auto& c : s1) c *= inv;
    return Scalar(n_, s1);
}

Scalar& Scalar::operator/=(const Scalar& o) {
    if (o.is_zero()) throw DivisionByZero("division by zero scalar");
    unify(o);
    return *this *= o.inverse();
}

bool operator==(const Scalar& a, const Scalar& b) { return a.n_ == b.n_ && a.c_ == b.c_; }

bool operator<(const Scalar& a, const Scalar& b) {
    if (a.n_ != b.n_) return a.n_ < b.n_;
    return std::lexicographical_compare(a.c_.begin(), a.c_.end(), b.c_.begin(), b.c_.end());
}

std::string Scalar::str() const {
    if (n_ == 1) return to_string(c_[0]);
    std::string out;
    for (size_t k = 0; k < c_.size(); ++k) {
        const Rat& c = c_[k];
        if (c == 0) continue;
        Rat mag = abs(c);
        if (!out.empty() || c < 0) out += c < 0 ? "-" : "+";
        if (out == "+") out.clear();
        std::string mono = k == 0 ? "" : (k == 1 ? "z" : "z^" + std::to_string(k));
        if (mono.empty())
            out += to_string(mag);
        else if (mag == 1)
            out += mono;
        else
            out += to_string(mag) + "*" + mono;
    }
    return out + " [n=" + std::to_string(n_) + "]";
}

Scalar parse_scalar(const std::string& raw, int n) {
    std::string text;
    for (char c : raw)
        if (!std::isspace(static_cast<unsigned char>(c))) text += c;
    auto br = text.find("[n=");
    if (br != std::string::npos) {
        auto close = text.find(']', br);
        if (close == std::string::npos) throw std::invalid_argument("bad scalar: " + raw);
        n = std::stoi(text.substr(br + 3, close - br - 3));
        text = text.substr(0, br);
    }
    if (text.empty()) throw std::invalid_argument("empty scalar");
    std::vector<std::string> terms;
    size_t start = 0;
    for (size_t i = 1; i <= text.size(); ++i) {
        if (i == text.size() || ((text[i] == '+' || text[i] == '-') && text[i - 1] != '^')) {
            terms.push_back(text.substr(start, i - start));
            start = i;
        }
    }
    Scalar total;
    for (std::string term : terms) {
        if (term.empty() || term == "+" || term == "-") throw std::invalid_argument("bad scalar: " + raw);
        auto zpos = term.find('z');
        if (zpos == std::string::npos) {
            total += Scalar(parse_rat(term));
            continue;
        }
        long power = 1;
        auto caret = term.find('^', zpos);
        if (caret != std::string::npos) power = std::stol(term.substr(caret + 1));
        std::string coef = term.substr(0, zpos);
        if (!coef.empty() && coef.back() == '*') coef.pop_back();
        Rat c = 1;
        if (coef == "-")
            c = -1;
        else if (!coef.empty() && coef != "+")
            c = parse_rat(coef);
        total += Scalar(c) * Scalar::zeta(power, n);
    }
    return total;
}

// ---------------------------------------------------------- LaurentScalar

LaurentScalar::LaurentScalar(const Scalar& c, int n) : n_(n) {
    if (!c.is_zero()) terms_.emplace(Rat(0), c);
}

void LaurentScalar::check_exponent(const Rat& e) const {
    if (n_ % e.get_den() != 0)
        throw std::invalid_argument("exponent " + to_string(e) + " not in (1/" + std::to_string(n_) + ")Z");
}

LaurentScalar LaurentScalar::monomial(const Scalar& c, const Rat& e, int n) {
    LaurentScalar r(n);
    r.check_exponent(e);
    if (!c.is_zero()) r.terms_.emplace(e, c);
    return r;
}

int LaurentScalar::unify(const LaurentScalar& o) const {
    if (n_ == o.n_) return n_;
    if (o.n_ % n_ == 0) return o.n_;
    if (n_ % o.n_ == 0) return n_;
    throw ConductorMismatch("Laurent root orders " + std::to_string(n_) + " and " + std::to_string(o.n_));
}

Scalar LaurentScalar::coeff(const Rat& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Scalar() : it->second;
}

Rat LaurentScalar::min_exponent() const {
    if (terms_.empty()) throw std::domain_error("zero has no exponent");
    return terms_.begin()->first;
}

Rat LaurentScalar::max_exponent() const {
    if (terms_.empty()) throw std::domain_error("zero has no exponent");
    return terms_.rbegin()->first;
}

LaurentScalar LaurentScalar::operator-() const {
    LaurentScalar r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
}

LaurentScalar& LaurentScalar::operator+=(const LaurentScalar& o) {
    n_ = unify(o);
    for (const auto& [e, c] : o.terms_) {
        auto [it, fresh] = terms_.try_emplace(e, c);
        if (fresh) continue;
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
    return *this;
}

LaurentScalar& LaurentScalar::operator-=(const LaurentScalar& o) { return *this += -o; }

LaurentScalar& LaurentScalar::operator*=(const LaurentScalar& o) {
    int n = unify(o);
    std::map<Rat, Scalar> out;
    for (const auto& [e1, c1] : terms_)
        for (const auto& [e2, c2] : o.terms_) {
            Rat e = e1 + e2;
            auto [it, fresh] = out.try_emplace(e, c1 * c2);
            if (!fresh) it->second += c1 * c2;
        }
    std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
    terms_ = std::move(out);
    n_ = n;
    return *this;
}

LaurentScalar& LaurentScalar::operator*=(const Scalar& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, v] : terms_) v *= c;
    return *this;
}

bool operator==(const LaurentScalar& a, const LaurentScalar& b) { return a.terms_ == b.terms_; }

LaurentScalar LaurentScalar::divexact(const LaurentScalar& b) const {
    if (b.is_zero()) throw DivisionByZero("Laurent division by zero");
    int n = unify(b);
    if (is_zero()) return LaurentScalar(n);
    // Work with integer exponents k = e*n.
    auto to_poly = [n](const LaurentScalar& x, mpz_class& shift) {
        Rat lo = x.min_exponent() * n;
        shift = lo.get_num();
        Rat hi = x.max_exponent() * n;
        size_t len = mpz_class(hi.get_num() - shift).get_ui() + 1;
        std::vector<Scalar> p(len);
        for (const auto& [e, c] : x.terms()) {
            Rat k = e * n;
            p[mpz_class(k.get_num() - shift).get_ui()] = c;
        }
        return p;
    };
    mpz_class sa, sb;
    auto A = to_poly(*this, sa);
    auto B = to_poly(b, sb);
    if (A.size() < B.size()) throw std::domain_error("Laurent divexact: not divisible");
    std::vector<Scalar> Q(A.size() - B.size() + 1);
    Scalar lead_inv = B.back().inverse();
    for (size_t sh = Q.size(); sh-- > 0;) {
        Scalar c = A[sh + B.size() - 1] * lead_inv;
        Q[sh] = c;
        if (!c.is_zero())
            for (size_t j = 0; j < B.size(); ++j) A[sh + j] -= c * B[j];
    }
    for (const auto& a : A)
        if (!a.is_zero()) throw std::domain_error("Laurent divexact: not divisible");
    LaurentScalar out(n);
    mpz_class base = sa - sb;
    for (size_t i = 0; i < Q.size(); ++i) {
        if (Q[i].is_zero()) continue;
        Rat e(mpz_class(base + static_cast<long>(i)), mpz_class(n));
        e.canonicalize();
        out.terms_.emplace(e, Q[i]);
    }
    return out;
}

Scalar LaurentScalar::at_one() const {
    Scalar s;
    for (const auto& [e, c] : terms_) s += c;
    return s;
}

std::string LaurentScalar::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [e, c] : terms_) {
        if (!out.empty()) out += " + ";
        std::string cs = c.is_rational() ? c.str() : "(" + c.str() + ")";
        if (e == 0) {
            out += cs;
            continue;
        }
        std::string es = is_integer(e) ? to_string(e) : "(" + to_string(e) + ")";
        out += cs + "*t^" + es;
    }
    return out;
}

}  // namespace lf
