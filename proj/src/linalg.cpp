#include "loopfilt/linalg.hpp"

#include <stdexcept>

namespace lf {

bool is_zero(const Vec& v) {
    for (const auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

Vec operator+(const Vec& a, const Vec& b) {
    Vec r = a;
    for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

Vec operator-(const Vec& a, const Vec& b) {
    Vec r = a;
    for (size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}

Vec operator*(const Scalar& c, const Vec& v) {
    Vec r = v;
    for (auto& x : r) x *= c;
    return r;
}

Vec zero_vec(size_t n) { return Vec(n); }

Vec unit_vec(size_t n, size_t i) {
    Vec v(n);
    v[i] = Scalar(1);
    return v;
}

SMatrix from_columns(const std::vector<Vec>& cols, size_t height) {
    SMatrix m(height, cols.size());
    for (size_t j = 0; j < cols.size(); ++j)
        for (size_t i = 0; i < height; ++i) m(i, j) = cols[j][i];
    return m;
}

Vec column(const SMatrix& m, size_t j) {
    Vec v(m.rows());
    for (size_t i = 0; i < m.rows(); ++i) v[i] = m(i, j);
    return v;
}

Vec apply(const SMatrix& m, const Vec& v) {
    Vec out(m.rows());
    for (size_t j = 0; j < m.cols(); ++j) {
        if (v[j].is_zero()) continue;
        for (size_t i = 0; i < m.rows(); ++i)
            if (!m(i, j).is_zero()) out[i] += m(i, j) * v[j];
    }
    return out;
}

std::vector<size_t> rref(SMatrix& m) {
    std::vector<size_t> pivots;
    size_t r = 0;
    for (size_t col = 0; col < m.cols() && r < m.rows(); ++col) {
        size_t piv = m.rows();
        for (size_t i = r; i < m.rows(); ++i)
            if (!m(i, col).is_zero()) {
                piv = i;
                break;
            }
        if (piv == m.rows()) continue;
        if (piv != r)
            for (size_t j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(r, j));
        Scalar inv = m(r, col).inverse();
        for (size_t j = col; j < m.cols(); ++j) m(r, j) *= inv;
        for (size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, col).is_zero()) continue;
            Scalar f = m(i, col);
            for (size_t j = col; j < m.cols(); ++j)
                if (!m(r, j).is_zero()) m(i, j) -= f * m(r, j);
        }
        pivots.push_back(col);
        ++r;
    }
    return pivots;
}

size_t rank(SMatrix m) { return rref(m).size(); }

std::vector<Vec> kernel(const SMatrix& m0) {
    SMatrix m = m0;
    auto piv = rref(m);
    std::vector<bool> is_piv(m.cols(), false);
    for (auto p : piv) is_piv[p] = true;
    std::vector<Vec> basis;
    for (size_t f = 0; f < m.cols(); ++f) {
        if (is_piv[f]) continue;
        Vec v(m.cols());
        v[f] = Scalar(1);
        for (size_t k = 0; k < piv.size(); ++k) v[piv[k]] = -m(k, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<Vec> solve(const SMatrix& a, const Vec& b) {
    SMatrix m(a.rows(), a.cols() + 1);
    for (size_t i = 0; i < a.rows(); ++i) {
        for (size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
        m(i, a.cols()) = b[i];
    }
    auto piv = rref(m);
    if (!piv.empty() && piv.back() == a.cols()) return std::nullopt;
    Vec x(a.cols());
    for (size_t k = 0; k < piv.size(); ++k) x[piv[k]] = m(k, a.cols());
    return x;
}

std::optional<SMatrix> inverse(const SMatrix& a) {
    size_t n = a.rows();
    SMatrix m(n, 2 * n);
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) m(i, j) = a(i, j);
        m(i, n + i) = Scalar(1);
    }
    auto piv = rref(m);
    if (piv.size() < n || piv[n - 1] != n - 1) return std::nullopt;
    SMatrix inv(n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) inv(i, j) = m(i, n + j);
    return inv;
}

std::vector<Vec> span_basis(const std::vector<Vec>& vectors) {
    if (vectors.empty()) return {};
    size_t dim = vectors.front().size();
    SMatrix m(vectors.size(), dim);
    for (size_t i = 0; i < vectors.size(); ++i)
        for (size_t j = 0; j < dim; ++j) m(i, j) = vectors[i][j];
    auto piv = rref(m);
    std::vector<Vec> out;
    for (size_t k = 0; k < piv.size(); ++k) {
        Vec row(dim);
        for (size_t j = 0; j < dim; ++j) row[j] = m(k, j);
        out.push_back(std::move(row));
    }
    return out;
}

size_t span_rank(const std::vector<Vec>& vectors) { return span_basis(vectors).size(); }

bool in_span(const std::vector<Vec>& basis, const Vec& v) {
    auto with = basis;
    with.push_back(v);
    return span_rank(with) == span_rank(basis);
}

std::vector<Vec> intersect(const std::vector<Vec>& a, const std::vector<Vec>& b) {
    if (a.empty() || b.empty()) return {};
    size_t dim = a.front().size();
    std::vector<Vec> cols = a;
    for (const auto& v : b) cols.push_back(Scalar(-1) * v);
    auto ker = kernel(from_columns(cols, dim));
    std::vector<Vec> out;
    for (const auto& k : ker) {
        Vec v(dim);
        for (size_t i = 0; i < a.size(); ++i)
            if (!k[i].is_zero()) v = v + k[i] * a[i];
        out.push_back(std::move(v));
    }
    return span_basis(out);
}

// ------------------------------------------------------------ polynomials

void trim(Poly& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

Poly poly_mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    trim(r);
    return r;
}

Poly poly_sub(const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()));
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    trim(r);
    return r;
}

void poly_divmod(const Poly& a, const Poly& b0, Poly& q, Poly& r) {
    Poly b = b0;
    trim(b);
    if (b.empty()) throw DivisionByZero("polynomial division by zero");
    r = a;
    trim(r);
    q.assign(r.size() >= b.size() ? r.size() - b.size() + 1 : 0, Scalar());
    Scalar lead_inv = b.back().inverse();
    while (!r.empty() && r.size() >= b.size()) {
        size_t sh = r.size() - b.size();
        Scalar c = r.back() * lead_inv;
        q[sh] = c;
        for (size_t j = 0; j < b.size(); ++j) r[sh + j] -= c * b[j];
        r.pop_back();
        trim(r);
    }
    trim(q);
}

Poly poly_gcd(Poly a, Poly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly q, r;
        poly_divmod(a, b, q, r);
        a = std::move(b);
        b = std::move(r);
    }
    if (a.empty()) return a;
    Scalar inv = a.back().inverse();
    for (auto& c : a) c *= inv;
    return a;
}

Poly poly_derivative(const Poly& p) {
    Poly d;
    for (size_t i = 1; i < p.size(); ++i) d.push_back(Scalar(static_cast<long>(i)) * p[i]);
    trim(d);
    return d;
}

SMatrix poly_eval(const Poly& p, const SMatrix& m) {
    size_t n = m.rows();
    SMatrix acc(n, n);
    for (size_t k = p.size(); k-- > 0;) {
        acc = acc * m;
        for (size_t i = 0; i < n; ++i) acc(i, i) += p[k];
    }
    return acc;
}

std::string poly_str(const Poly& p) {
    if (p.empty()) return "0";
    std::string out;
    for (size_t k = p.size(); k-- > 0;) {
        if (p[k].is_zero()) continue;
        if (!out.empty()) out += " + ";
        std::string c = p[k].is_rational() ? p[k].str() : "(" + p[k].str() + ")";
        if (k == 0)
            out += c;
        else
            out += c + "*x^" + std::to_string(k);
    }
    return out;
}

// ------------------------------------------------------- matrix functions

Poly minimal_polynomial(const SMatrix& m) {
    size_t n = m.rows();
    size_t len = n * n;
    struct Row {
        Vec v;
        Poly coeff;
        size_t pivot;
    };
    std::vector<Row> rows;
    SMatrix power = SMatrix::identity(n);
    for (size_t k = 0; k <= n; ++k) {
        Vec v(len);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) v[i * n + j] = power(i, j);
        Poly coeff(k + 1);
        coeff[k] = Scalar(1);
        for (const auto& row : rows) {
            if (v[row.pivot].is_zero()) continue;
            Scalar f = v[row.pivot] / row.v[row.pivot];
            for (size_t t = 0; t < len; ++t)
                if (!row.v[t].is_zero()) v[t] -= f * row.v[t];
            for (size_t t = 0; t < row.coeff.size(); ++t) coeff[t] -= f * row.coeff[t];
        }
        size_t piv = len;
        for (size_t t = 0; t < len; ++t)
            if (!v[t].is_zero()) {
                piv = t;
                break;
            }
        if (piv == len) {
            trim(coeff);
            return coeff;
        }
        rows.push_back({std::move(v), std::move(coeff), piv});
        power = power * m;
    }
    throw std::logic_error("minimal polynomial exceeded dimension");
}

bool is_squarefree(const Poly& p) {
    Poly g = poly_gcd(p, poly_derivative(p));
    return g.size() <= 1;
}

Poly char_poly_hessenberg(SMatrix a) {
    size_t n = a.rows();
    // Similarity reduction to upper Hessenberg form.
    for (size_t k = 0; k + 2 < n; ++k) {
        size_t piv = n;
        for (size_t i = k + 1; i < n; ++i)
            if (!a(i, k).is_zero()) {
                piv = i;
                break;
            }
        if (piv == n) continue;
        if (piv != k + 1) {
            for (size_t j = 0; j < n; ++j) std::swap(a(piv, j), a(k + 1, j));
            for (size_t i = 0; i < n; ++i) std::swap(a(i, piv), a(i, k + 1));
        }
        Scalar inv = a(k + 1, k).inverse();
        for (size_t i = k + 2; i < n; ++i) {
            if (a(i, k).is_zero()) continue;
            Scalar f = a(i, k) * inv;
            for (size_t j = 0; j < n; ++j)
                if (!a(k + 1, j).is_zero()) a(i, j) -= f * a(k + 1, j);
            for (size_t r = 0; r < n; ++r)
                if (!a(r, i).is_zero()) a(r, k + 1) += f * a(r, i);
        }
    }
    // p_m = (x - h_{m-1,m-1}) p_{m-1} - sum_i h_{m-1-i,m-1} (prod_j h_{m-j,m-j-1}) p_{m-1-i}
    std::vector<Poly> p(n + 1);
    p[0] = {Scalar(1)};
    for (size_t m = 1; m <= n; ++m) {
        Poly cur = poly_mul({-a(m - 1, m - 1), Scalar(1)}, p[m - 1]);
        Scalar prod(1);
        for (size_t i = 1; i < m; ++i) {
            prod *= a(m - i, m - i - 1);
            if (prod.is_zero()) break;
            Scalar c = a(m - 1 - i, m - 1) * prod;
            if (c.is_zero()) continue;
            cur = poly_sub(cur, poly_mul({c}, p[m - 1 - i]));
        }
        trim(cur);
        p[m] = std::move(cur);
    }
    return p[n];
}

bool is_nilpotent_matrix(const SMatrix& m) {
    size_t n = m.rows();
    if (n == 0) return true;
    if (!m.trace().is_zero()) return false;
    Poly cp = char_poly_hessenberg(m);
    for (size_t i = 0; i < n; ++i)
        if (!cp[i].is_zero()) return false;
    return true;
}

bool is_semisimple_matrix(const SMatrix& m) { return is_squarefree(minimal_polynomial(m)); }

std::pair<SMatrix, SMatrix> jordan_matrix(const SMatrix& m) {
    Poly mp = minimal_polynomial(m);
    Poly g = poly_gcd(mp, poly_derivative(mp));
    Poly q, r;
    poly_divmod(mp, g, q, r);
    Poly dq = poly_derivative(q);
    SMatrix s = m;
    for (int iter = 0; iter < 64; ++iter) {
        SMatrix qs = poly_eval(q, s);
        if (qs.is_zero()) return {s, m - s};
        auto inv = inverse(poly_eval(dq, s));
        if (!inv) throw std::logic_error("Jordan Newton step: derivative not invertible");
        s = s - qs * *inv;
    }
    throw std::logic_error("Jordan Newton iteration did not converge");
}

}  // namespace lf
