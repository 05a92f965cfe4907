#pragma once

#include "loopfilt/exact.hpp"

#include <optional>
#include <vector>

namespace lf {

using Vec = std::vector<Scalar>;

bool is_zero(const Vec& v);
Vec operator+(const Vec& a, const Vec& b);
Vec operator-(const Vec& a, const Vec& b);
Vec operator*(const Scalar& c, const Vec& v);
Vec zero_vec(size_t n);
Vec unit_vec(size_t n, size_t i);

template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(size_t rows, size_t cols, const T& fill = T()) : r_(rows), c_(cols), a_(rows * cols, fill) {}

    size_t rows() const { return r_; }
    size_t cols() const { return c_; }
    T& operator()(size_t i, size_t j) { return a_[i * c_ + j]; }
    const T& operator()(size_t i, size_t j) const { return a_[i * c_ + j]; }

    static Matrix identity(size_t n) {
        Matrix m(n, n);
        for (size_t i = 0; i < n; ++i) m(i, i) = T(Scalar(1));
        return m;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        Matrix out(a.r_, b.c_);
        for (size_t i = 0; i < a.r_; ++i)
            for (size_t k = 0; k < a.c_; ++k) {
                const T& aik = a(i, k);
                if (aik.is_zero()) continue;
                for (size_t j = 0; j < b.c_; ++j)
                    if (!b(k, j).is_zero()) out(i, j) += aik * b(k, j);
            }
        return out;
    }
    friend Matrix operator+(Matrix a, const Matrix& b) {
        for (size_t i = 0; i < a.a_.size(); ++i) a.a_[i] += b.a_[i];
        return a;
    }
    friend Matrix operator-(Matrix a, const Matrix& b) {
        for (size_t i = 0; i < a.a_.size(); ++i) a.a_[i] -= b.a_[i];
        return a;
    }
    friend Matrix operator*(const Scalar& s, Matrix a) {
        for (auto& x : a.a_) x *= s;
        return a;
    }
    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_;
    }

    bool is_zero() const {
        for (const auto& x : a_)
            if (!x.is_zero()) return false;
        return true;
    }
    T trace() const {
        T t;
        for (size_t i = 0; i < r_ && i < c_; ++i) t += (*this)(i, i);
        return t;
    }

private:
    size_t r_ = 0, c_ = 0;
    std::vector<T> a_;
};

using SMatrix = Matrix<Scalar>;

SMatrix from_columns(const std::vector<Vec>& cols, size_t height);
Vec column(const SMatrix& m, size_t j);
Vec apply(const SMatrix& m, const Vec& v);

// In-place reduced row echelon form; returns pivot columns.
std::vector<size_t> rref(SMatrix& m);
size_t rank(SMatrix m);
// Basis of the right kernel, as column vectors.
std::vector<Vec> kernel(const SMatrix& m);
// Some solution of m x = b, if one exists.
std::optional<Vec> solve(const SMatrix& m, const Vec& b);
std::optional<SMatrix> inverse(const SMatrix& m);
// RREF basis of span(vectors).
std::vector<Vec> span_basis(const std::vector<Vec>& vectors);
size_t span_rank(const std::vector<Vec>& vectors);
bool in_span(const std::vector<Vec>& basis, const Vec& v);
std::vector<Vec> intersect(const std::vector<Vec>& a, const std::vector<Vec>& b);

// Polynomials over Scalar, lowest degree first, no trailing zeros.
using Poly = std::vector<Scalar>;
void trim(Poly& p);
Poly poly_mul(const Poly& a, const Poly& b);
Poly poly_sub(const Poly& a, const Poly& b);
void poly_divmod(const Poly& a, const Poly& b, Poly& q, Poly& r);
Poly poly_gcd(Poly a, Poly b);  // monic
Poly poly_derivative(const Poly& p);
SMatrix poly_eval(const Poly& p, const SMatrix& m);
std::string poly_str(const Poly& p);

Poly minimal_polynomial(const SMatrix& m);
// Characteristic polynomial via reduction to Hessenberg form.
Poly char_poly_hessenberg(SMatrix a);
bool is_squarefree(const Poly& p);
bool is_nilpotent_matrix(const SMatrix& m);
bool is_semisimple_matrix(const SMatrix& m);
// Chevalley-Jordan decomposition m = s + u via Newton iteration on the squarefree part.
std::pair<SMatrix, SMatrix> jordan_matrix(const SMatrix& m);

// Coefficients c_0..c_N of det(lambda*I - M) (c_N = 1), Faddeev-LeVerrier.
// Only c_{N-k} for k <= upto are computed; the rest are left zero.
template <class T>
std::vector<T> char_poly(const Matrix<T>& m, size_t upto = static_cast<size_t>(-1)) {
    size_t n = m.rows();
    std::vector<T> c(n + 1);
    c[n] = T(Scalar(1));
    Matrix<T> mk(n, n);
    for (size_t k = 1; k <= n && k <= upto; ++k) {
        Matrix<T> next = m * mk;
        for (size_t i = 0; i < n; ++i) next(i, i) += c[n - k + 1];
        mk = std::move(next);
        T tr;
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j)
                if (!m(i, j).is_zero() && !mk(j, i).is_zero()) tr += m(i, j) * mk(j, i);
        tr *= Scalar(make_rat(-1, static_cast<long>(k)));
        c[n - k] = tr;
    }
    return c;
}

// Pfaffian of a skew-symmetric matrix by expansion along the first row.
template <class T>
T pfaffian(const Matrix<T>& a) {
    size_t n = a.rows();
    if (n == 0) return T(Scalar(1));
    if (n % 2) return T();
    T total;
    for (size_t j = 1; j < n; ++j) {
        if (a(0, j).is_zero()) continue;
        Matrix<T> minor(n - 2, n - 2);
        std::vector<size_t> keep;
        for (size_t i = 1; i < n; ++i)
            if (i != j) keep.push_back(i);
        for (size_t p = 0; p < keep.size(); ++p)
            for (size_t q = 0; q < keep.size(); ++q) minor(p, q) = a(keep[p], keep[q]);
        T term = a(0, j) * pfaffian(minor);
        if (j % 2 == 0) term = -term;
        total += term;
    }
    return total;
}

// Rank over the fraction field by fraction-free (Bareiss) elimination.
// T must provide divexact.
template <class T>
size_t bareiss_rank(Matrix<T> m) {
    size_t rows = m.rows(), cols = m.cols(), r = 0;
    T prev(Scalar(1));
    for (size_t col = 0; col < cols && r < rows; ++col) {
        size_t piv = rows;
        for (size_t i = r; i < rows; ++i)
            if (!m(i, col).is_zero()) {
                piv = i;
                break;
            }
        if (piv == rows) continue;
        if (piv != r)
            for (size_t j = 0; j < cols; ++j) std::swap(m(piv, j), m(r, j));
        for (size_t i = r + 1; i < rows; ++i) {
            for (size_t j = col + 1; j < cols; ++j) {
                T v = m(r, col) * m(i, j) - m(i, col) * m(r, j);
                m(i, j) = v.divexact(prev);
            }
            m(i, col) = T();
        }
        prev = m(r, col);
        ++r;
    }
    return r;
}

}  // namespace lf
