#include "loopfilt/invmap.hpp"

#include <algorithm>
#include <sstream>

namespace lf {

namespace {

SMatrix unit(int m, int i, int j) {
    SMatrix e(m, m);
    e(i, j) = Scalar(1);
    return e;
}

SMatrix transpose(const SMatrix& a) {
    SMatrix t(a.cols(), a.rows());
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
    return t;
}

SMatrix commutator(const SMatrix& a, const SMatrix& b) { return a * b - b * a; }

// Raising operators of the standard representation of a classical algebra.
std::vector<SMatrix> classical_raising(const RootDatum& d, int& m, SMatrix& form) {
    int n = d.rank;
    std::vector<SMatrix> E;
    switch (d.type) {
        case 'A':
            m = n + 1;
            for (int i = 0; i < n; ++i) E.push_back(unit(m, i, i + 1));
            break;
        case 'B':
            // Basis v0, e_1..e_n, e_{-1}..e_{-n}; form pairs e_k with e_{-k}.
            m = 2 * n + 1;
            form = SMatrix(m, m);
            form(0, 0) = Scalar(1);
            for (int k = 1; k <= n; ++k) form(k, n + k) = form(n + k, k) = Scalar(1);
            for (int i = 0; i + 1 < n; ++i) E.push_back(unit(m, i + 1, i + 2) - unit(m, n + i + 2, n + i + 1));
            E.push_back(unit(m, n, 0) - unit(m, 0, 2 * n));
            break;
        case 'C':
            m = 2 * n;
            for (int i = 0; i + 1 < n; ++i) E.push_back(unit(m, i, i + 1) - unit(m, n + i + 1, n + i));
            E.push_back(unit(m, n - 1, 2 * n - 1));
            break;
        case 'D':
            m = 2 * n;
            form = SMatrix(m, m);
            for (int k = 0; k < n; ++k) form(k, n + k) = form(n + k, k) = Scalar(1);
            for (int i = 0; i + 1 < n; ++i) E.push_back(unit(m, i, i + 1) - unit(m, n + i + 1, n + i));
            E.push_back(unit(m, n - 2, 2 * n - 1) - unit(m, n - 1, 2 * n - 2));
            break;
        default:
            throw UnsupportedTypeForInvariants("no standard representation");
    }
    return E;
}

// Extend images of e_{+-alpha_i} to the whole Chevalley basis via brackets.
std::vector<SMatrix> extend_representation(const RootDatum& d, const std::vector<SMatrix>& E,
                                           const std::vector<SMatrix>& F) {
    int R = d.num_roots(), N = d.dim();
    std::vector<SMatrix> rep(N);
    std::vector<bool> done(N, false);
    for (int i = 0; i < d.rank; ++i) {
        rep[i] = E[i];
        rep[d.negative_of(i)] = F[i];
        rep[R + i] = commutator(E[i], F[i]);
        done[i] = done[d.negative_of(i)] = done[R + i] = true;
    }
    // Roots in order of height: beta = +-alpha_i + gamma with gamma lower.
    std::vector<int> order(R);
    for (int a = 0; a < R; ++a) order[a] = a;
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return std::abs(d.height(a)) < std::abs(d.height(b)); });
    for (int b : order) {
        if (done[b]) continue;
        int sgn = d.height(b) > 0 ? 1 : -1;
        for (int i = 0; i < d.rank; ++i) {
            IVec g = d.roots[b];
            g[i] -= sgn;
            int gi = d.root_index(g);
            if (gi < 0 || !done[gi]) continue;
            int si = sgn > 0 ? i : d.negative_of(i);
            LieVec br = bracket(d, basis_vec(d, si), basis_vec(d, gi));
            rep[b] = Scalar(1) / br[b] * commutator(rep[si], rep[gi]);
            done[b] = true;
            break;
        }
        if (!done[b]) throw std::logic_error("representation extension failed");
    }
    return rep;
}

IVec exceptional_degrees(char type, int rank) {
    switch (type) {
        case 'G': return {2, 6};
        case 'F': return {2, 6, 8, 12};
        case 'E':
            if (rank == 6) return {2, 5, 6, 8, 9, 12};
            if (rank == 7) return {2, 6, 8, 10, 12, 14, 18};
            if (rank == 8) return {2, 8, 12, 14, 18, 20, 24, 30};
    }
    throw UnsupportedTypeForInvariants(std::string("no invariant table for type ") + type);
}

}  // namespace

InvariantSystem invariant_system(const RootDatum& d) {
    InvariantSystem inv;
    int N = d.dim();
    if (d.type == 'A' || d.type == 'B' || d.type == 'C' || d.type == 'D') {
        int m = 0;
        auto E = classical_raising(d, m, inv.form);
        std::vector<SMatrix> F;
        for (const auto& e : E) {
            SMatrix f = transpose(e);
            SMatrix twice = commutator(commutator(e, f), e);
            // twice = c * e; rescale f so that the bracket gives 2e.
            Scalar c;
            for (size_t i = 0; i < e.rows() && c.is_zero(); ++i)
                for (size_t j = 0; j < e.cols(); ++j)
                    if (!e(i, j).is_zero()) {
                        c = twice(i, j) / e(i, j);
                        break;
                    }
            F.push_back(Scalar(2) / c * f);
        }
        inv.rep_dim = m;
        inv.rep = extend_representation(d, E, F);
        int n = d.rank;
        auto add = [&](int deg, InvariantSystem::Kind k) {
            inv.degrees.push_back(deg);
            inv.kinds.push_back(k);
        };
        switch (d.type) {
            case 'A':
                for (int i = 2; i <= n + 1; ++i) add(i, InvariantSystem::Kind::CharCoeff);
                break;
            case 'B':
            case 'C':
                for (int i = 2; i <= 2 * n; i += 2) add(i, InvariantSystem::Kind::CharCoeff);
                break;
            case 'D':
                for (int i = 2; i <= 2 * n - 2; i += 2) add(i, InvariantSystem::Kind::CharCoeff);
                add(n, InvariantSystem::Kind::Pfaffian);
                break;
        }
    } else {
        inv.experimental = true;
        inv.rep_dim = N;
        for (int a = 0; a < N; ++a) inv.rep.push_back(ad_matrix(d, basis_vec(d, a)));
        for (int deg : exceptional_degrees(d.type, d.rank)) {
            inv.degrees.push_back(deg);
            inv.kinds.push_back(InvariantSystem::Kind::CharCoeff);
        }
    }
    for (size_t s = 0; s < inv.degrees.size(); ++s) {
        std::string l = std::to_string(inv.degrees[s]);
        for (size_t t = 0; t < s; ++t)
            if (inv.degrees[t] == inv.degrees[s]) l += "'";
        inv.labels.push_back(l);
    }
    return inv;
}

bool check_representation(const RootDatum& d, const InvariantSystem& inv) {
    int N = d.dim();
    auto image = [&](const LieVec& v) {
        SMatrix m(inv.rep_dim, inv.rep_dim);
        for (int a = 0; a < N; ++a)
            if (!v[a].is_zero()) m = m + v[a] * inv.rep[a];
        return m;
    };
    for (int a = 0; a < N; ++a)
        for (int b = a + 1; b < N; ++b)
            if (image(bracket(d, basis_vec(d, a), basis_vec(d, b))) != commutator(inv.rep[a], inv.rep[b]))
                return false;
    return true;
}

namespace {

template <class T>
std::vector<T> evaluate(const InvariantSystem& inv, const Matrix<T>& M) {
    int top = *std::max_element(inv.degrees.begin(), inv.degrees.end());
    bool need_cp = std::any_of(inv.kinds.begin(), inv.kinds.end(),
                               [](auto k) { return k == InvariantSystem::Kind::CharCoeff; });
    std::vector<T> cp;
    if (need_cp) cp = char_poly(M, static_cast<size_t>(top));
    std::vector<T> out;
    size_t m = M.rows();
    for (size_t s = 0; s < inv.degrees.size(); ++s) {
        int i = inv.degrees[s];
        if (inv.kinds[s] == InvariantSystem::Kind::Pfaffian) {
            Matrix<T> SM(m, m);
            for (size_t a = 0; a < m; ++a)
                for (size_t b = 0; b < m; ++b)
                    if (!inv.form(a, b).is_zero())
                        for (size_t c = 0; c < m; ++c)
                            if (!M(b, c).is_zero()) SM(a, c) += M(b, c) * inv.form(a, b);
            out.push_back(pfaffian(SM));
        } else {
            T v = static_cast<size_t>(i) <= m ? cp[m - i] : T();
            if (i % 2) v = -v;
            out.push_back(v);
        }
    }
    return out;
}

}  // namespace

std::vector<Scalar> invariants_of(const InvariantSystem& inv, const LieVec& v) {
    SMatrix M(inv.rep_dim, inv.rep_dim);
    for (size_t a = 0; a < v.size(); ++a)
        if (!v[a].is_zero()) M = M + v[a] * inv.rep[a];
    return evaluate(inv, M);
}

std::vector<LaurentScalar> invariants_of(const InvariantSystem& inv, const LoopElement& v, int n) {
    size_t m = inv.rep_dim;
    Matrix<LaurentScalar> M(m, m, LaurentScalar(n));
    for (const auto& [level, vec] : v.terms) {
        SMatrix part(m, m);
        for (size_t a = 0; a < vec.size(); ++a)
            if (!vec[a].is_zero()) part = part + vec[a] * inv.rep[a];
        for (size_t i = 0; i < m; ++i)
            for (size_t j = 0; j < m; ++j)
                if (!part(i, j).is_zero()) M(i, j) += LaurentScalar::monomial(part(i, j), level, n);
    }
    return evaluate(inv, M);
}

std::string BigradedPoint::json(const InvariantSystem& inv) const {
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (const auto& [key, val] : entries) {
        os << (first ? "" : ", ") << "\"" << inv.labels[key.first] << "," << to_string(key.second) << "\": \""
           << val.str() << "\"";
        first = false;
    }
    os << "}";
    return os.str();
}

BigradedPoint q_full(const TwistedLoopDatum& d, const InvariantSystem& inv, const LoopElement& v) {
    BigradedPoint p;
    auto vals = invariants_of(inv, v, d.n);
    for (size_t s = 0; s < vals.size(); ++s)
        for (const auto& [e, c] : vals[s].terms()) p.entries[{static_cast<int>(s), e}] = c;
    return p;
}

bool check_depth_bound(const TwistedLoopDatum& d, const InvariantSystem& inv, const ApartmentPoint& x, const Rat& r,
                       const LoopElement& v) {
    if (!is_loop_element(d, v)) throw SupportViolation("element is not in the twisted loop algebra");
    if (!v.is_zero() && min_depth(d, x, v) < r) throw SupportViolation("element is not in k_{x,r}");
    for (const auto& [key, c] : q_full(d, inv, v).entries)
        if (key.second < r * inv.degrees[key.first]) return false;
    return true;
}

BigradedPoint q_xr(const GradedAlgebra& G, const InvariantSystem& inv, const GradedElement& z) {
    BigradedPoint full = q_full(G.datum(), inv, f_embed(G, z)), out;
    for (const auto& [key, c] : full.entries)
        if (key.second == z.r * inv.degrees[key.first]) out.entries.emplace(key, c);
    return out;
}

bool exponent_gate(const TwistedLoopDatum& d, const InvariantSystem& inv, const Rat& r) {
    for (int e : inv.degrees)
        if (is_integer(Rat(r * e * d.n))) return true;
    return false;
}

KostantSlice kostant_slice(const RootDatum& d) {
    KostantSlice s{principal_sl2(d), {}};
    SMatrix adf = ad_matrix(d, s.triple.f), adh = ad_matrix(d, s.triple.h);
    size_t N = d.dim();
    size_t want = kernel(adf).size();
    for (int lam = -2; s.basis.size() < want && lam >= -4 * static_cast<int>(N); lam -= 2) {
        SMatrix sys(2 * N, N);
        for (size_t i = 0; i < N; ++i)
            for (size_t j = 0; j < N; ++j) {
                sys(i, j) = adf(i, j);
                sys(N + i, j) = adh(i, j) - (i == j ? Scalar(lam) : Scalar(0));
            }
        for (auto& v : span_basis(kernel(sys))) s.basis.push_back(v);
    }
    return s;
}

LieVec kostant_point(const KostantSlice& s, const std::vector<Scalar>& c) {
    if (c.size() != s.basis.size()) throw std::invalid_argument("slice coordinate count mismatch");
    LieVec v = s.triple.e;
    for (size_t k = 0; k < c.size(); ++k) v = v + c[k] * s.basis[k];
    return v;
}

std::vector<Scalar> kostant_slice_eval(const InvariantSystem& inv, const KostantSlice& s, const std::vector<Scalar>& c) {
    return invariants_of(inv, kostant_point(s, c));
}

SMatrix slice_jacobian(const InvariantSystem& inv, const KostantSlice& s, const std::vector<Scalar>& c) {
    size_t k = c.size(), m = inv.degrees.size();
    int top = *std::max_element(inv.degrees.begin(), inv.degrees.end());
    // Derivative at 0 of the interpolant through nodes 0..top: sum_j w_j phi(j).
    std::vector<Rat> w(top + 1, Rat(0));
    for (int j = 1; j <= top; ++j) w[0] -= make_rat(1, j);
    for (int j = 1; j <= top; ++j) {
        Rat prod = make_rat(1, j);
        for (int l = 1; l <= top; ++l)
            if (l != j) prod *= make_rat(-l, j - l);
        w[j] = prod;
    }
    SMatrix J(m, k);
    for (size_t col = 0; col < k; ++col)
        for (int j = 0; j <= top; ++j) {
            auto cj = c;
            cj[col] += Scalar(j);
            auto vals = kostant_slice_eval(inv, s, cj);
            for (size_t row = 0; row < m; ++row) J(row, col) += Scalar(w[j]) * vals[row];
        }
    return J;
}

}  // namespace lf
