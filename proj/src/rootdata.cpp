#include "loopfilt/rootdata.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

namespace lf {

namespace {

std::vector<IVec> cartan_matrix(char type, int n) {
    std::vector<IVec> a(n, IVec(n, 0));
    for (int i = 0; i < n; ++i) a[i][i] = 2;
    auto link = [&](int i, int j) { a[i][j] = a[j][i] = -1; };
    switch (type) {
        case 'A':
            for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
            break;
        case 'B':
            for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
            a[n - 1][n - 2] = -2;
            break;
        case 'C':
            for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
            a[n - 2][n - 1] = -2;
            break;
        case 'D':
            for (int i = 0; i + 2 < n; ++i) link(i, i + 1);
            link(n - 3, n - 1);
            break;
        case 'E':
            link(0, 2);
            link(1, 3);
            for (int i = 2; i + 1 < n; ++i) link(i, i + 1);
            break;
        case 'F':
            link(0, 1);
            link(2, 3);
            a[1][2] = -1;
            a[2][1] = -2;
            break;
        case 'G':
            a[0][1] = -3;
            a[1][0] = -1;
            break;
        default:
            throw UnsupportedType(std::string("unknown Cartan type ") + type);
    }
    return a;
}

IVec symmetrizer(char type, int n) {
    IVec d(n, 1);
    if (type == 'B')
        for (int i = 0; i + 1 < n; ++i) d[i] = 2;
    if (type == 'C') d[n - 1] = 2;
    if (type == 'F') d[0] = d[1] = 2;
    if (type == 'G') d[1] = 3;
    return d;
}

bool valid_pair(char type, int n) {
    switch (type) {
        case 'A': return n >= 1;
        case 'B': return n >= 2;
        case 'C': return n >= 2;
        case 'D': return n >= 4;
        case 'E': return n >= 6 && n <= 8;
        case 'F': return n == 4;
        case 'G': return n == 2;
        default: return false;
    }
}

IVec operator+(const IVec& a, const IVec& b) {
    IVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

IVec operator-(const IVec& a) {
    IVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
    return r;
}

}  // namespace

IVec classified_root_count(char type, int n) {
    if (!valid_pair(type, n)) return {};
    switch (type) {
        case 'A': return {n * (n + 1)};
        case 'B':
        case 'C': return {2 * n * n};
        case 'D': return {2 * n * (n - 1)};
        case 'E': return {n == 6 ? 72 : n == 7 ? 126 : 240};
        case 'F': return {48};
        default: return {12};
    }
}

int RootDatum::root_index(const IVec& c) const {
    auto it = index_of.find(c);
    return it == index_of.end() ? -1 : it->second;
}

int RootDatum::negative_of(int r) const {
    return r < num_positive ? r + num_positive : r - num_positive;
}

int RootDatum::height(int r) const { return std::accumulate(roots[r].begin(), roots[r].end(), 0); }

int RootDatum::inner(const IVec& a, const IVec& b) const {
    int s = 0;
    for (int i = 0; i < rank; ++i)
        for (int j = 0; j < rank; ++j) s += a[i] * b[j] * sym[i] * cartan[i][j];
    return s;
}

int RootDatum::pair_coroot(const IVec& beta, int i) const {
    int s = 0;
    for (int j = 0; j < rank; ++j) s += beta[j] * cartan[i][j];
    return s;
}

std::string RootDatum::basis_label(int b) const {
    if (is_h(b)) return "h" + std::to_string(b - num_roots() + 1);
    std::string out = b < num_positive ? "e[" : "f[";
    const IVec& c = roots[b];
    for (int i = 0; i < rank; ++i) out += (i ? "," : "") + std::to_string(std::abs(c[i]));
    return out + "]";
}

RootDatum build_root_datum(char type, int rank, int rank_cap) {
    if (!valid_pair(type, rank))
        throw UnsupportedType(std::string("invalid type/rank ") + type + std::to_string(rank));
    if (rank > rank_cap)
        throw UnsupportedType("rank " + std::to_string(rank) + " exceeds cap " + std::to_string(rank_cap));
    RootDatum d;
    d.type = type;
    d.rank = rank;
    d.cartan = cartan_matrix(type, rank);
    d.sym = symmetrizer(type, rank);
    for (int i = 0; i < rank; ++i)
        for (int j = 0; j < rank; ++j)
            if (d.sym[i] * d.cartan[i][j] != d.sym[j] * d.cartan[j][i])
                throw std::logic_error("Cartan matrix not symmetrisable");

    // Reflection closure of the simple roots.
    std::set<IVec> found;
    std::vector<IVec> frontier;
    for (int i = 0; i < rank; ++i) {
        IVec e(rank, 0);
        e[i] = 1;
        found.insert(e);
        frontier.push_back(e);
    }
    while (!frontier.empty()) {
        std::vector<IVec> next;
        for (const auto& b : frontier)
            for (int i = 0; i < rank; ++i) {
                IVec r = b;
                r[i] -= d.pair_coroot(b, i);
                if (found.insert(r).second) next.push_back(r);
            }
        frontier = std::move(next);
    }
    std::vector<IVec> pos;
    for (const auto& r : found)
        if (std::accumulate(r.begin(), r.end(), 0) > 0) pos.push_back(r);
    std::sort(pos.begin(), pos.end(), [](const IVec& a, const IVec& b) {
        int ha = std::accumulate(a.begin(), a.end(), 0), hb = std::accumulate(b.begin(), b.end(), 0);
        if (ha != hb) return ha < hb;
        return a > b;
    });
    d.num_positive = static_cast<int>(pos.size());
    d.roots = pos;
    for (const auto& r : pos) d.roots.push_back(-r);
    if (static_cast<int>(d.roots.size()) != classified_root_count(type, rank)[0])
        throw std::logic_error("root count mismatch");
    for (int k = 0; k < d.num_roots(); ++k) d.index_of[d.roots[k]] = k;

    for (const auto& b : d.roots) {
        int db = d.inner(b, b) / 2;
        IVec co(rank);
        for (int j = 0; j < rank; ++j) co[j] = b[j] * d.sym[j] / db;
        d.coroots.push_back(co);
    }

    // Structure constants from extraspecial pairs (all signs +).
    int R = d.num_roots();
    const int unset = 1 << 20;
    d.N.assign(R, IVec(R, 0));
    std::vector<IVec> known(R, IVec(R, unset));
    auto p_of = [&](int a, int b) {
        int p = 0;
        IVec c = d.roots[b];
        while (true) {
            for (int i = 0; i < rank; ++i) c[i] -= d.roots[a][i];
            if (d.root_index(c) < 0) break;
            ++p;
        }
        return p;
    };
    auto len = [&](int r) { return d.inner(d.roots[r], d.roots[r]); };
    std::function<int(int, int)> getN = [&](int a, int b) -> int {
        int s = d.root_index(d.roots[a] + d.roots[b]);
        if (s < 0) return 0;
        bool pa = a < d.num_positive, pb = b < d.num_positive;
        if (pa && pb) {
            if (known[a][b] == unset) throw std::logic_error("structure constant requested out of order");
            return known[a][b];
        }
        if (!pa && !pb) return -getN(d.negative_of(a), d.negative_of(b));
        if (!pa) return -getN(b, a);
        int c = d.negative_of(s);
        Rat v;
        if (s < d.num_positive)
            v = Rat(len(c), len(a)) * -getN(d.negative_of(b), d.negative_of(c));
        else
            v = Rat(len(c), len(b)) * getN(c, a);
        v.canonicalize();
        if (!is_integer(v)) throw std::logic_error("non-integral structure constant");
        return static_cast<int>(v.get_num().get_si());
    };
    for (int xi = 0; xi < d.num_positive; ++xi) {
        if (d.height(xi) < 2) continue;
        int r1 = -1, s1 = -1;
        for (int i = 0; i < rank && r1 < 0; ++i) {
            IVec rest = d.roots[xi];
            rest[i] -= 1;
            int k = d.root_index(rest);
            if (k >= 0 && k < d.num_positive) {
                r1 = i;
                s1 = k;
            }
        }
        known[r1][s1] = p_of(r1, s1) + 1;
        known[s1][r1] = -known[r1][s1];
        for (int a = 0; a < d.num_positive; ++a) {
            IVec bc = d.roots[xi];
            for (int i = 0; i < rank; ++i) bc[i] -= d.roots[a][i];
            int b = d.root_index(bc);
            if (b < 0 || b >= d.num_positive || known[a][b] != unset) continue;
            Rat sum = 0;
            int br1 = d.root_index(d.roots[b] + d.roots[d.negative_of(r1)]);
            if (br1 >= 0)
                sum += Rat(getN(b, d.negative_of(r1)) * getN(a, d.negative_of(s1)), len(br1));
            int ar1 = d.root_index(d.roots[a] + d.roots[d.negative_of(r1)]);
            if (ar1 >= 0)
                sum += Rat(getN(d.negative_of(r1), a) * getN(b, d.negative_of(s1)), len(ar1));
            Rat v = sum * len(xi) / known[r1][s1];
            v.canonicalize();
            if (!is_integer(v)) throw std::logic_error("non-integral structure constant");
            known[a][b] = static_cast<int>(v.get_num().get_si());
            known[b][a] = -known[a][b];
        }
    }
    for (int a = 0; a < R; ++a)
        for (int b = 0; b < R; ++b) {
            d.N[a][b] = getN(a, b);
            if (d.N[a][b] != 0 && std::abs(d.N[a][b]) != p_of(a, b) + 1)
                throw std::logic_error("structure constant has wrong magnitude");
        }

    // Bracket table on the Chevalley basis.
    int n = d.dim();
    d.table.assign(n, std::vector<std::vector<RootDatum::Term>>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            auto& out = d.table[a][b];
            bool ha = d.is_h(a), hb = d.is_h(b);
            if (ha && hb) continue;
            if (ha) {
                int c = d.pair_coroot(d.roots[b], a - R);
                if (c) out.push_back({b, c});
            } else if (hb) {
                int c = d.pair_coroot(d.roots[a], b - R);
                if (c) out.push_back({a, -c});
            } else if (b == d.negative_of(a)) {
                for (int j = 0; j < rank; ++j)
                    if (d.coroots[a][j]) out.push_back({R + j, d.coroots[a][j]});
            } else if (d.N[a][b]) {
                out.push_back({d.root_index(d.roots[a] + d.roots[b]), d.N[a][b]});
            }
        }
    return d;
}

LieVec basis_vec(const RootDatum& d, int index) { return unit_vec(d.dim(), index); }

LieVec bracket(const RootDatum& d, const LieVec& a, const LieVec& b) {
    int n = d.dim();
    LieVec out(n);
    for (int i = 0; i < n; ++i) {
        if (a[i].is_zero()) continue;
        for (int j = 0; j < n; ++j) {
            if (b[j].is_zero()) continue;
            const auto& terms = d.table[i][j];
            if (terms.empty()) continue;
            Scalar c = a[i] * b[j];
            for (const auto& t : terms) out[t.index] += Scalar(t.coeff) * c;
        }
    }
    return out;
}

SMatrix ad_matrix(const RootDatum& d, const LieVec& a) {
    int n = d.dim();
    SMatrix m(n, n);
    for (int i = 0; i < n; ++i) {
        if (a[i].is_zero()) continue;
        for (int j = 0; j < n; ++j)
            for (const auto& t : d.table[i][j]) m(t.index, j) += Scalar(t.coeff) * a[i];
    }
    return m;
}

std::string lie_str(const RootDatum& d, const LieVec& v) {
    std::string out;
    for (int i = 0; i < d.dim(); ++i) {
        if (v[i].is_zero()) continue;
        if (!out.empty()) out += " + ";
        if (v[i].is_one())
            out += d.basis_label(i);
        else if (v[i].is_rational())
            out += v[i].str() + "*" + d.basis_label(i);
        else
            out += "(" + v[i].str() + ")*" + d.basis_label(i);
    }
    return out.empty() ? "0" : out;
}

bool check_jacobi(const RootDatum& d, int max_first) {
    int n = d.dim();
    int lim = max_first < 0 ? n : std::min(n, max_first);
    auto br = [&](const IVec& x, int b) {
        IVec out(n, 0);
        for (int a = 0; a < n; ++a) {
            if (!x[a]) continue;
            for (const auto& t : d.table[a][b]) out[t.index] += x[a] * t.coeff;
        }
        return out;
    };
    auto unit = [&](int a) {
        IVec u(n, 0);
        u[a] = 1;
        return u;
    };
    for (int a = 0; a < lim; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                // [[a,b],c] + [[b,c],a] + [[c,a],b] = 0
                IVec s1 = br(br(unit(a), b), c);
                IVec s2 = br(br(unit(b), c), a);
                IVec s3 = br(br(unit(c), a), b);
                for (int k = 0; k < n; ++k)
                    if (s1[k] + s2[k] + s3[k] != 0) return false;
            }
    return true;
}

// ------------------------------------------------------- automorphisms

SMatrix PinnedAutomorphism::matrix() const {
    size_t n = target.size();
    SMatrix m(n, n);
    for (size_t a = 0; a < n; ++a) m(target[a], a) = Scalar(sign[a]);
    return m;
}

LieVec PinnedAutomorphism::apply(const LieVec& v) const {
    LieVec out(v.size());
    for (size_t a = 0; a < v.size(); ++a)
        if (!v[a].is_zero()) out[target[a]] += Scalar(sign[a]) * v[a];
    return out;
}

IVec named_symmetry(const RootDatum& d, const std::string& name) {
    IVec p(d.rank);
    std::iota(p.begin(), p.end(), 0);
    if (name.empty() || name == "none" || name == "id") return p;
    if (name == "swap") {
        if (d.type == 'A' && d.rank >= 2) {
            std::reverse(p.begin(), p.end());
            return p;
        }
        if (d.type == 'D') {
            std::swap(p[d.rank - 2], p[d.rank - 1]);
            return p;
        }
        if (d.type == 'E' && d.rank == 6) {
            p = {5, 1, 4, 3, 2, 0};
            return p;
        }
    }
    if (name == "triality" && d.type == 'D' && d.rank == 4) return {2, 1, 3, 0};
    throw NotADiagramSymmetry("no diagram symmetry '" + name + "' for " + std::string(1, d.type) +
                              std::to_string(d.rank));
}

PinnedAutomorphism pinned_automorphism(const RootDatum& d, const IVec& perm) {
    int r = d.rank;
    if (static_cast<int>(perm.size()) != r) throw NotADiagramSymmetry("permutation has wrong length");
    IVec seen(r, 0);
    for (int v : perm) {
        if (v < 0 || v >= r || seen[v]++) throw NotADiagramSymmetry("not a permutation of the nodes");
    }
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
            if (d.cartan[perm[i]][perm[j]] != d.cartan[i][j])
                throw NotADiagramSymmetry("permutation does not preserve the Cartan matrix");

    PinnedAutomorphism s;
    s.node_permutation = perm;
    int R = d.num_roots(), n = d.dim();
    s.target.assign(n, -1);
    s.sign.assign(n, 0);
    auto permute = [&](const IVec& c) {
        IVec o(r, 0);
        for (int i = 0; i < r; ++i) o[perm[i]] += c[i];
        return o;
    };
    for (int i = 0; i < r; ++i) {
        s.target[R + i] = R + perm[i];
        s.sign[R + i] = 1;
    }
    for (int k = 0; k < d.num_positive; ++k) {
        for (int neg = 0; neg < 2; ++neg) {
            int a = neg ? d.negative_of(k) : k;
            int img = d.root_index(permute(d.roots[a]));
            s.target[a] = img;
            if (d.height(k) == 1) {
                s.sign[a] = 1;
                continue;
            }
            // b_a = [b_simple, b_rest] / N, with the extraspecial choice.
            int i0 = -1, rest = -1;
            for (int i = 0; i < r && i0 < 0; ++i) {
                IVec c = d.roots[k];
                c[i] -= 1;
                int q = d.root_index(c);
                if (q >= 0 && q < d.num_positive) {
                    i0 = i;
                    rest = q;
                }
            }
            int simple = neg ? d.negative_of(i0) : i0;
            int other = neg ? d.negative_of(rest) : rest;
            int num = s.sign[other] * d.N[s.target[simple]][s.target[other]];
            int den = d.N[simple][other];
            if (den == 0 || num % den != 0 || std::abs(num / den) != 1)
                throw std::logic_error("pinned automorphism sign is not a unit");
            s.sign[a] = num / den;
        }
    }
    // Order: smallest d with sigma^d = id on the signed basis.
    IVec tgt(n), sg(n, 1);
    std::iota(tgt.begin(), tgt.end(), 0);
    for (int ord = 1; ord <= 12; ++ord) {
        for (int a = 0; a < n; ++a) {
            sg[a] *= s.sign[tgt[a]];
            tgt[a] = s.target[tgt[a]];
        }
        bool ident = true;
        for (int a = 0; a < n && ident; ++a) ident = tgt[a] == a && sg[a] == 1;
        if (ident) {
            s.order = ord;
            break;
        }
    }
    if (!preserves_brackets(d, s)) throw std::logic_error("induced map is not a Lie automorphism");
    return s;
}

bool preserves_brackets(const RootDatum& d, const PinnedAutomorphism& s) {
    int n = d.dim();
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            LieVec lhs = s.apply(bracket(d, basis_vec(d, a), basis_vec(d, b)));
            LieVec rhs = bracket(d, s.apply(basis_vec(d, a)), s.apply(basis_vec(d, b)));
            if (lhs != rhs) return false;
        }
    return true;
}

int fixed_subalgebra_dim(const RootDatum& d, const PinnedAutomorphism& s) {
    SMatrix m = s.matrix() - SMatrix::identity(d.dim());
    return static_cast<int>(kernel(m).size());
}

Sl2Triple principal_sl2(const RootDatum& d) {
    int R = d.num_roots(), n = d.dim();
    Sl2Triple t{LieVec(n), LieVec(n), LieVec(n)};
    for (int i = 0; i < d.rank; ++i) t.e[i] = Scalar(1);
    for (int k = 0; k < d.num_positive; ++k)
        for (int j = 0; j < d.rank; ++j) t.h[R + j] += Scalar(d.coroots[k][j]);
    // [e_{alpha_i}, e_{-alpha_i}] = h_i and the cross terms vanish, so f has the
    // coefficients of h on the negative simple roots.
    for (int i = 0; i < d.rank; ++i) t.f[d.negative_of(i)] = t.h[R + i];
    return t;
}

bool check_sl2(const RootDatum& d, const Sl2Triple& t) {
    return bracket(d, t.h, t.e) == Scalar(2) * t.e && bracket(d, t.h, t.f) == Scalar(-2) * t.f &&
           bracket(d, t.e, t.f) == t.h;
}

std::string serialize(const RootDatum& d) {
    std::ostringstream os;
    os << "type " << d.type << "\nrank " << d.rank << "\ncartan\n";
    for (const auto& row : d.cartan) {
        for (size_t j = 0; j < row.size(); ++j) os << (j ? " " : "") << row[j];
        os << "\n";
    }
    os << "roots " << d.num_roots() << "\n";
    for (int k = 0; k < d.num_roots(); ++k) {
        os << d.basis_label(k);
        for (int c : d.roots[k]) os << " " << c;
        os << " | coroot";
        for (int c : d.coroots[k]) os << " " << c;
        os << "\n";
    }
    os << "constants\n";
    for (int a = 0; a < d.num_positive; ++a)
        for (int b = 0; b < d.num_positive; ++b)
            if (d.N[a][b] && a < b)
                os << d.basis_label(a) << " " << d.basis_label(b) << " " << d.N[a][b] << "\n";
    return os.str();
}

}  // namespace lf
