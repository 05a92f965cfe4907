#include "loopfilt/mpfilt.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace lf {

namespace {

Rat ceil_rat(const Rat& q) { return Rat(-floor_rat(Rat(-q))); }

// Smallest element of base + Z not below the window's lower end.
Rat first_in(const Rat& base, const Window& win) {
    Rat v = base + ceil_rat(win.lo - base);
    if (win.lo_open && v == win.lo) v += 1;
    return v;
}

// Index of the first nonzero coordinate (the RREF pivot).
size_t pivot_of(const LieVec& v) {
    for (size_t i = 0; i < v.size(); ++i)
        if (!v[i].is_zero()) return i;
    return v.size();
}

// Coefficients of v in an RREF basis, or nullopt if v is outside the span.
std::optional<Vec> rref_coords(const std::vector<LieVec>& basis, const LieVec& v) {
    Vec c;
    LieVec rest = v;
    for (const auto& b : basis) {
        Scalar k = v[pivot_of(b)];
        c.push_back(k);
        if (!k.is_zero()) rest = rest - k * b;
    }
    if (!is_zero(rest)) return std::nullopt;
    return c;
}

int residue_index(const Rat& level, int n) {
    Rat nl = level * n;
    if (!is_integer(nl)) return -1;
    mpz_class k = nl.get_num() % n;
    if (k < 0) k += n;
    return static_cast<int>(k.get_si());
}

}  // namespace

LieVec weight_component(const TwistedLoopDatum& d, const LieVec& v, const IVec& w) {
    LieVec out = zero_vec(v.size());
    for (size_t a = 0; a < v.size(); ++a)
        if (!v[a].is_zero() && d.basis_weight[a] == w) out[a] = v[a];
    return out;
}

IVec TwistedLoopDatum::restrict_root(const IVec& root) const {
    IVec w(res_rank, 0);
    for (size_t i = 0; i < root.size(); ++i) w[node_orbit[i]] += root[i];
    return w;
}

const std::vector<LieVec>& TwistedLoopDatum::piece(const IVec& w, int k) const {
    static const std::vector<LieVec> empty;
    auto it = pieces.find({w, k});
    return it == pieces.end() ? empty : it->second;
}

TwistedLoopDatum make_loop_datum(const RootDatum& d, const IVec& node_permutation, int n) {
    TwistedLoopDatum out;
    out.datum = d;
    out.sigma = pinned_automorphism(d, node_permutation);
    int order = out.sigma.order;
    out.n = n == 0 ? order : n;
    if (out.n % order != 0) throw std::invalid_argument("n must be a multiple of the order of sigma");

    out.node_orbit.assign(d.rank, -1);
    for (int i = 0; i < d.rank; ++i) {
        if (out.node_orbit[i] >= 0) continue;
        IVec orbit;
        for (int j = i; out.node_orbit[j] < 0; j = node_permutation[j]) {
            out.node_orbit[j] = static_cast<int>(out.orbits.size());
            orbit.push_back(j);
        }
        std::sort(orbit.begin(), orbit.end());
        out.orbits.push_back(orbit);
    }
    out.res_rank = static_cast<int>(out.orbits.size());

    int N = d.dim();
    out.basis_weight.assign(N, IVec(out.res_rank, 0));
    for (int a = 0; a < d.num_roots(); ++a) out.basis_weight[a] = out.restrict_root(d.roots[a]);
    std::set<IVec> ws(out.basis_weight.begin(), out.basis_weight.end());
    out.weights.assign(ws.begin(), ws.end());

    // Eigenspaces via the projector (1/d) sum_m lambda^{-m} sigma^m.
    for (const auto& w : out.weights) {
        std::vector<LieVec> orbit_vecs;
        for (int a = 0; a < N; ++a)
            if (out.basis_weight[a] == w) orbit_vecs.push_back(basis_vec(d, a));
        for (int k = 0; k < out.n; ++k) {
            if ((static_cast<long>(k) * order) % out.n != 0) continue;
            Scalar inv_order(make_rat(1, order));
            std::vector<LieVec> images;
            for (const auto& v : orbit_vecs) {
                LieVec acc = zero_vec(N), cur = v;
                for (int m = 0; m < order; ++m) {
                    acc = acc + Scalar::zeta(-static_cast<long>(k) * m, out.n) * cur;
                    cur = out.sigma.apply(cur);
                }
                images.push_back(inv_order * acc);
            }
            auto basis = span_basis(images);
            if (!basis.empty()) out.pieces[{w, k}] = std::move(basis);
        }
    }

    std::ostringstream name;
    if (order > 1) name << order;
    name << d.type << d.rank;
    if (out.n != order) name << "[n=" << out.n << "]";
    out.name = name.str();
    return out;
}

TwistedLoopDatum make_loop_datum(char type, int rank, const std::string& twist, int n, int rank_cap) {
    RootDatum d = build_root_datum(type, rank, rank_cap);
    return make_loop_datum(d, named_symmetry(d, twist), n);
}

std::string ApartmentPoint::str() const {
    std::string s = "(";
    for (size_t i = 0; i < coords.size(); ++i) s += (i ? "," : "") + to_string(coords[i]);
    return s + ")";
}

ApartmentPoint origin(const TwistedLoopDatum& d) {
    return ApartmentPoint{std::vector<Rat>(d.res_rank, Rat(0))};
}

Rat pairing(const IVec& w, const ApartmentPoint& x, int res_rank) {
    if (static_cast<int>(x.coords.size()) < res_rank)
        throw std::invalid_argument("apartment point has too few coordinates");
    Rat s = 0;
    for (int k = 0; k < res_rank; ++k)
        if (w[k]) s += w[k] * x.coords[k];
    return s;
}

Rat pairing(const TwistedLoopDatum& d, const IVec& w, const ApartmentPoint& x) {
    return pairing(w, x, d.res_rank);
}

std::vector<AffineRootSpace> affine_root_spaces(const TwistedLoopDatum& d, const Window& win) {
    std::vector<AffineRootSpace> out;
    for (const auto& [key, basis] : d.pieces) {
        const auto& [w, k] = key;
        Rat base = make_rat(k, d.n);
        for (Rat level = first_in(base, win); win.contains(level); level += 1)
            out.push_back({w, level, basis});
    }
    std::sort(out.begin(), out.end(), [](const AffineRootSpace& a, const AffineRootSpace& b) {
        if (a.level != b.level) return a.level < b.level;
        return a.alpha < b.alpha;
    });
    return out;
}

MPQuotient mp_quotient(const TwistedLoopDatum& d, const ApartmentPoint& x, const Rat& r) {
    MPQuotient q{x, r, {}, 0};
    for (const auto& w : d.weights) {
        Rat level = r - pairing(d, w, x);
        int k = residue_index(level, d.n);
        if (k < 0) continue;
        const auto& basis = d.piece(w, k);
        if (basis.empty()) continue;
        q.spaces.push_back({w, level, basis});
        q.total_dim += static_cast<int>(basis.size());
    }
    return q;
}

std::vector<Rat> jump_set(const TwistedLoopDatum& d, const ApartmentPoint& x, const Window& win) {
    std::set<Rat> out;
    for (const auto& [key, basis] : d.pieces) {
        Rat base = pairing(d, key.first, x) + make_rat(key.second, d.n);
        for (Rat v = first_in(base, win); win.contains(v); v += 1) out.insert(v);
    }
    return {out.begin(), out.end()};
}

bool sandwich_test(const TwistedLoopDatum& d, const ApartmentPoint& x, const ApartmentPoint& y, const Rat& r) {
    // For each family (alpha, k) the values u = <alpha,x> + i - r run through a
    // coset of Z and v = u - delta with delta = <alpha, x - y> fixed.
    //   k_{x,r+} in k_{y,r+}: no u in (0, delta]
    //   k_{y,r+} in k_{x,r}:  no u in (delta, 0)
    for (const auto& [key, basis] : d.pieces) {
        const auto& [w, k] = key;
        Rat u0 = pairing(d, w, x) + make_rat(k, d.n) - r;
        Rat delta = pairing(d, w, x) - pairing(d, w, y);
        if (delta > 0) {
            Rat u = u0 + Rat(floor_rat(Rat(-u0)) + 1);  // smallest u > 0
            if (u <= delta) return false;
        } else if (delta < 0) {
            Rat u = u0 + Rat(floor_rat(Rat(delta - u0)) + 1);  // smallest u > delta
            if (u < 0) return false;
        }
    }
    return true;
}

int reductive_quotient_dim(const TwistedLoopDatum& d, const ApartmentPoint& x) {
    // Value-zero affine roots: <alpha,x> + i = 0 with i = k/n + m.
    std::vector<LieVec> span;
    for (const auto& [key, basis] : d.pieces) {
        Rat v = pairing(d, key.first, x) + make_rat(key.second, d.n);
        if (is_integer(v)) span.insert(span.end(), basis.begin(), basis.end());
    }
    return static_cast<int>(span_rank(span));
}

void LoopElement::add(const Rat& level, const LieVec& v) {
    if (lf::is_zero(v)) return;
    auto it = terms.find(level);
    if (it == terms.end()) {
        terms.emplace(level, v);
        return;
    }
    it->second = it->second + v;
    if (lf::is_zero(it->second)) terms.erase(it);
}

LoopElement& LoopElement::operator+=(const LoopElement& o) {
    for (const auto& [l, v] : o.terms) add(l, v);
    return *this;
}

LoopElement operator-(LoopElement a, const LoopElement& b) {
    for (const auto& [l, v] : b.terms) a.add(l, Scalar(-1) * v);
    return a;
}

LoopElement operator*(const Scalar& c, LoopElement a) {
    if (c.is_zero()) return {};
    for (auto& [l, v] : a.terms) v = c * v;
    return a;
}

LoopElement monomial(const Rat& level, const LieVec& v) {
    LoopElement g;
    g.add(level, v);
    return g;
}

LoopElement loop_bracket(const RootDatum& d, const LoopElement& a, const LoopElement& b) {
    LoopElement out;
    for (const auto& [la, va] : a.terms)
        for (const auto& [lb, vb] : b.terms) out.add(la + lb, bracket(d, va, vb));
    return out;
}

std::map<Rat, LoopElement> by_depth(const TwistedLoopDatum& d, const ApartmentPoint& x, const LoopElement& g) {
    std::map<Rat, LoopElement> out;
    std::vector<Rat> wval(d.dim());
    for (int a = 0; a < d.dim(); ++a) wval[a] = pairing(d, d.basis_weight[a], x);
    for (const auto& [level, v] : g.terms)
        for (int a = 0; a < d.dim(); ++a) {
            if (v[a].is_zero()) continue;
            LieVec e = zero_vec(v.size());
            e[a] = v[a];
            out[wval[a] + level].add(level, e);
        }
    return out;
}

LoopElement truncate_depth(const TwistedLoopDatum& d, const ApartmentPoint& x, const LoopElement& g, const Rat& cap) {
    LoopElement out;
    for (const auto& [depth, part] : by_depth(d, x, g))
        if (depth <= cap) out += part;
    return out;
}

Rat min_depth(const TwistedLoopDatum& d, const ApartmentPoint& x, const LoopElement& g) {
    auto parts = by_depth(d, x, g);
    if (parts.empty()) throw std::invalid_argument("min_depth of zero element");
    return parts.begin()->first;
}

bool is_loop_element(const TwistedLoopDatum& d, const LoopElement& g) {
    for (const auto& [level, v] : g.terms) {
        int k = residue_index(level, d.n);
        if (k < 0) return false;
        for (const auto& w : d.weights) {
            LieVec c = weight_component(d, v, w);
            if (lf::is_zero(c)) continue;
            if (!rref_coords(d.piece(w, k), c)) return false;
        }
    }
    return true;
}

std::string loop_str(const RootDatum& d, const LoopElement& g) {
    if (g.is_zero()) return "0";
    std::string s;
    for (const auto& [level, v] : g.terms) {
        if (!s.empty()) s += " + ";
        s += "(" + lie_str(d, v) + ")";
        if (level != 0) s += "*t^(" + to_string(level) + ")";
    }
    return s;
}

std::vector<LoopElement> flat_basis(const MPQuotient& q) {
    std::vector<LoopElement> out;
    for (const auto& s : q.spaces)
        for (const auto& b : s.basis) out.push_back(monomial(s.level, b));
    return out;
}

std::vector<std::string> basis_labels(const RootDatum& d, const AffineRootSpace& s) {
    std::vector<std::string> out;
    for (const auto& b : s.basis) {
        std::string l = lie_str(d, b);
        if (s.level != 0) l = "(" + l + ")*t^(" + to_string(s.level) + ")";
        out.push_back(l);
    }
    return out;
}

std::optional<Vec> quotient_coords(const TwistedLoopDatum& d, const MPQuotient& q, const LoopElement& g) {
    Vec coords;
    LoopElement rest = g;
    for (const auto& s : q.spaces) {
        auto it = g.terms.find(s.level);
        LieVec c = it == g.terms.end() ? zero_vec(d.dim()) : weight_component(d, it->second, s.alpha);
        auto part = rref_coords(s.basis, c);
        if (!part) return std::nullopt;
        coords.insert(coords.end(), part->begin(), part->end());
        rest = rest - monomial(s.level, c);
    }
    if (!rest.is_zero()) return std::nullopt;
    return coords;
}

LeviSubdatum full_levi(const TwistedLoopDatum& d, const ApartmentPoint& x) {
    LeviSubdatum L;
    L.x = x;
    L.r = 0;
    for (const auto& s : jump_set(d, x, Window{Rat(0), Rat(1)})) {
        MPQuotient q = mp_quotient(d, x, s);
        L.pieces[s] = flat_basis(q);
        for (const auto& sp : q.spaces) L.affine_roots.push_back({sp.alpha, sp.level});
    }
    L.dimension = d.dim();
    return L;
}

SubQuotient levi_restrict(const TwistedLoopDatum& d, const LeviSubdatum& L, const ApartmentPoint& x, const Rat& r) {
    if (!(L.x == x)) throw std::invalid_argument("levi_restrict: subdatum described at a different point");
    SubQuotient out{mp_quotient(d, x, r), {}};
    Rat s = frac(r);
    Rat shift = r - s;
    auto it = L.pieces.find(s);
    if (it == L.pieces.end()) return out;
    for (const auto& g : it->second) {
        LoopElement h;
        for (const auto& [level, v] : g.terms) h.add(level + shift, v);
        auto c = quotient_coords(d, out.ambient, h);
        if (!c) throw std::logic_error("levi_restrict: kernel piece outside the quotient");
        out.basis.push_back(*c);
    }
    return out;
}

}  // namespace lf
