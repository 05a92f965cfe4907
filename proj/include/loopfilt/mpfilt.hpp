#pragma once

#include "loopfilt/rootdata.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace lf {

// Loop algebra g((t)) realised as the fixed points of t^(1/n) -> zeta t^(1/n)
// combined with a pinned automorphism sigma on h (x) k((t^(1/n))).
struct TwistedLoopDatum {
    RootDatum datum;
    PinnedAutomorphism sigma;
    int n = 1;
    std::vector<IVec> orbits;  // sigma-orbits of simple nodes
    IVec node_orbit;
    int res_rank = 0;              // rank of the restricted torus T
    std::vector<IVec> basis_weight;  // restricted weight of each Chevalley basis vector
    std::vector<IVec> weights;       // distinct restricted weights, sorted
    // RREF basis of the zeta_n^k-eigenspace of sigma on a restricted weight space.
    std::map<std::pair<IVec, int>, std::vector<LieVec>> pieces;
    std::string name;

    IVec restrict_root(const IVec& root) const;
    const std::vector<LieVec>& piece(const IVec& w, int k) const;
    int dim() const { return datum.dim(); }
};

TwistedLoopDatum make_loop_datum(const RootDatum& d, const IVec& node_permutation, int n = 0);
TwistedLoopDatum make_loop_datum(char type, int rank, const std::string& twist = "none", int n = 0,
                                 int rank_cap = 4);

// Point of the apartment in coordinates <alpha_O, x> for the restricted simple
// roots; trailing central coordinates are carried but ignored.
struct ApartmentPoint {
    std::vector<Rat> coords;
    friend bool operator==(const ApartmentPoint&, const ApartmentPoint&) = default;
    std::string str() const;
};

ApartmentPoint origin(const TwistedLoopDatum& d);
Rat pairing(const TwistedLoopDatum& d, const IVec& w, const ApartmentPoint& x);
Rat pairing(const IVec& w, const ApartmentPoint& x, int res_rank);

struct AffineRootSpace {
    IVec alpha;
    Rat level;
    std::vector<LieVec> basis;
    int dim() const { return static_cast<int>(basis.size()); }
};

struct Window {
    Rat lo, hi;
    bool hi_closed = false;
    bool lo_open = false;
    bool contains(const Rat& v) const {
        return (lo_open ? v > lo : v >= lo) && (hi_closed ? v <= hi : v < hi);
    }
};

std::vector<AffineRootSpace> affine_root_spaces(const TwistedLoopDatum& d, const Window& w);

struct MPQuotient {
    ApartmentPoint x;
    Rat r;
    std::vector<AffineRootSpace> spaces;
    int total_dim = 0;
};

MPQuotient mp_quotient(const TwistedLoopDatum& d, const ApartmentPoint& x, const Rat& r);
std::vector<Rat> jump_set(const TwistedLoopDatum& d, const ApartmentPoint& x, const Window& w);
bool sandwich_test(const TwistedLoopDatum& d, const ApartmentPoint& x, const ApartmentPoint& y, const Rat& r);
// Dimension of the span of the value-zero affine roots at x (independent of mp_quotient).
int reductive_quotient_dim(const TwistedLoopDatum& d, const ApartmentPoint& x);

// Finitely supported element of g((t)): level -> vector in h.
struct LoopElement {
    std::map<Rat, LieVec> terms;

    bool is_zero() const { return terms.empty(); }
    void add(const Rat& level, const LieVec& v);
    LoopElement& operator+=(const LoopElement& o);
    friend LoopElement operator+(LoopElement a, const LoopElement& b) { return a += b; }
    friend LoopElement operator-(LoopElement a, const LoopElement& b);
    friend LoopElement operator*(const Scalar& c, LoopElement a);
    friend bool operator==(const LoopElement& a, const LoopElement& b) { return a.terms == b.terms; }
};

LoopElement monomial(const Rat& level, const LieVec& v);
LoopElement loop_bracket(const RootDatum& d, const LoopElement& a, const LoopElement& b);
// Components of g grouped by depth <alpha,x> + level.
std::map<Rat, LoopElement> by_depth(const TwistedLoopDatum& d, const ApartmentPoint& x, const LoopElement& g);
LoopElement truncate_depth(const TwistedLoopDatum& d, const ApartmentPoint& x, const LoopElement& g, const Rat& cap);
// Smallest depth of a nonzero component; g must be nonzero.
Rat min_depth(const TwistedLoopDatum& d, const ApartmentPoint& x, const LoopElement& g);
// Every level component lies in the allowed sigma-eigenspaces.
bool is_loop_element(const TwistedLoopDatum& d, const LoopElement& g);
// Part of v supported on Chevalley basis vectors of restricted weight w.
LieVec weight_component(const TwistedLoopDatum& d, const LieVec& v, const IVec& w);
std::string loop_str(const RootDatum& d, const LoopElement& g);

// Flattened quotient basis as loop monomials, in storage order.
std::vector<LoopElement> flat_basis(const MPQuotient& q);
std::vector<std::string> basis_labels(const RootDatum& d, const AffineRootSpace& s);
// Coordinates of a loop element homogeneous of depth q.r; nullopt if it is not in the quotient.
std::optional<Vec> quotient_coords(const TwistedLoopDatum& d, const MPQuotient& q, const LoopElement& g);

// Twisted Levi given as the centralizer of a semisimple element, described
// through its graded pieces over one period of depths.
struct LeviSubdatum {
    ApartmentPoint x;
    Rat r;                 // depth of the defining element
    LoopElement defining;  // zero for the full datum
    std::map<Rat, std::vector<LoopElement>> pieces;  // residue s in [0,1) -> kernel basis at depth s
    std::vector<LoopElement> center;                 // centre of the kernel, homogeneous pieces
    int dimension = 0;                               // over k((t))
    std::vector<std::pair<IVec, Rat>> affine_roots;  // one-period (alpha, level) pairs meeting the kernel
};

struct SubQuotient {
    MPQuotient ambient;
    std::vector<Vec> basis;  // coordinates in the ambient quotient basis
    int dim() const { return static_cast<int>(basis.size()); }
};

LeviSubdatum full_levi(const TwistedLoopDatum& d, const ApartmentPoint& x);
SubQuotient levi_restrict(const TwistedLoopDatum& d, const LeviSubdatum& L, const ApartmentPoint& x, const Rat& r);

}  // namespace lf
