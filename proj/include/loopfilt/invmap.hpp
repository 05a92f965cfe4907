#pragma once

#include "loopfilt/vinberg.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace lf {

struct UnsupportedTypeForInvariants : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct SupportViolation : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Fundamental invariants of h evaluated through a matrix representation:
// p_i = (-1)^i * (coefficient of lambda^{m-i} in det(lambda - M)), plus the
// Pfaffian of S*M for type D.
struct InvariantSystem {
    enum class Kind { CharCoeff, Pfaffian };
    IVec degrees;
    std::vector<std::string> labels;  // degree, primed when repeated
    std::vector<Kind> kinds;
    bool experimental = false;  // exceptional types via the adjoint representation
    int rep_dim = 0;
    std::vector<SMatrix> rep;  // image of each Chevalley basis vector
    SMatrix form;              // symmetric form for the Pfaffian
    int slots() const { return static_cast<int>(degrees.size()); }
};

InvariantSystem invariant_system(const RootDatum& d);
// Matrix representation is a Lie algebra homomorphism on all basis pairs.
bool check_representation(const RootDatum& d, const InvariantSystem& inv);

std::vector<Scalar> invariants_of(const InvariantSystem& inv, const LieVec& v);
std::vector<LaurentScalar> invariants_of(const InvariantSystem& inv, const LoopElement& v, int n);

struct BigradedPoint {
    std::map<std::pair<int, Rat>, Scalar> entries;  // (slot, exponent of t)
    bool is_zero() const { return entries.empty(); }
    friend bool operator==(const BigradedPoint&, const BigradedPoint&) = default;
    // JSON object "degree,exponent" -> scalar string.
    std::string json(const InvariantSystem& inv) const;
};

BigradedPoint q_full(const TwistedLoopDatum& d, const InvariantSystem& inv, const LoopElement& v);
// Throws SupportViolation unless every component of v has depth >= r.
bool check_depth_bound(const TwistedLoopDatum& d, const InvariantSystem& inv, const ApartmentPoint& x, const Rat& r,
                       const LoopElement& v);
BigradedPoint q_xr(const GradedAlgebra& G, const InvariantSystem& inv, const GradedElement& z);
// Some invariant degree e has e*r in (1/n)Z.
bool exponent_gate(const TwistedLoopDatum& d, const InvariantSystem& inv, const Rat& r);

struct KostantSlice {
    Sl2Triple triple;
    std::vector<LieVec> basis;  // centraliser of f, ordered by ad h weight -2, -4, ...
};

KostantSlice kostant_slice(const RootDatum& d);
LieVec kostant_point(const KostantSlice& s, const std::vector<Scalar>& c);
// Invariants of e + sum c_k b_k.
std::vector<Scalar> kostant_slice_eval(const InvariantSystem& inv, const KostantSlice& s, const std::vector<Scalar>& c);
// Exact Jacobian d(invariant_i)/d(c_k), via Lagrange interpolation along each coordinate.
SMatrix slice_jacobian(const InvariantSystem& inv, const KostantSlice& s, const std::vector<Scalar>& c);

}  // namespace lf
