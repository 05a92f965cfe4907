#pragma once

#include "loopfilt/mpfilt.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace lf {

// Q/Z-grading on h induced by (x, sigma): h_j for residues j in [0,1).
// Holds a reference to the loop datum, which must outlive it.
class GradedAlgebra {
public:
    GradedAlgebra(const TwistedLoopDatum& d, ApartmentPoint x);

    const TwistedLoopDatum& datum() const { return *d_; }
    const RootDatum& root_datum() const { return d_->datum; }
    const ApartmentPoint& x() const { return x_; }
    const std::vector<Rat>& residues() const { return residues_; }
    const std::map<Rat, MPQuotient>& components() const { return comps_; }

    // The quotient k_{x,r}/k_{x,r+}, for any rational r.
    MPQuotient quotient(const Rat& r) const { return mp_quotient(*d_, x_, r); }
    int dim(const Rat& r) const { return quotient(r).total_dim; }

private:
    const TwistedLoopDatum* d_;
    ApartmentPoint x_;
    std::vector<Rat> residues_;
    std::map<Rat, MPQuotient> comps_;
};

GradedAlgebra build_grading(const TwistedLoopDatum& d, const ApartmentPoint& x);

// Vector of h_r in the flattened basis of mp_quotient(x, r).
struct GradedElement {
    Rat r;
    Vec coeffs;
    friend bool operator==(const GradedElement&, const GradedElement&) = default;
};

GradedElement zero_element(const GradedAlgebra& G, const Rat& r);
GradedElement basis_element(const GradedAlgebra& G, const Rat& r, size_t i);
GradedElement operator+(const GradedElement& a, const GradedElement& b);
GradedElement operator*(const Scalar& c, const GradedElement& a);
bool is_zero(const GradedElement& z);
std::string graded_str(const GradedAlgebra& G, const GradedElement& z);

LoopElement f_embed(const GradedAlgebra& G, const GradedElement& z);
// The element of h obtained by forgetting t.
LieVec to_lie(const GradedAlgebra& G, const GradedElement& z);
// Inverse of to_lie on h_r; nullopt if v is not in h_r.
std::optional<GradedElement> from_lie(const GradedAlgebra& G, const Rat& r, const LieVec& v);
std::optional<GradedElement> from_loop(const GradedAlgebra& G, const Rat& r, const LoopElement& g);
GradedElement graded_bracket(const GradedAlgebra& G, const GradedElement& a, const GradedElement& b);

// Matrix of ad z : h_j -> h_{j+r} in the stored bases.
SMatrix ad_matrix(const GradedAlgebra& G, const GradedElement& z, const Rat& target_j);
// ad of to_lie(z) on all of h (Chevalley basis).
SMatrix full_ad(const GradedAlgebra& G, const GradedElement& z);

bool is_nilpotent(const GradedAlgebra& G, const GradedElement& z);
bool is_semisimple(const GradedAlgebra& G, const GradedElement& z);
// (semisimple part, nilpotent part), both in h_r.
std::pair<GradedElement, GradedElement> jordan_decompose(const GradedAlgebra& G, const GradedElement& z);

// ad f_embed(z) on the loop elements with levels in [0, periods), levels taken
// modulo `periods` (so t^periods acts as 1).
SMatrix loop_window_ad(const GradedAlgebra& G, const GradedElement& z, int periods = 2);

struct CartanResult {
    std::vector<GradedElement> basis;
    bool certified = false;  // maximality search found no further semisimple element
};

// Greedy maximal commuting family of semisimple elements of h_r.
CartanResult cartan_subspace(const GradedAlgebra& G, const Rat& r, std::uint64_t seed = 0, int tries = 24);

// Centraliser of the given elements inside h_j.
std::vector<GradedElement> centralizer_in(const GradedAlgebra& G, const std::vector<GradedElement>& zs,
                                          const Rat& j);

}  // namespace lf
