#pragma once

#include "loopfilt/invmap.hpp"
#include "loopfilt/lp.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lf {

struct InconsistentOracles : std::logic_error {
    using std::logic_error::logic_error;
};
struct NeedsConjugation : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct NotSemisimple : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct NoAlignment : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Conjugacy invariants of a twisted Levi, or the adjoined maximum (diamond).
struct LeviLabel {
    bool diamond = false;
    int dimension = 0;  // over k((t))
    int split_rank = 0;
    std::vector<std::pair<Rat, int>> support;  // (residue j, dim of the kernel in h_j)
    IVec degrees;                              // invariant degrees of the centraliser, 1 per central direction
    bool degrees_known = true;

    std::string str() const;
    friend bool operator==(const LeviLabel&, const LeviLabel&) = default;
};

LeviLabel diamond_label();
// Strict order of the poset: diamond is above every subdatum; subdatum labels
// compare only through a necessary inclusion condition.
bool label_below(const LeviLabel& a, const LeviLabel& b);
// Canonical total order for reports (diamond last).
bool label_report_order(const LeviLabel& a, const LeviLabel& b);

// Degree multisets of semisimple algebras with the given rank and dimension.
std::vector<IVec> semisimple_degree_candidates(int rank, int dim);

// Nilpotency, cross-checked against q_xr(z) = 0.
bool unstable_test(const GradedAlgebra& G, const InvariantSystem& inv, const GradedElement& z);

// Cocharacter w (box [-1,1]) with <alpha,w> >= delta > 0 on the support weights of z.
struct Cocharacter {
    std::vector<Rat> w;
    Rat margin;
};
std::optional<Cocharacter> halfspace_cocharacter(const GradedAlgebra& G, const GradedElement& z);

ApartmentPoint destabilize(const GradedAlgebra& G, const InvariantSystem& inv, const GradedElement& z);
// Every nonzero component of f_embed(z) has depth > r at y.
bool strictly_deepened(const TwistedLoopDatum& d, const ApartmentPoint& y, const Rat& r, const LoopElement& g);

// Half-spaces <alpha,y> + i >= s of k_{x,r}: minimal levels over one period plus the next copy.
std::vector<AffineHalfspace> halfspaces_of(const TwistedLoopDatum& d, const ApartmentPoint& x, const Rat& r);

struct DeepeningResult {
    LPResult::Status status = LPResult::Status::Infeasible;
    Rat s;
    ApartmentPoint y;
    LinearProgram program;
    LPResult solution;
};
DeepeningResult deepening_lp(const TwistedLoopDatum& d, const ApartmentPoint& x, const Rat& r);

struct Centralizer {
    LeviSubdatum levi;
    LeviLabel label;
};
Centralizer centralizer_label(const GradedAlgebra& G, const GradedElement& z);
LeviLabel stratum_of(const GradedAlgebra& G, const InvariantSystem& inv, const GradedElement& z);
// z central in L: true iff the centraliser of z is exactly L (z avoids all root hyperplanes).
bool gen_test(const GradedAlgebra& G, const LeviSubdatum& L, const GradedElement& z);
bool is_central(const GradedAlgebra& G, const LeviSubdatum& L, const GradedElement& z);

// exp(ad w) g truncated to depth <= cap; w must have positive depth.
LoopElement exp_ad(const TwistedLoopDatum& d, const ApartmentPoint& x, const LoopElement& w, const LoopElement& g,
                   const Rat& cap);

struct AlignResult {
    LoopElement g;                         // truncated to depth <= cap
    std::vector<LoopElement> conjugators;  // applied in order
};
// `fixed` elements must be centralised by every conjugator.
AlignResult align_lift(const GradedAlgebra& G, const GradedElement& z, const LoopElement& g1, const Rat& depth_cap,
                       const std::vector<GradedElement>& fixed = {});
std::vector<LoopElement> multi_align(const GradedAlgebra& G, const std::vector<GradedElement>& zs, const Rat& depth_cap,
                                     std::vector<LoopElement> lifts = {});

struct BasecaseReport {
    struct Tally {
        int pass = 0, fail = 0;
    };
    struct Stratum {
        LeviLabel label;
        int count = 0;
        std::array<Tally, 5> checks{};  // (a)..(e); empty for diamond
    };
    struct Sample {
        std::string element;
        LeviLabel label;
        bool gen = false;
        int centralizer_dim = 0;
    };
    struct Counterexample {
        std::string element;
        char check;
        std::string detail;
    };
    ApartmentPoint x;
    Rat r;
    std::vector<Sample> samples;
    std::vector<Stratum> strata;
    std::vector<Counterexample> counterexamples;

    bool all_pass() const { return counterexamples.empty(); }
    std::string json() const;
};

// Checks (a)-(e) for one semisimple z; returns failures as counterexamples.
std::vector<BasecaseReport::Counterexample> basecase_checks(const GradedAlgebra& G, const InvariantSystem& inv,
                                                            const GradedElement& z);

std::vector<GradedElement> basecase_samples(const GradedAlgebra& G, const Rat& r, int sample_size, std::uint64_t seed);
BasecaseReport verify_basecase(const GradedAlgebra& G, const InvariantSystem& inv, const Rat& r, int sample_size = 32,
                               std::uint64_t seed = 0, bool parallel = true);

}  // namespace lf
