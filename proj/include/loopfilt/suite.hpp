#pragma once

#include "loopfilt/sample.hpp"
#include "loopfilt/strata.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace lf {

struct SuiteOptions {
    std::uint64_t seed = 0;
    bool parallel = true;
    int basecase_samples = 32;
};

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    long checks = 0;
    long failures = 0;
    std::string detail;
};

struct GroupSpec {
    char type;
    int rank;
    std::string twist;
};

// A1, A2, C2, G2 untwisted and 2A2, 3D4.
std::vector<GroupSpec> acceptance_matrix();
TwistedLoopDatum make_group(const GroupSpec& g);
// The origin followed by pseudo-random rational points with coordinates in [0,1).
std::vector<ApartmentPoint> sample_points(const TwistedLoopDatum& d, int count, std::uint64_t seed);

GradedElement random_element(const GradedAlgebra& G, const Rat& r, Sampler& rng, long bound = 2);
// Random element of k_{x,lo} supported at depths in [lo, hi] (or (lo, hi] if open).
LoopElement random_lattice_element(const GradedAlgebra& G, const Rat& lo, const Rat& hi, bool open, Sampler& rng);

CriterionResult check_commutation(const SuiteOptions& o);
CriterionResult check_depth_bound_suite(const SuiteOptions& o);
CriterionResult check_triple_agreement(const SuiteOptions& o);
CriterionResult check_bad_denominator(const SuiteOptions& o);
CriterionResult check_jordan_transfer(const SuiteOptions& o);
CriterionResult check_deepening(const SuiteOptions& o);
CriterionResult check_basecase(const SuiteOptions& o);
CriterionResult check_alignment(const SuiteOptions& o);
CriterionResult check_kostant(const SuiteOptions& o);

std::vector<CriterionResult> run_suite(const SuiteOptions& o);
// Every affine root (alpha, i) of k_{x,r} with |i| <= 6, by enumeration.
std::vector<AffineHalfspace> enumerated_halfspaces(const TwistedLoopDatum& d, const ApartmentPoint& x, const Rat& r);
Rat halfspace_min(const TwistedLoopDatum& d, const std::vector<AffineHalfspace>& hs, const ApartmentPoint& y);
// Objective of the deepening program: min over affine roots of k_{x,r} of <alpha,y> + i, by enumeration.
Rat deepening_value(const TwistedLoopDatum& d, const ApartmentPoint& x, const Rat& r, const ApartmentPoint& y);

}  // namespace lf
