#pragma once

#include "loopfilt/exact.hpp"

#include <string>
#include <vector>

namespace lf {

enum class Relation { LE, GE, EQ };

struct LinearConstraint {
    std::vector<Rat> coeffs;
    Relation rel = Relation::LE;
    Rat rhs;
};

// All variables are free (unrestricted in sign).
struct LinearProgram {
    std::vector<std::string> variables;
    std::vector<LinearConstraint> constraints;
    std::vector<Rat> objective;
    bool maximize = true;

    void validate() const;
    std::string str() const;
};

struct LPResult {
    enum class Status { Optimal, Unbounded, Infeasible } status = Status::Infeasible;
    Rat value;
    std::vector<Rat> point;
    // Multipliers y with A^T y = c, sign-feasible for the relations, b.y = value.
    std::vector<Rat> dual;
};

std::string to_string(LPResult::Status s);

// Two-phase dense simplex with Bland's rule over exact rationals.
LPResult solve(const LinearProgram& lp);
bool verify_primal(const LinearProgram& lp, const LPResult& res);
bool verify_dual(const LinearProgram& lp, const LPResult& res);
bool is_feasible_point(const LinearProgram& lp, const std::vector<Rat>& point);

// Constraint <alpha, y> + level >= s coming from one affine root space.
struct AffineHalfspace {
    std::vector<int> alpha;
    Rat level;
    friend bool operator==(const AffineHalfspace&, const AffineHalfspace&) = default;
};

// Keep, for each weight, only the minimal level.
std::vector<AffineHalfspace> reduce_halfspaces(const std::vector<AffineHalfspace>& hs);

}  // namespace lf
