#include "loopfilt/lp.hpp"

#include <map>
#include <sstream>
#include <stdexcept>

namespace lf {

void LinearProgram::validate() const {
    size_t n = variables.size();
    if (n == 0) throw std::invalid_argument("linear program needs at least one variable");
    if (objective.size() != n) throw std::invalid_argument("objective length mismatch");
    for (const auto& c : constraints)
        if (c.coeffs.size() != n) throw std::invalid_argument("constraint length mismatch");
}

std::string LinearProgram::str() const {
    std::ostringstream os;
    auto lin = [&](const std::vector<Rat>& a) {
        std::string s;
        for (size_t j = 0; j < a.size(); ++j) {
            if (a[j] == 0) continue;
            if (!s.empty()) s += " + ";
            s += to_string(a[j]) + "*" + variables[j];
        }
        return s.empty() ? std::string("0") : s;
    };
    os << (maximize ? "maximize " : "minimize ") << lin(objective) << "\n";
    for (const auto& c : constraints) {
        const char* rel = c.rel == Relation::LE ? " <= " : c.rel == Relation::GE ? " >= " : " = ";
        os << "  " << lin(c.coeffs) << rel << to_string(c.rhs) << "\n";
    }
    return os.str();
}

std::string to_string(LPResult::Status s) {
    switch (s) {
        case LPResult::Status::Optimal: return "optimal";
        case LPResult::Status::Unbounded: return "unbounded";
        case LPResult::Status::Infeasible: return "infeasible";
    }
    return "?";
}

namespace {

// Tableau for: maximize c.x subject to A x = b, x >= 0, b >= 0.
struct Tableau {
    size_t m, n;
    std::vector<std::vector<Rat>> a;  // m rows of n+1 entries, last is rhs
    std::vector<size_t> basis;

    void pivot(size_t row, size_t col) {
        Rat p = a[row][col];
        for (auto& v : a[row]) v /= p;
        for (size_t i = 0; i < m; ++i) {
            if (i == row || a[i][col] == 0) continue;
            Rat f = a[i][col];
            for (size_t j = 0; j <= n; ++j)
                if (a[row][j] != 0) a[i][j] -= f * a[row][j];
        }
        basis[row] = col;
    }

    // Returns false if unbounded. Columns >= allowed are never entered.
    bool run(const std::vector<Rat>& cost, size_t allowed) {
        for (;;) {
            size_t enter = n;
            for (size_t j = 0; j < allowed && enter == n; ++j) {
                Rat red = cost[j];
                for (size_t i = 0; i < m; ++i)
                    if (a[i][j] != 0) red -= cost[basis[i]] * a[i][j];
                if (red > 0) enter = j;
            }
            if (enter == n) return true;
            size_t leave = m;
            Rat best;
            for (size_t i = 0; i < m; ++i) {
                if (a[i][enter] <= 0) continue;
                Rat ratio = a[i][n] / a[i][enter];
                if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave == m) return false;
            pivot(leave, enter);
        }
    }

    Rat value(const std::vector<Rat>& cost) const {
        Rat v = 0;
        for (size_t i = 0; i < m; ++i) v += cost[basis[i]] * a[i][n];
        return v;
    }
};

}  // namespace

LPResult solve(const LinearProgram& lp) {
    lp.validate();
    size_t nv = lp.variables.size(), m = lp.constraints.size();
    // Columns: x+ (nv), x- (nv), slacks (one per inequality), artificials (m).
    std::vector<size_t> slack_col(m, SIZE_MAX);
    size_t ncols = 2 * nv;
    for (size_t i = 0; i < m; ++i)
        if (lp.constraints[i].rel != Relation::EQ) slack_col[i] = ncols++;
    size_t art0 = ncols;
    ncols += m;

    Tableau t{m, ncols, std::vector<std::vector<Rat>>(m, std::vector<Rat>(ncols + 1)), std::vector<size_t>(m)};
    std::vector<int> flip(m, 1);
    for (size_t i = 0; i < m; ++i) {
        const auto& c = lp.constraints[i];
        if (c.rhs < 0) flip[i] = -1;
        for (size_t j = 0; j < nv; ++j) {
            t.a[i][j] = flip[i] * c.coeffs[j];
            t.a[i][nv + j] = -flip[i] * c.coeffs[j];
        }
        if (slack_col[i] != SIZE_MAX) t.a[i][slack_col[i]] = flip[i] * (c.rel == Relation::LE ? 1 : -1);
        t.a[i][art0 + i] = 1;
        t.a[i][ncols] = flip[i] * c.rhs;
        t.basis[i] = art0 + i;
    }

    LPResult res;
    std::vector<Rat> phase1(ncols + 1, Rat(0));
    for (size_t i = 0; i < m; ++i) phase1[art0 + i] = -1;
    t.run(phase1, ncols);
    if (t.value(phase1) != 0) {
        res.status = LPResult::Status::Infeasible;
        return res;
    }
    // Drive zero-level artificials out of the basis; drop redundant rows.
    std::vector<bool> redundant(m, false);
    for (size_t i = 0; i < m; ++i) {
        if (t.basis[i] < art0) continue;
        size_t col = art0;
        for (size_t j = 0; j < art0; ++j)
            if (t.a[i][j] != 0) {
                col = j;
                break;
            }
        if (col < art0)
            t.pivot(i, col);
        else
            redundant[i] = true;
    }

    std::vector<Rat> cost(ncols + 1, Rat(0));
    for (size_t j = 0; j < nv; ++j) {
        Rat c = lp.maximize ? lp.objective[j] : Rat(-lp.objective[j]);
        cost[j] = c;
        cost[nv + j] = -c;
    }
    if (!t.run(cost, art0)) {
        res.status = LPResult::Status::Unbounded;
        return res;
    }
    res.status = LPResult::Status::Optimal;
    std::vector<Rat> xs(ncols, Rat(0));
    for (size_t i = 0; i < m; ++i)
        if (!redundant[i]) xs[t.basis[i]] = t.a[i][ncols];
    res.point.assign(nv, Rat(0));
    for (size_t j = 0; j < nv; ++j) res.point[j] = xs[j] - xs[nv + j];
    res.value = 0;
    for (size_t j = 0; j < nv; ++j) res.value += lp.objective[j] * res.point[j];

    // Dual: y^T B = c_B using the artificial columns, which hold B^{-1}.
    // Redundant rows keep their artificial basic at level zero with cost 0.
    res.dual.assign(m, Rat(0));
    for (size_t i = 0; i < m; ++i) {
        Rat y = 0;
        for (size_t k = 0; k < m; ++k)
            if (!redundant[k] && t.a[k][art0 + i] != 0) y += cost[t.basis[k]] * t.a[k][art0 + i];
        y *= flip[i];
        res.dual[i] = lp.maximize ? y : Rat(-y);
    }
    return res;
}

bool is_feasible_point(const LinearProgram& lp, const std::vector<Rat>& point) {
    if (point.size() != lp.variables.size()) return false;
    for (const auto& c : lp.constraints) {
        Rat lhs = 0;
        for (size_t j = 0; j < point.size(); ++j) lhs += c.coeffs[j] * point[j];
        if (c.rel == Relation::LE && lhs > c.rhs) return false;
        if (c.rel == Relation::GE && lhs < c.rhs) return false;
        if (c.rel == Relation::EQ && lhs != c.rhs) return false;
    }
    return true;
}

bool verify_primal(const LinearProgram& lp, const LPResult& res) {
    if (res.status != LPResult::Status::Optimal) return false;
    if (!is_feasible_point(lp, res.point)) return false;
    Rat v = 0;
    for (size_t j = 0; j < res.point.size(); ++j) v += lp.objective[j] * res.point[j];
    return v == res.value;
}

bool verify_dual(const LinearProgram& lp, const LPResult& res) {
    if (res.status != LPResult::Status::Optimal || res.dual.size() != lp.constraints.size()) return false;
    // For max c.x: A^T y = c, y >= 0 on <=, y <= 0 on >=, and b.y = value.
    // For min the inequalities flip.
    Rat by = 0;
    for (size_t i = 0; i < lp.constraints.size(); ++i) {
        const auto& c = lp.constraints[i];
        const Rat& y = res.dual[i];
        bool up = lp.maximize ? c.rel == Relation::LE : c.rel == Relation::GE;
        bool down = lp.maximize ? c.rel == Relation::GE : c.rel == Relation::LE;
        if (up && y < 0) return false;
        if (down && y > 0) return false;
        by += c.rhs * y;
    }
    for (size_t j = 0; j < lp.variables.size(); ++j) {
        Rat s = 0;
        for (size_t i = 0; i < lp.constraints.size(); ++i) s += lp.constraints[i].coeffs[j] * res.dual[i];
        if (s != lp.objective[j]) return false;
    }
    return by == res.value;
}

std::vector<AffineHalfspace> reduce_halfspaces(const std::vector<AffineHalfspace>& hs) {
    std::map<std::vector<int>, Rat> best;
    for (const auto& h : hs) {
        auto it = best.find(h.alpha);
        if (it == best.end())
            best.emplace(h.alpha, h.level);
        else if (h.level < it->second)
            it->second = h.level;
    }
    std::vector<AffineHalfspace> out;
    for (const auto& [a, l] : best) out.push_back({a, l});
    return out;
}

}  // namespace lf
