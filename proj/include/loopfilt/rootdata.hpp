#pragma once

#include "loopfilt/linalg.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace lf {

struct UnsupportedType : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NotADiagramSymmetry : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

using IVec = std::vector<int>;

// Split semisimple Lie algebra with a Chevalley basis.
// Basis order: e_beta for the positive roots (by height), e_beta for the
// negative roots (same order), then the simple coroots h_1..h_rank.
struct RootDatum {
    char type = 'A';
    int rank = 0;
    std::vector<IVec> cartan;  // cartan[i][j] = <alpha_j, alpha_i^vee>
    IVec sym;                  // (alpha_i, alpha_i) = 2 * sym[i]
    std::vector<IVec> roots;   // simple-root coordinates
    int num_positive = 0;
    std::vector<IVec> coroots;  // simple-coroot coordinates
    std::vector<IVec> N;        // structure constants between roots (0 if sum is not a root)

    struct Term {
        int index;
        int coeff;
    };
    std::vector<std::vector<std::vector<Term>>> table;  // [a][b] -> [b_a, b_b]

    int num_roots() const { return static_cast<int>(roots.size()); }
    int dim() const { return num_roots() + rank; }
    int root_index(const IVec& coords) const;  // -1 if not a root
    int negative_of(int root) const;
    int height(int root) const;
    int inner(const IVec& a, const IVec& b) const;  // symmetrised form
    int pair_coroot(const IVec& beta, int i) const;  // <beta, alpha_i^vee>
    bool is_h(int basis) const { return basis >= num_roots(); }
    std::string basis_label(int basis) const;

    std::map<IVec, int> index_of;
};

RootDatum build_root_datum(char type, int rank, int rank_cap = 4);
IVec classified_root_count(char type, int rank);  // {count} or empty if invalid

using LieVec = Vec;
LieVec basis_vec(const RootDatum& d, int index);
LieVec bracket(const RootDatum& d, const LieVec& a, const LieVec& b);
SMatrix ad_matrix(const RootDatum& d, const LieVec& a);
std::string lie_str(const RootDatum& d, const LieVec& v);
// Exhaustive Jacobi check on basis triples (or on the given subset of first indices).
bool check_jacobi(const RootDatum& d, int max_first = -1);

// Diagram automorphism acting on the Chevalley basis by signed permutation.
struct PinnedAutomorphism {
    int order = 1;
    IVec node_permutation;
    IVec target;  // basis index of sigma(b_a) up to sign
    IVec sign;
    SMatrix matrix() const;
    LieVec apply(const LieVec& v) const;
};

IVec named_symmetry(const RootDatum& d, const std::string& name);
PinnedAutomorphism pinned_automorphism(const RootDatum& d, const IVec& node_permutation);
bool preserves_brackets(const RootDatum& d, const PinnedAutomorphism& s);
int fixed_subalgebra_dim(const RootDatum& d, const PinnedAutomorphism& s);

struct Sl2Triple {
    LieVec e, h, f;
};
Sl2Triple principal_sl2(const RootDatum& d);
bool check_sl2(const RootDatum& d, const Sl2Triple& t);

std::string serialize(const RootDatum& d);

}  // namespace lf
