#ifndef IMPLODE_STRATA_HPP
#define IMPLODE_STRATA_HPP

#include <string>
#include <vector>

#include "implode/kempf_ness.hpp"
#include "implode/quiver.hpp"

namespace implode {

// Contracted flag labelling a stratum K_C/[P,P]. The flag stores the proper
// subspace dimensions only: A-kind labels display with the forced top entry
// n appended ("(3)" is the empty flag of SU(3)), B/C/D labels are isotropic
// flags with entries <= n/2 and may be empty (the zero-quiver stratum).
struct StratumLabel {
    GroupKind kind = GroupKind::A;
    int n = 0;
    std::vector<int> flag;  // strictly increasing proper dimensions

    std::vector<int> block_sizes() const;  // p_i = w_i - w_{i-1}, plus the leftover block for A
    int complex_dimension() const;         // dim K_C - dim [P,P]
    std::string to_string() const;

    bool operator==(const StratumLabel& other) const = default;
};

// Chain of spaces and maps without the positivity constraints of a Quiver;
// used for the two summands of a polystable decomposition, whose node
// dimensions may vanish.
struct Chain {
    std::vector<int> dims;        // one per node, including the top
    std::vector<Matrix> maps;     // maps[i] : dims[i] -> dims[i+1]
};

struct Decomposition {
    Chain zero_part;              // all maps zero
    Chain injective_part;         // all maps injective, expressed in the chosen bases
    std::vector<Matrix> node_bases;  // [W | Z] per internal node

    // blockdiag(injective, zero) conjugated back by the node bases.
    Quiver reconstruct(const DimensionVector& dv, QuiverMode mode) const;
};

// Explicit splitting V_i = W_i (+) ker alpha_i of a polystable symplectic
// quiver into its injective and zero summands.
Decomposition decompose_polystable(const Quiver& q, const SolveOptions& opts = {});

// Removes zero entries and repeated values (isomorphism legs). For A kind
// the chain ends with the top dimension n, which moves to the implied slot.
StratumLabel contract_legs(const std::vector<int>& chain_dims, GroupKind kind, int n);

StratumLabel classify_stratum(const Quiver& q, const SolveOptions& opts = {});

// All stratum labels: 2^{n-1} ordered-partition flags for A, all sub-flags
// of the isotropic full flag (including the empty one) for B/C/D.
std::vector<StratumLabel> enumerate_strata(GroupKind kind, int n);

int stratum_dimension(const StratumLabel& label);

// Hyperkahler mode: real dimension 2(dim K + dim T); symplectic mode:
// complex dimension dim K_C - dim N.
int implosion_dimension(GroupKind kind, int n, QuiverMode mode);

// Dimension counts of the flat quiver space at the full flag, for the
// cross-checks: complex dimension of R(n) (isotropy constraint included)
// and quaternionic dimension of M(n).
int flat_space_dim(GroupKind kind, int n, QuiverMode mode);
int gauge_group_dim(GroupKind kind, int n);  // complex dim of prod SL(n_i)

}  // namespace implode

#endif
