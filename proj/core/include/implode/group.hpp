#ifndef IMPLODE_GROUP_HPP
#define IMPLODE_GROUP_HPP

#include <string>
#include <vector>

namespace implode {

// Classical series of the flavor group acting on the top node C^n:
//   A -> SU(n)/SL(n,C), B -> SO(2k+1), C -> Sp(2k), D -> SO(2k).
enum class GroupKind { A, B, C, D };

// Complex dimension of the complexified group (equals the real dimension of
// its compact form).
int group_dim(GroupKind kind, int n);

// Rank (dimension of a maximal torus).
int torus_rank(GroupKind kind, int n);

// Dimension of a maximal unipotent subgroup: (dim - rank) / 2.
int unipotent_dim(GroupKind kind, int n);

// Full-flag dimension vector: (1,...,n) for A, (1,...,k,2k+1) for B,
// (1,...,k,2k) for C and D.
std::vector<int> full_flag_dims(GroupKind kind, int n);

// "su" / "so" / "sp" as used by the JSON document format; so picks B or D by
// parity, sp requires even n.
GroupKind kind_from_name(const std::string& name, int n);
std::string kind_name(GroupKind kind);

bool is_orthosymplectic(GroupKind kind);  // B, C or D

}  // namespace implode

#endif
