#pragma once

#include <string>
#include <vector>

#include "loopforge/loop.hpp"
#include "loopforge/permgroup.hpp"

namespace loopforge {

/// Z/n with addition.
Loop cyclic_loop(int n);

/// Componentwise product on pairs, indexed a-major.
Loop direct_product(const Loop& a, const Loop& b);

/// Dihedral group of order 2n.
Loop dihedral_loop(int n);

/// Dicyclic group of order 4m (m = 2 gives the quaternion group).
Loop dicyclic_loop(int m);

/// <a, b | a^m = 1, b^2 = a^s, b^-1 a b = a^t>, order 2m.  Requires
/// t^2 = 1 and s(t - 1) = 0 mod m.  Covers the order-16 families:
/// (8,7,0) dihedral, (8,3,0) semidihedral, (8,7,4) generalized quaternion,
/// (8,5,0) modular.
Loop semidirect_c2(int m, int t, int s);

/// Multiplication table of g in its right regular representation, elements
/// in sorted order (the identity is least, so it lands at 0).
Loop loop_from_permgroup(const PermGroup& g);

struct NamedLoop {
  std::string name;
  Loop loop;
};

/// Every group of order at most 12, one per isomorphism class (24 groups).
std::vector<NamedLoop> groups_up_to_12();

}  // namespace loopforge
