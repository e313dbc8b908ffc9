#pragma once

#include <vector>

#include "loopforge/folder.hpp"
#include "loopforge/loop.hpp"
#include "loopforge/permgroup.hpp"

namespace loopforge {

/// Enumeration request for loop tables with row and column 0 fixed to the
/// identity.  Unconstrained runs stop at order 6; the bol constraint lifts
/// the bound to 8 and bol with exponent2 to 10.
struct EnumSpec {
  int order = 1;
  bool bol = false;
  bool aip = false;
  bool exponent2 = false;
  bool ar = false;
  bool canonicalize = false;
  int threads = 1;         // partition by first-row choice when above 1
  bool reverse = false;    // flip the branching order; counts must not move
};

struct EnumResult {
  /// Canonical class representatives (canonicalize) or every table, in a
  /// deterministic order either way.
  std::vector<Loop> loops;
  /// Completed tables before isomorphism rejection.
  long long raw_count = 0;
};

EnumResult enumerate_loops(const EnumSpec& spec);

/// Folders (G, H, {1} plus full involution classes) over conjugacy
/// representatives of subgroups H, with class subsets sized to the index.
/// Every emission re-validates; each must be a Bruck folder of exponent 2.
std::vector<Folder> search_hypothesis_a(const PermGroup& g,
                                        long long emission_cap = 10000);

/// All transversal folders for a fixed pair: one element per right coset of
/// H, identity forced on the trivial coset, products pruned against the
/// conjugates of H.  bx2p_only adds twisted-closure, H-invariance and
/// 2-power-order pruning and keeps only folders reaching bx2p.
std::vector<Folder> search_folders(const PermGroup& g, const PermGroup& h,
                                   bool bx2p_only = false,
                                   long long emission_cap = 10000);

}  // namespace loopforge
