#pragma once

#include <optional>
#include <vector>

#include "loopforge/folder.hpp"
#include "loopforge/permgroup.hpp"

namespace loopforge {

/// 1 in K, K closed under inversion and under (x, y) -> x y x.
bool is_twisted_subgroup(const std::vector<Perm>& k);

/// Data read off the pair relation generated from (1, 1) by the moves
/// (x, y) -> (k x, k^-1 y) for k in K.
struct XiPsi {
  PermGroup xi;   // {g : (g, 1) is reachable}
  PermGroup psi;  // {g : gK = K}
  bool xi_inside_psi = false;
  bool psi_inside_k = false;
  bool xi_normal = false;   // in <K>
  bool psi_normal = false;  // in <K>
};
XiPsi xi_psi(const PermGroup& g, const std::vector<Perm>& k);

/// The involution with tau(x k) = tau(x) k^-1 on the group generated by K,
/// as an index map over g.elements(); empty exactly when Xi is nontrivial.
/// Requires K to generate g.
std::optional<std::vector<int>> tau_automorphism(const PermGroup& g,
                                                 const std::vector<Perm>& k);

Perm apply_tau(const PermGroup& g, const std::vector<int>& tau,
               const Perm& x);

/// For a Bruck folder, the extension tau(h k) = h k^-1 through the unique
/// factorization G = HK, verified to be an involutory automorphism fixing H
/// pointwise and agreeing with tau_automorphism on <K>.
std::vector<int> extend_tau_bruck(const Folder& f);

struct GPlusElem {
  Perm g;
  int eps = 0;
  friend bool operator==(const GPlusElem&, const GPlusElem&) = default;
  friend auto operator<=>(const GPlusElem&, const GPlusElem&) = default;
};

/// The extension of G by the involution tau, on pairs (g, eps) with
/// (g, e)(h, f) = (g tau^e(h), e xor f).
struct GPlus {
  PermGroup base;
  std::vector<int> tau;
  std::vector<GPlusElem> elements;  // sorted, twice the base order

  GPlusElem id() const;
  GPlusElem mul(const GPlusElem& a, const GPlusElem& b) const;
  GPlusElem inv(const GPlusElem& a) const;
};

GPlus build_gplus(const PermGroup& g, std::vector<int> tau);

/// Is Lambda = {(k, 1)} invariant under conjugation in the extension?
bool lambda_invariant(const GPlus& e, const std::vector<Perm>& k);

/// Largest normal 2-subgroup of the extension, computed directly on pairs.
std::vector<GPlusElem> o2_gplus(const GPlus& e);

struct XiReport {
  PermGroup xi;
  std::vector<int> kappa;  // loop indices whose translation lies in Xi
  bool xi_inside_k = false;
  bool subfolder = false;       // (Xi, 1, Xi) passes the subfolder criterion
  bool normal_subloop = false;  // kappa is a normal subloop
  bool group_matches = false;   // the subloop is a group isomorphic to Xi
};
XiReport xi_subfolder_check(const Folder& f);

}  // namespace loopforge
