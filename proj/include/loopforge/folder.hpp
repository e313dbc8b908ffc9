#pragma once

#include <optional>
#include <string>
#include <vector>

#include "loopforge/loop.hpp"
#include "loopforge/permgroup.hpp"

namespace loopforge {

/// A loop folder: a group with a distinguished subgroup and a transversal
/// K of every conjugate of H, listed in loop-element order with k[0] = 1.
struct Folder {
  PermGroup g;
  PermGroup h;
  std::vector<Perm> k;
};

/// The enveloping folder of a loop: G generated by the right translations,
/// H the stabilizer of the identity, K the translations in element order.
Folder baer_envelope(const Loop& l);

/// The loop carried by a folder: x*y is the index of the unique element of
/// K in H k_x k_y.  Throws NotTransversal when uniqueness fails.
Loop folder_to_loop(const Folder& f);

enum class FolderLevel { folder, bol, ar, bruck, bx2p };
FolderLevel folder_level_from_string(const std::string& s);
std::string to_string(FolderLevel level);

struct FolderReport {
  bool pass = false;
  FolderLevel level = FolderLevel::folder;
  bool faithful = false;   // no nontrivial normal subgroup of G inside H
  bool envelope = false;   // K generates G
  std::string reason;      // first failure; empty when pass
};

/// Checks the folder axioms, then the named level and everything below it
/// in the chain folder < bol < ar < bruck < bx2p.
FolderReport verify_folder(const Folder& f, FolderLevel level);

/// The coset defect k_x k_y k_{x*y}^(-1).  Throws NotInH if it escapes H.
Perm h_xy(const Folder& f, const Loop& l, int x, int y);

/// Whether H equals the group generated by all coset defects.
bool h_generated_by_defects(const Folder& f);

/// (U, U meet H, U meet K) if U = (U meet H)(U meet K), else nothing.
std::optional<Folder> detect_subfolder(const Folder& f, const PermGroup& u);

struct QuotientFolder {
  Folder folder;
  bool same_loop = false;  // quotient's loop table equals the original's
};

/// Quotient by a normal subgroup of G contained in H.  Such a quotient
/// carries the same loop; same_loop records the verified table equality.
QuotientFolder quotient_folder(const Folder& f, const PermGroup& n);

}  // namespace loopforge
