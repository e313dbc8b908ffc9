#include "loopforge/folder.hpp"

#include <algorithm>
#include <set>

#include "loopforge/errors.hpp"

namespace loopforge {

Folder baer_envelope(const Loop& l) {
  int n = l.size();
  std::vector<Perm> k;
  k.reserve(n);
  for (int y = 0; y < n; ++y) k.push_back(l.rho(y));
  PermGroup g(n, k);
  std::vector<Perm> stab;
  for (const Perm& p : g.elements())
    if (p(0) == 0) stab.push_back(p);
  return Folder{std::move(g), PermGroup::from_elements(std::move(stab)),
                std::move(k)};
}

namespace {

int element_index(const std::vector<Perm>& sorted, const Perm& p) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), p);
  if (it == sorted.end() || *it != p)
    throw InputError("folder: element outside the group");
  return static_cast<int>(it - sorted.begin());
}

// coset of H containing each element of G, numbered by first appearance
std::vector<int> coset_ids(const std::vector<Perm>& ge,
                           const std::vector<Perm>& he) {
  std::vector<int> coset(ge.size(), -1);
  int next = 0;
  for (std::size_t i = 0; i < ge.size(); ++i) {
    if (coset[i] != -1) continue;
    for (const Perm& h : he) coset[element_index(ge, h * ge[i])] = next;
    ++next;
  }
  return coset;
}

}  // namespace

Loop folder_to_loop(const Folder& f) {
  if (f.k.empty() || !f.k[0].is_identity())
    throw InputError("folder: K must start with the identity");
  const auto& ge = f.g.elements();
  const auto& he = f.h.elements();
  auto coset = coset_ids(ge, he);
  int ncos = 1 + *std::max_element(coset.begin(), coset.end());
  if (static_cast<std::size_t>(ncos) != f.k.size())
    throw InputError("NotTransversal: K has " + std::to_string(f.k.size()) +
                     " elements but H has " + std::to_string(ncos) +
                     " cosets");
  std::vector<int> k_at(ncos, -1);
  for (std::size_t i = 0; i < f.k.size(); ++i) {
    int c = coset[element_index(ge, f.k[i])];
    if (k_at[c] != -1)
      throw InputError("NotTransversal: K[" + std::to_string(k_at[c]) +
                       "] and K[" + std::to_string(i) +
                       "] share a coset of H");
    k_at[c] = static_cast<int>(i);
  }
  int n = static_cast<int>(f.k.size());
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      t[x][y] = k_at[coset[element_index(ge, f.k[x] * f.k[y])]];
  try {
    return Loop(std::move(t));
  } catch (const InputError&) {
    throw InputError(
        "NotTransversal: K is not a transversal of some conjugate of H");
  }
}

FolderLevel folder_level_from_string(const std::string& s) {
  if (s == "folder") return FolderLevel::folder;
  if (s == "bol") return FolderLevel::bol;
  if (s == "ar") return FolderLevel::ar;
  if (s == "bruck") return FolderLevel::bruck;
  if (s == "bx2p") return FolderLevel::bx2p;
  throw InputError("unknown folder level: " + s);
}

std::string to_string(FolderLevel level) {
  switch (level) {
    case FolderLevel::folder: return "folder";
    case FolderLevel::bol: return "bol";
    case FolderLevel::ar: return "ar";
    case FolderLevel::bruck: return "bruck";
    case FolderLevel::bx2p: return "bx2p";
  }
  return "folder";
}

namespace {

// all conjugates of H minus the identity, as a sorted vector
std::vector<Perm> conjugate_union(const PermGroup& g, const PermGroup& h) {
  std::set<Perm> acc;
  const auto& ge = g.elements();
  std::set<std::vector<Perm>> seen;
  for (const Perm& x : ge) {
    std::vector<Perm> conj;
    conj.reserve(h.order());
    for (const Perm& y : h.elements()) conj.push_back(conjugate(y, x));
    std::sort(conj.begin(), conj.end());
    if (!seen.insert(conj).second) continue;
    for (const Perm& y : conj)
      if (!y.is_identity()) acc.insert(y);
  }
  return {acc.begin(), acc.end()};
}

std::string check_axioms(const Folder& f) {
  if (f.k.empty()) return "axiom: K is empty";
  if (!f.k[0].is_identity()) return "axiom: K[0] is not the identity";
  if (!is_subgroup_of(f.h, f.g)) return "axiom: H is not a subgroup of G";
  for (const Perm& k : f.k)
    if (!f.g.contains(k)) return "axiom: K is not contained in G";
  std::vector<Perm> sorted = f.k;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    return "axiom: K has repeated elements";
  if (static_cast<long long>(f.k.size()) * f.h.order() != f.g.order())
    return "axiom: |K| differs from the index of H";
  auto bad = conjugate_union(f.g, f.h);
  for (std::size_t i = 0; i < f.k.size(); ++i)
    for (std::size_t j = 0; j < f.k.size(); ++j) {
      if (i == j) continue;
      if (std::binary_search(bad.begin(), bad.end(),
                             f.k[i] * f.k[j].inverse()))
        return "axiom: K[" + std::to_string(i) + "] K[" + std::to_string(j) +
               "]^-1 meets a conjugate of H";
    }
  return "";
}

bool in_sorted(const std::vector<Perm>& sorted, const Perm& p) {
  return std::binary_search(sorted.begin(), sorted.end(), p);
}

}  // namespace

FolderReport verify_folder(const Folder& f, FolderLevel level) {
  FolderReport r;
  r.level = level;
  r.reason = check_axioms(f);
  if (!r.reason.empty()) return r;
  r.faithful = core(f.g, f.h).is_trivial();
  r.envelope = PermGroup(f.g.degree(), f.k).order() == f.g.order();

  std::vector<Perm> sorted = f.k;
  std::sort(sorted.begin(), sorted.end());
  int n = static_cast<int>(f.k.size());

  if (level >= FolderLevel::bol) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (!in_sorted(sorted, f.k[i] * f.k[j] * f.k[i])) {
          r.reason = "bol: K[" + std::to_string(i) + "] K[" +
                     std::to_string(j) + "] K[" + std::to_string(i) +
                     "] is outside K";
          return r;
        }
  }
  if (level >= FolderLevel::ar) {
    for (const Perm& h : f.h.generators())
      for (int i = 0; i < n; ++i)
        if (!in_sorted(sorted, conjugate(f.k[i], h))) {
          r.reason = "ar: conjugating K[" + std::to_string(i) +
                     "] by an H generator leaves K";
          return r;
        }
  }
  if (level >= FolderLevel::bruck) {
    std::vector<int> inv(n, -1);
    for (int i = 0; i < n; ++i) {
      Perm ki = f.k[i].inverse();
      auto it = std::find(f.k.begin(), f.k.end(), ki);
      if (it == f.k.end()) {
        r.reason = "bruck: K[" + std::to_string(i) + "]^-1 is outside K";
        return r;
      }
      inv[i] = static_cast<int>(it - f.k.begin());
    }
    Loop l = folder_to_loop(f);
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        if (inv[l.op(x, y)] != l.op(inv[x], inv[y])) {
          r.reason = "bruck: inversion breaks at (" + std::to_string(x) +
                     ", " + std::to_string(y) + ")";
          return r;
        }
  }
  if (level >= FolderLevel::bx2p) {
    for (int i = 0; i < n; ++i) {
      int o = f.k[i].order();
      while (o % 2 == 0) o /= 2;
      if (o != 1) {
        r.reason = "bx2p: K[" + std::to_string(i) +
                   "] does not have 2-power order";
        return r;
      }
    }
  }
  r.pass = true;
  return r;
}

Perm h_xy(const Folder& f, const Loop& l, int x, int y) {
  Perm h = f.k[x] * f.k[y] * f.k[l.op(x, y)].inverse();
  if (!f.h.contains(h))
    throw VerdictError("NotInH: coset defect at (" + std::to_string(x) +
                       ", " + std::to_string(y) + ") escapes H");
  return h;
}

bool h_generated_by_defects(const Folder& f) {
  Loop l = folder_to_loop(f);
  std::set<Perm> gens;
  int n = l.size();
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) gens.insert(h_xy(f, l, x, y));
  std::vector<Perm> gv(gens.begin(), gens.end());
  return PermGroup(f.g.degree(), std::move(gv)).order() == f.h.order();
}

std::optional<Folder> detect_subfolder(const Folder& f, const PermGroup& u) {
  if (!is_subgroup_of(u, f.g))
    throw InputError("detect_subfolder: U is not a subgroup of G");
  PermGroup uh = intersection(u, f.h);
  std::vector<Perm> uk;
  for (const Perm& k : f.k)
    if (u.contains(k)) uk.push_back(k);
  if (uh.order() * static_cast<long long>(uk.size()) != u.order())
    return std::nullopt;
  auto prod = set_product(uh.elements(), uk);
  if (static_cast<long long>(prod.size()) != u.order()) return std::nullopt;
  return Folder{u, std::move(uh), std::move(uk)};
}

QuotientFolder quotient_folder(const Folder& f, const PermGroup& n) {
  if (!is_subgroup_of(n, f.h))
    throw InputError("quotient_folder: N must lie inside H");
  auto q = quotient(f.g, n);
  std::vector<Perm> kk;
  kk.reserve(f.k.size());
  for (const Perm& k : f.k) kk.push_back(q.project(k));
  Folder qf{q.group, q.project_subgroup(f.h), std::move(kk)};
  QuotientFolder out{std::move(qf), false};
  out.same_loop = folder_to_loop(out.folder) == folder_to_loop(f);
  return out;
}

}  // namespace loopforge
