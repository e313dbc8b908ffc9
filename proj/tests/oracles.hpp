#pragma once

// Independent oracles for test expectations.  These deliberately use
// different algorithms from the library: pairwise-product fixpoints instead
// of breadth-first closure, class-subset scans instead of Sylow cores, and
// so on, so that agreement is evidence rather than tautology.

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "loopforge/perm.hpp"
#include "loopforge/permgroup.hpp"

namespace oracles {

using loopforge::Perm;
using loopforge::PermGroup;

/// Closure by repeated all-pairs products until a fixpoint.
inline std::set<Perm> closure_by_pairs(std::vector<Perm> gens, int degree) {
  std::set<Perm> cur(gens.begin(), gens.end());
  cur.insert(Perm::identity(degree));
  while (true) {
    std::set<Perm> next = cur;
    for (const Perm& a : cur)
      for (const Perm& b : cur) next.insert(a * b);
    if (next.size() == cur.size()) return cur;
    cur = std::move(next);
  }
}

/// All subgroups of order `target` found as closures of small subsets.
/// Complete for subgroups generated by at most two elements.
inline std::vector<std::set<Perm>> subgroups_of_order_2gen(
    const PermGroup& g, std::size_t target) {
  std::vector<std::set<Perm>> found;
  const auto& e = g.elements();
  std::set<std::set<Perm>> seen;
  for (std::size_t i = 0; i < e.size(); ++i)
    for (std::size_t j = i; j < e.size(); ++j) {
      auto c = closure_by_pairs({e[i], e[j]}, g.degree());
      if (c.size() == target && seen.insert(c).second)
        found.push_back(std::move(c));
    }
  return found;
}

/// Conjugacy classes by brute force: the full orbit {x^g : g in G}.
inline std::vector<std::set<Perm>> classes_by_brute_force(const PermGroup& g) {
  std::vector<std::set<Perm>> classes;
  std::set<Perm> left(g.elements().begin(), g.elements().end());
  while (!left.empty()) {
    Perm x = *left.begin();
    std::set<Perm> cls;
    for (const Perm& h : g.elements()) cls.insert(conjugate(x, h));
    for (const Perm& p : cls) left.erase(p);
    classes.push_back(std::move(cls));
  }
  return classes;
}

/// Every normal subgroup, as the class subsets whose union is closed under
/// multiplication.  Exponential in the class count; fine for test groups.
inline std::vector<std::set<Perm>> normal_subgroups_by_class_subsets(
    const PermGroup& g) {
  auto classes = classes_by_brute_force(g);
  // identity class must always be in; iterate subsets of the others
  std::size_t idc = 0;
  for (std::size_t i = 0; i < classes.size(); ++i)
    if (classes[i].begin()->is_identity()) idc = i;
  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < classes.size(); ++i)
    if (i != idc) rest.push_back(i);
  std::vector<std::set<Perm>> out;
  for (std::size_t mask = 0; mask < (1u << rest.size()); ++mask) {
    std::set<Perm> u(classes[idc].begin(), classes[idc].end());
    for (std::size_t b = 0; b < rest.size(); ++b)
      if (mask & (1u << b))
        u.insert(classes[rest[b]].begin(), classes[rest[b]].end());
    bool closed = true;
    for (const Perm& a : u) {
      for (const Perm& b : u)
        if (!u.count(a * b)) {
          closed = false;
          break;
        }
      if (!closed) break;
    }
    if (closed) out.push_back(std::move(u));
  }
  return out;
}

/// Abstract multiplication table of a group: table[i][j] = index of e_i*e_j
/// in the sorted element list.  Two groups with identical tables after any
/// relabeling are isomorphic; used to cross-check quotients.
inline std::vector<std::vector<int>> cayley_table(const PermGroup& g) {
  const auto& e = g.elements();
  auto idx = [&](const Perm& p) {
    return static_cast<int>(
        std::lower_bound(e.begin(), e.end(), p) - e.begin());
  };
  std::vector<std::vector<int>> t(e.size(), std::vector<int>(e.size()));
  for (std::size_t i = 0; i < e.size(); ++i)
    for (std::size_t j = 0; j < e.size(); ++j) t[i][j] = idx(e[i] * e[j]);
  return t;
}

}  // namespace oracles
