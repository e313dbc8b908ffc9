#pragma once

// Group algorithms over an abstract element type.  An Ops object supplies
// id(), mul(a, b) and inv(a); elements need operator< and operator==.
// "Element set" arguments and results are sorted vectors, so membership is a
// binary search and iteration order is deterministic.

#include <algorithm>
#include <cstddef>
#include <deque>
#include <set>
#include <string>
#include <vector>

#include "loopforge/errors.hpp"

namespace loopforge {

template <class E>
bool set_contains(const std::vector<E>& sorted, const E& x) {
  return std::binary_search(sorted.begin(), sorted.end(), x);
}

/// Subgroup generated by `gens`: breadth-first closure under right
/// multiplication.  Positive words suffice since every element of a finite
/// group has finite order.  Throws CapExceeded past `cap` elements.
template <class E, class Ops>
std::vector<E> group_closure(const std::vector<E>& gens, const Ops& ops,
                             std::size_t cap) {
  std::set<E> seen;
  std::deque<E> todo;
  seen.insert(ops.id());
  todo.push_back(ops.id());
  while (!todo.empty()) {
    E cur = todo.front();
    todo.pop_front();
    for (const E& g : gens) {
      E nxt = ops.mul(cur, g);
      if (seen.insert(nxt).second) {
        if (seen.size() > cap)
          throw CapExceeded("group closure exceeds cap of " +
                            std::to_string(cap) + " elements");
        todo.push_back(nxt);
      }
    }
  }
  return std::vector<E>(seen.begin(), seen.end());
}

template <class E, class Ops>
E element_power(E x, long long n, const Ops& ops) {
  E acc = ops.id();
  while (n > 0) {
    if (n & 1) acc = ops.mul(acc, x);
    x = ops.mul(x, x);
    n >>= 1;
  }
  return acc;
}

template <class E, class Ops>
int generic_element_order(const E& x, const Ops& ops) {
  E cur = x;
  int n = 1;
  while (!(cur == ops.id())) {
    cur = ops.mul(cur, x);
    ++n;
  }
  return n;
}

/// Does x normalize the subgroup given by the sorted element set `sub`?
template <class E, class Ops>
bool normalizes(const E& x, const std::vector<E>& sub, const Ops& ops) {
  E xi = ops.inv(x);
  for (const E& s : sub) {
    if (!set_contains(sub, ops.mul(ops.mul(xi, s), x))) return false;
  }
  return true;
}

/// Sylow p-subgroup of the group with sorted element set `all`, grown by
/// iterated normalizer extension: while Q is not yet of full p-power order,
/// the normalizer N(Q) contains some x outside Q with x^p in Q, and <Q, x>
/// is a p-group of p times the size.  Scanning `all` in order makes the
/// result deterministic.
template <class E, class Ops>
std::vector<E> sylow_p_elems(const std::vector<E>& all, int p,
                             const Ops& ops) {
  std::size_t target = 1;
  std::size_t n = all.size();
  while (n % static_cast<std::size_t>(p) == 0) {
    n /= static_cast<std::size_t>(p);
    target *= static_cast<std::size_t>(p);
  }
  std::vector<E> q{ops.id()};
  while (q.size() < target) {
    bool grew = false;
    for (const E& x : all) {
      if (set_contains(q, x)) continue;
      if (!set_contains(q, element_power(x, p, ops))) continue;
      if (!normalizes(x, q, ops)) continue;
      std::vector<E> gens = q;
      gens.push_back(x);
      q = group_closure(gens, ops, q.size() * static_cast<std::size_t>(p));
      grew = true;
      break;
    }
    if (!grew)
      throw VerdictError("sylow extension stalled; element set is not a group");
  }
  return q;
}

/// Largest normal subgroup of `all` contained in `sub`: the intersection of
/// all conjugates of `sub`.
template <class E, class Ops>
std::vector<E> core_elems(const std::vector<E>& all, const std::vector<E>& sub,
                          const Ops& ops) {
  std::vector<E> cur = sub;
  for (const E& g : all) {
    E gi = ops.inv(g);
    std::vector<E> conj;
    conj.reserve(cur.size());
    for (const E& s : sub) conj.push_back(ops.mul(ops.mul(gi, s), g));
    std::sort(conj.begin(), conj.end());
    std::vector<E> inter;
    std::set_intersection(cur.begin(), cur.end(), conj.begin(), conj.end(),
                          std::back_inserter(inter));
    cur = std::move(inter);
    if (cur.size() == 1) break;
  }
  return cur;
}

/// Largest normal 2-subgroup: the core of one Sylow 2-subgroup.
template <class E, class Ops>
std::vector<E> o2_elems(const std::vector<E>& all, const Ops& ops) {
  return core_elems(all, sylow_p_elems(all, 2, ops), ops);
}

}  // namespace loopforge
