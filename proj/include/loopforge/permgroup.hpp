#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "loopforge/perm.hpp"

namespace loopforge {

/// Default materialization cap (number of elements).  The CLI overrides it
/// from the LOOPFORGE_CAP environment variable.
std::size_t default_cap();
void set_default_cap(std::size_t cap);

/// A finite permutation group, defined by generators and materialized into a
/// sorted element list on demand.  After materialization the object is never
/// mutated again, so it is safe to share across threads.
class PermGroup {
public:
  PermGroup() = default;
  PermGroup(int degree, std::vector<Perm> generators);
  static PermGroup trivial(int degree);
  /// Wrap an element set that is already a group; elements are sorted here.
  static PermGroup from_elements(std::vector<Perm> elements);

  int degree() const { return degree_; }
  /// Generators; computed greedily for groups built from element sets.
  const std::vector<Perm>& generators() const;
  bool is_materialized() const { return elems_ != nullptr; }
  void materialize(std::size_t cap) const;
  const std::vector<Perm>& elements() const;  // materializes at default_cap()
  long long order() const;
  bool contains(const Perm& p) const;
  bool is_trivial() const { return order() == 1; }

private:
  int degree_ = 1;
  mutable std::vector<Perm> gens_;
  mutable std::shared_ptr<const std::vector<Perm>> elems_;
};

/// Full element list (the spec's materialize operation).
std::vector<Perm> materialize(const PermGroup& g, std::size_t cap);

/// Subgroup of g generated by gens (validated to lie in g).
PermGroup subgroup_generated(const PermGroup& g, const std::vector<Perm>& gens);

/// Greedy minimal generating sequence: repeatedly adjoin the least element
/// outside the running closure.
std::vector<Perm> small_generating_set(const std::vector<Perm>& elements);

bool is_subgroup_of(const PermGroup& h, const PermGroup& g);
bool is_normal_in(const PermGroup& n, const PermGroup& g);

PermGroup intersection(const PermGroup& a, const PermGroup& b);

/// Sorted set product {a*b : a in A, b in B}.
std::vector<Perm> set_product(const std::vector<Perm>& a,
                              const std::vector<Perm>& b);

PermGroup sylow_subgroup(const PermGroup& g, int p);
PermGroup o_p_subgroup(const PermGroup& g, int p);
PermGroup o2_subgroup(const PermGroup& g);
/// O_{2'}(g): the largest normal subgroup of odd order, accumulated from
/// conjugacy classes of odd-order elements.
PermGroup largest_normal_odd_subgroup(const PermGroup& g);
/// Fitting subgroup: product of the O_p over primes dividing |g|.
PermGroup fitting_subgroup(const PermGroup& g);
/// O^2(g): the smallest normal subgroup with 2-group quotient, generated by
/// all elements of odd order.
PermGroup odd_generated_subgroup(const PermGroup& g);
bool is_p_group(const PermGroup& g, int p);
bool is_2_group(const PermGroup& g);

/// Action of g on the right cosets of a normal subgroup n.
struct Quotient {
  PermGroup group;              // the image, degree = number of cosets
  PermGroup kernel;             // = n
  std::vector<Perm> reps;       // coset representatives, reps[0] in n
  std::shared_ptr<const std::vector<Perm>> parent;  // sorted elements of g
  std::vector<int> coset_of;    // parent element index -> coset index

  Perm project(const Perm& p) const;
  std::vector<Perm> project_set(const std::vector<Perm>& s) const;
  PermGroup project_subgroup(const PermGroup& h) const;
  /// Full preimage of a subgroup of the quotient.
  PermGroup preimage(const PermGroup& sub) const;
};

Quotient quotient(const PermGroup& g, const PermGroup& n);

/// Classes ordered by their least element; each class sorted.
std::vector<std::vector<Perm>> conjugacy_classes(const PermGroup& g);

PermGroup centralizer(const PermGroup& g, const Perm& x);
PermGroup centralizer_of_set(const PermGroup& g, const std::vector<Perm>& s);
PermGroup normalizer(const PermGroup& g, const PermGroup& u);
PermGroup normal_closure(const PermGroup& g, const std::vector<Perm>& s);
PermGroup derived_subgroup(const PermGroup& g);
/// g, [g,g], [[g,g],[g,g]], ... until stable.
std::vector<PermGroup> derived_series(const PermGroup& g);
bool is_soluble(const PermGroup& g);
PermGroup core(const PermGroup& g, const PermGroup& h);

/// Every subgroup, found by closing one-element extensions breadth first.
/// Returns nothing if more than `count_cap` subgroups exist.
std::optional<std::vector<PermGroup>> all_subgroups(const PermGroup& g,
                                                    std::size_t count_cap);
/// Subgroups u with h <= u <= g, same search started at h.
std::vector<PermGroup> overgroups(const PermGroup& g, const PermGroup& h);
/// Normal subgroups of g containing n0 (n0 must be normal), found by
/// adjoining whole conjugacy classes.
std::vector<PermGroup> normal_subgroups_above(const PermGroup& g,
                                              const PermGroup& n0);

struct Fingerprint {
  long long order = 0;
  std::vector<long long> class_sizes;               // sorted
  std::vector<std::pair<int, long long>> order_profile;  // element order -> count
  std::vector<long long> derived_orders;
  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
};
Fingerprint fingerprint(const PermGroup& g);

enum class IsoVerdict { yes, no, unknown };

struct IsoResult {
  IsoVerdict verdict = IsoVerdict::unknown;
  std::map<Perm, Perm> map;  // filled when verdict == yes
};

/// Explicit generator-image isomorphism search with a node budget; verdict
/// `unknown` means the budget ran out, never a guess.
IsoResult find_isomorphism(const PermGroup& a, const PermGroup& b,
                           long long budget = 4'000'000);

/// Invariant comparison first; an explicit search only for orders <= 2000.
IsoVerdict fingerprint_isomorphic(const PermGroup& a, const PermGroup& b);

}  // namespace loopforge
