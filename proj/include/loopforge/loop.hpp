#pragma once

#include <optional>
#include <string>
#include <vector>

#include "loopforge/perm.hpp"

namespace loopforge {

/// A finite loop on {0, ..., n-1} given by its multiplication table, with 0
/// as the two-sided identity.  table[x][y] is the product x*y.  Construction
/// validates the Latin square property and the identity.
class Loop {
public:
  explicit Loop(std::vector<std::vector<int>> table);

  int size() const { return static_cast<int>(table_.size()); }
  int op(int x, int y) const { return table_[x][y]; }
  const std::vector<std::vector<int>>& table() const { return table_; }

  /// Right translation: p -> p * y.
  Perm rho(int y) const;
  /// Left translation: p -> x * p.
  Perm lam(int x) const;

  /// Solve x * y = z for y.
  int left_divide(int x, int z) const;
  /// Solve x * y = z for x.
  int right_divide(int y, int z) const;

  friend bool operator==(const Loop&, const Loop&) = default;

private:
  std::vector<std::vector<int>> table_;
};

struct TripleWitness {
  int x = 0, y = 0, z = 0;
};

/// First (x, y, z) violating ((x*y)*z)*y = x*((y*z)*y), if any.
std::optional<TripleWitness> bol_witness(const Loop& l);
bool is_bol(const Loop& l);

/// Whether every element has a two-sided inverse.
bool has_two_sided_inverses(const Loop& l);
/// The two-sided inverse of x; throws if the left and right inverses differ.
int inverse_of(const Loop& l, int x);

/// First (x, y) with (x*y)^-1 != x^-1 * y^-1, if any.  Requires two-sided
/// inverses.
std::optional<TripleWitness> aip_witness(const Loop& l);
bool is_aip(const Loop& l);

bool is_bruck(const Loop& l);

/// Whether conjugation by every h_{x,y} = rho_x rho_y rho_{x*y}^-1 permutes
/// the set of right translations.
bool is_ar_loop(const Loop& l);

bool is_associative(const Loop& l);
bool is_commutative(const Loop& l);
bool is_abelian_group(const Loop& l);
bool is_exponent_two(const Loop& l);

/// Order of x as the least k > 0 with x^k = 0, powers taken as x^(k+1) =
/// x^k * x.  Only meaningful in power-associative loops, so this insists the
/// loop is Bol.
int element_order(const Loop& l, int x);
int loop_exponent(const Loop& l);

/// Smallest subloop containing the seed, as a sorted element list.  A
/// multiplicatively closed subset of a finite loop is a subloop.
std::vector<int> subloop_generated(const Loop& l, std::vector<int> seed);
bool is_subloop(const Loop& l, const std::vector<int>& s);

/// The subloop reindexed as a loop in its own right (sorted order; 0 stays
/// the identity).
Loop subloop_table(const Loop& l, const std::vector<int>& s);

/// Normality via the congruence criterion: the translates x*S partition the
/// loop and block multiplication is well defined.
bool is_normal_subloop(const Loop& l, const std::vector<int>& s);

struct LoopQuotient {
  Loop loop;
  std::vector<int> block_of;  // element -> block index in the quotient
};
LoopQuotient quotient_loop(const Loop& l, const std::vector<int>& s);

/// Every subloop, as sorted element lists (sorted by size then content).
/// Loops up to 64 elements.
std::vector<std::vector<int>> all_subloops(const Loop& l);

/// Soluble: reachable from the trivial loop by extensions with abelian group
/// factors.
bool is_soluble_loop(const Loop& l);

/// Identity-fixing isomorphism a -> b as an image vector, if one exists.
std::optional<std::vector<int>> loop_isomorphism(const Loop& a, const Loop& b);
bool loops_isomorphic(const Loop& a, const Loop& b);

/// Lexicographically least relabeled table over all relabelings fixing 0,
/// flattened.  Only for sizes <= 8.
std::vector<int> canonical_key(const Loop& l);

}  // namespace loopforge
