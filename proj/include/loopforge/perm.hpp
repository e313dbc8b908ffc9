#pragma once

#include <compare>
#include <string>
#include <vector>

namespace loopforge {

/// Permutation of {0, ..., degree-1} stored as its image sequence.
/// Products compose left to right: (a * b) sends p to b(a(p)), so in a right
/// action x^(a*b) = (x^a)^b.  Comparison is lexicographic on images, which
/// makes the identity the least element of any group.
class Perm {
public:
  Perm() = default;
  explicit Perm(std::vector<int> images);
  static Perm identity(int degree);

  int degree() const { return static_cast<int>(img_.size()); }
  int operator()(int p) const { return img_[static_cast<std::size_t>(p)]; }
  const std::vector<int>& images() const { return img_; }

  bool is_identity() const;
  Perm inverse() const;
  int order() const;

  friend Perm operator*(const Perm& a, const Perm& b);
  friend bool operator==(const Perm&, const Perm&) = default;
  friend auto operator<=>(const Perm&, const Perm&) = default;

private:
  std::vector<int> img_;
};

/// g^-1 * x * g under left-to-right composition.
Perm conjugate(const Perm& x, const Perm& g);

/// a^-1 * b^-1 * a * b.
Perm commutator(const Perm& a, const Perm& b);

/// Sorted cycle lengths including fixed points, e.g. [1,1,2] for a
/// transposition of degree 4.
std::vector<int> cycle_type(const Perm& p);

/// Cycle notation for display, "()" for the identity.
std::string to_string(const Perm& p);

}  // namespace loopforge
