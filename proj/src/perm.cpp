#include "loopforge/perm.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "loopforge/errors.hpp"

namespace loopforge {

Perm::Perm(std::vector<int> images) : img_(std::move(images)) {
  std::vector<char> seen(img_.size(), 0);
  for (int v : img_) {
    if (v < 0 || v >= degree() || seen[static_cast<std::size_t>(v)])
      throw InputError("not a permutation: invalid image sequence");
    seen[static_cast<std::size_t>(v)] = 1;
  }
}

Perm Perm::identity(int degree) {
  std::vector<int> img(static_cast<std::size_t>(degree));
  std::iota(img.begin(), img.end(), 0);
  Perm p;
  p.img_ = std::move(img);
  return p;
}

bool Perm::is_identity() const {
  for (int i = 0; i < degree(); ++i)
    if (img_[static_cast<std::size_t>(i)] != i) return false;
  return true;
}

Perm Perm::inverse() const {
  Perm r;
  r.img_.resize(img_.size());
  for (int i = 0; i < degree(); ++i)
    r.img_[static_cast<std::size_t>(img_[static_cast<std::size_t>(i)])] = i;
  return r;
}

int Perm::order() const {
  long long ord = 1;
  std::vector<char> seen(img_.size(), 0);
  for (int i = 0; i < degree(); ++i) {
    if (seen[static_cast<std::size_t>(i)]) continue;
    int len = 0, j = i;
    while (!seen[static_cast<std::size_t>(j)]) {
      seen[static_cast<std::size_t>(j)] = 1;
      j = img_[static_cast<std::size_t>(j)];
      ++len;
    }
    ord = std::lcm(ord, static_cast<long long>(len));
  }
  return static_cast<int>(ord);
}

Perm operator*(const Perm& a, const Perm& b) {
  Perm r;
  r.img_.resize(a.img_.size());
  for (std::size_t i = 0; i < a.img_.size(); ++i)
    r.img_[i] = b.img_[static_cast<std::size_t>(a.img_[i])];
  return r;
}

Perm conjugate(const Perm& x, const Perm& g) { return g.inverse() * x * g; }

Perm commutator(const Perm& a, const Perm& b) {
  return a.inverse() * b.inverse() * a * b;
}

std::vector<int> cycle_type(const Perm& p) {
  std::vector<int> lens;
  std::vector<char> seen(static_cast<std::size_t>(p.degree()), 0);
  for (int i = 0; i < p.degree(); ++i) {
    if (seen[static_cast<std::size_t>(i)]) continue;
    int len = 0, j = i;
    while (!seen[static_cast<std::size_t>(j)]) {
      seen[static_cast<std::size_t>(j)] = 1;
      j = p(j);
      ++len;
    }
    lens.push_back(len);
  }
  std::sort(lens.begin(), lens.end());
  return lens;
}

std::string to_string(const Perm& p) {
  std::ostringstream os;
  std::vector<char> seen(static_cast<std::size_t>(p.degree()), 0);
  bool any = false;
  for (int i = 0; i < p.degree(); ++i) {
    if (seen[static_cast<std::size_t>(i)] || p(i) == i) continue;
    any = true;
    os << '(' << i;
    seen[static_cast<std::size_t>(i)] = 1;
    for (int j = p(i); j != i; j = p(j)) {
      os << ' ' << j;
      seen[static_cast<std::size_t>(j)] = 1;
    }
    os << ')';
  }
  if (!any) return "()";
  return os.str();
}

}  // namespace loopforge
