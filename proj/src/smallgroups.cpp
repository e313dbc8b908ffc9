#include "loopforge/smallgroups.hpp"

#include <algorithm>

#include "loopforge/errors.hpp"

namespace loopforge {

Loop cyclic_loop(int n) {
  if (n < 1) throw InputError("cyclic_loop: order must be positive");
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) t[x][y] = (x + y) % n;
  return Loop(std::move(t));
}

Loop direct_product(const Loop& a, const Loop& b) {
  int na = a.size(), nb = b.size(), n = na * nb;
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      t[x][y] = a.op(x / nb, y / nb) * nb + b.op(x % nb, y % nb);
  return Loop(std::move(t));
}

Loop dihedral_loop(int n) {
  if (n < 1) throw InputError("dihedral_loop: need n >= 1");
  // element i + n*e is r^i s^e; (r^i s^e)(r^j s^f) = r^(i + j or i - j) s^(e^f)
  int m = 2 * n;
  std::vector<std::vector<int>> t(m, std::vector<int>(m));
  for (int e = 0; e < 2; ++e)
    for (int i = 0; i < n; ++i)
      for (int f = 0; f < 2; ++f)
        for (int j = 0; j < n; ++j) {
          int k = e == 0 ? (i + j) % n : (i - j + n) % n;
          t[i + n * e][j + n * f] = k + n * (e ^ f);
        }
  return Loop(std::move(t));
}

Loop dicyclic_loop(int m) {
  if (m < 1) throw InputError("dicyclic_loop: need m >= 1");
  // element i + 2m*e is a^i b^e with a^2m = 1, b^2 = a^m, b^-1 a b = a^-1
  int n = 4 * m, c = 2 * m;
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int e = 0; e < 2; ++e)
    for (int i = 0; i < c; ++i)
      for (int f = 0; f < 2; ++f)
        for (int j = 0; j < c; ++j) {
          int k = e == 0 ? (i + j) % c : (i - j + c) % c;
          int g = e ^ f;
          if (e == 1 && f == 1) k = (k + m) % c;
          t[i + c * e][j + c * f] = k + c * g;
        }
  return Loop(std::move(t));
}

Loop semidirect_c2(int m, int t, int s) {
  if (m < 1) throw InputError("semidirect_c2: need m >= 1");
  auto norm = [m](long long v) { return static_cast<int>(((v % m) + m) % m); };
  if (norm(static_cast<long long>(t) * t) != 1 % m ||
      norm(static_cast<long long>(s) * (t - 1)) != 0)
    throw InputError("semidirect_c2: parameters do not define a group");
  int n = 2 * m;
  std::vector<std::vector<int>> tab(n, std::vector<int>(n));
  for (int e = 0; e < 2; ++e)
    for (int i = 0; i < m; ++i)
      for (int f = 0; f < 2; ++f)
        for (int j = 0; j < m; ++j) {
          long long k = e == 0 ? i + j : i + static_cast<long long>(j) * t;
          int g = e ^ f;
          if (e == 1 && f == 1) k += s;
          tab[i + m * e][j + m * f] = norm(k) + m * g;
        }
  return Loop(std::move(tab));
}

Loop loop_from_permgroup(const PermGroup& g) {
  const auto& e = g.elements();
  int n = static_cast<int>(e.size());
  auto idx = [&](const Perm& p) {
    return static_cast<int>(std::lower_bound(e.begin(), e.end(), p) -
                            e.begin());
  };
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t[i][j] = idx(e[i] * e[j]);
  return Loop(std::move(t));
}

std::vector<NamedLoop> groups_up_to_12() {
  std::vector<NamedLoop> out;
  auto add = [&out](std::string name, Loop l) {
    out.push_back({std::move(name), std::move(l)});
  };
  for (int n = 1; n <= 12; ++n) add("C" + std::to_string(n), cyclic_loop(n));
  add("C2xC2", direct_product(cyclic_loop(2), cyclic_loop(2)));
  add("S3", dihedral_loop(3));
  add("C4xC2", direct_product(cyclic_loop(4), cyclic_loop(2)));
  add("C2xC2xC2", direct_product(cyclic_loop(2),
                                 direct_product(cyclic_loop(2), cyclic_loop(2))));
  add("D8", dihedral_loop(4));
  add("Q8", dicyclic_loop(2));
  add("C3xC3", direct_product(cyclic_loop(3), cyclic_loop(3)));
  add("D10", dihedral_loop(5));
  add("C6xC2", direct_product(cyclic_loop(6), cyclic_loop(2)));
  add("D12", dihedral_loop(6));
  add("A4", loop_from_permgroup(
                PermGroup(4, {Perm({1, 2, 0, 3}), Perm({0, 2, 3, 1})})));
  add("Dic3", dicyclic_loop(3));
  return out;
}

}  // namespace loopforge
