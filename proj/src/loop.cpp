#include "loopforge/loop.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <string>

#include "loopforge/errors.hpp"

namespace loopforge {

Loop::Loop(std::vector<std::vector<int>> table) : table_(std::move(table)) {
  int n = static_cast<int>(table_.size());
  if (n == 0) throw InputError("loop table is empty");
  for (const auto& row : table_)
    if (static_cast<int>(row.size()) != n)
      throw InputError("loop table is not square");
  std::vector<char> seen(n);
  for (int x = 0; x < n; ++x) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int y = 0; y < n; ++y) {
      int v = table_[x][y];
      if (v < 0 || v >= n || seen[v])
        throw InputError("NotLatin: row " + std::to_string(x) +
                         " is not a permutation");
      seen[v] = 1;
    }
  }
  for (int y = 0; y < n; ++y) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int x = 0; x < n; ++x) {
      int v = table_[x][y];
      if (seen[v])
        throw InputError("NotLatin: column " + std::to_string(y) +
                         " is not a permutation");
      seen[v] = 1;
    }
  }
  for (int x = 0; x < n; ++x)
    if (table_[x][0] != x || table_[0][x] != x)
      throw InputError("NoIdentity: 0 is not a two-sided identity");
}

Perm Loop::rho(int y) const {
  int n = size();
  std::vector<int> img(n);
  for (int x = 0; x < n; ++x) img[x] = table_[x][y];
  return Perm(std::move(img));
}

Perm Loop::lam(int x) const {
  int n = size();
  std::vector<int> img(n);
  for (int y = 0; y < n; ++y) img[y] = table_[x][y];
  return Perm(std::move(img));
}

int Loop::left_divide(int x, int z) const {
  for (int y = 0; y < size(); ++y)
    if (table_[x][y] == z) return y;
  throw InputError("left_divide: no solution");
}

int Loop::right_divide(int y, int z) const {
  for (int x = 0; x < size(); ++x)
    if (table_[x][y] == z) return x;
  throw InputError("right_divide: no solution");
}

std::optional<TripleWitness> bol_witness(const Loop& l) {
  int n = l.size();
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        if (l.op(l.op(l.op(x, y), z), y) != l.op(x, l.op(l.op(y, z), y)))
          return TripleWitness{x, y, z};
  return std::nullopt;
}

bool is_bol(const Loop& l) { return !bol_witness(l).has_value(); }

bool has_two_sided_inverses(const Loop& l) {
  for (int x = 0; x < l.size(); ++x)
    if (l.left_divide(x, 0) != l.right_divide(x, 0)) return false;
  return true;
}

int inverse_of(const Loop& l, int x) {
  int r = l.left_divide(x, 0);
  if (l.op(r, x) != 0)
    throw InputError("NoTwoSidedInverse: element " + std::to_string(x));
  return r;
}

std::optional<TripleWitness> aip_witness(const Loop& l) {
  int n = l.size();
  std::vector<int> inv(n);
  for (int x = 0; x < n; ++x) inv[x] = inverse_of(l, x);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (inv[l.op(x, y)] != l.op(inv[x], inv[y]))
        return TripleWitness{x, y, 0};
  return std::nullopt;
}

bool is_aip(const Loop& l) { return !aip_witness(l).has_value(); }

bool is_bruck(const Loop& l) { return is_bol(l) && is_aip(l); }

bool is_ar_loop(const Loop& l) {
  int n = l.size();
  std::vector<Perm> rhos;
  rhos.reserve(n);
  for (int y = 0; y < n; ++y) rhos.push_back(l.rho(y));
  std::vector<Perm> sorted = rhos;
  std::sort(sorted.begin(), sorted.end());
  auto in_k = [&](const Perm& p) {
    return std::binary_search(sorted.begin(), sorted.end(), p);
  };
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      Perm h = rhos[x] * rhos[y] * rhos[l.op(x, y)].inverse();
      for (int z = 0; z < n; ++z)
        if (!in_k(conjugate(rhos[z], h))) return false;
    }
  return true;
}

bool is_associative(const Loop& l) {
  int n = l.size();
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        if (l.op(l.op(x, y), z) != l.op(x, l.op(y, z))) return false;
  return true;
}

bool is_commutative(const Loop& l) {
  int n = l.size();
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y)
      if (l.op(x, y) != l.op(y, x)) return false;
  return true;
}

bool is_abelian_group(const Loop& l) {
  return is_commutative(l) && is_associative(l);
}

bool is_exponent_two(const Loop& l) {
  for (int x = 0; x < l.size(); ++x)
    if (l.op(x, x) != 0) return false;
  return true;
}

int element_order(const Loop& l, int x) {
  if (bol_witness(l).has_value())
    throw InputError("NotBol: orders need power associativity");
  int p = x, k = 1;
  while (p != 0) {
    p = l.op(p, x);
    ++k;
    if (k > l.size() + 1) throw InputError("element_order: no cycle");
  }
  return x == 0 ? 1 : k;
}

int loop_exponent(const Loop& l) {
  long long e = 1;
  for (int x = 0; x < l.size(); ++x)
    e = std::lcm(e, static_cast<long long>(element_order(l, x)));
  return static_cast<int>(e);
}

std::vector<int> subloop_generated(const Loop& l, std::vector<int> seed) {
  std::set<int> s(seed.begin(), seed.end());
  s.insert(0);
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<int> cur(s.begin(), s.end());
    for (int a : cur)
      for (int b : cur)
        if (s.insert(l.op(a, b)).second) grew = true;
  }
  return {s.begin(), s.end()};
}

bool is_subloop(const Loop& l, const std::vector<int>& s) {
  if (s.empty() || s[0] != 0) return false;
  std::set<int> set(s.begin(), s.end());
  if (set.size() != s.size()) return false;
  for (int a : s)
    for (int b : s)
      if (!set.count(l.op(a, b))) return false;
  return true;
}

Loop subloop_table(const Loop& l, const std::vector<int>& s) {
  if (!is_subloop(l, s)) throw InputError("subloop_table: not a subloop");
  std::vector<int> pos(l.size(), -1);
  for (std::size_t i = 0; i < s.size(); ++i) pos[s[i]] = static_cast<int>(i);
  int m = static_cast<int>(s.size());
  std::vector<std::vector<int>> t(m, std::vector<int>(m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) t[i][j] = pos[l.op(s[i], s[j])];
  return Loop(std::move(t));
}

namespace {

// blocks x*S for every x; returns block index per element or nullopt if the
// translates fail to partition the loop
std::optional<std::vector<int>> coset_blocks(const Loop& l,
                                             const std::vector<int>& s) {
  int n = l.size();
  std::map<std::vector<int>, int> ids;
  std::vector<int> block_of(n, -1);
  std::vector<std::vector<int>> blocks;
  for (int x = 0; x < n; ++x) {
    std::vector<int> b;
    b.reserve(s.size());
    for (int e : s) b.push_back(l.op(x, e));
    std::sort(b.begin(), b.end());
    auto [it, fresh] = ids.emplace(std::move(b), static_cast<int>(ids.size()));
    if (fresh) blocks.push_back(it->first);
    block_of[x] = it->second;
  }
  // x always lies in x*S (0 is in S), so the translates partition the loop
  // exactly when the distinct ones never overlap
  std::vector<int> owner(n, -1);
  for (const auto& b : blocks)
    for (int e : b) {
      if (owner[e] != -1) return std::nullopt;
      owner[e] = 1;
    }
  return block_of;
}

}  // namespace

bool is_normal_subloop(const Loop& l, const std::vector<int>& s) {
  if (!is_subloop(l, s)) return false;
  auto blocks = coset_blocks(l, s);
  if (!blocks) return false;
  const auto& block_of = *blocks;
  int n = l.size();
  int m = 1 + *std::max_element(block_of.begin(), block_of.end());
  std::vector<std::vector<int>> members(m);
  for (int x = 0; x < n; ++x) members[block_of[x]].push_back(x);
  // well-definedness of block multiplication
  for (int bx = 0; bx < m; ++bx)
    for (int by = 0; by < m; ++by) {
      int target = block_of[l.op(members[bx][0], members[by][0])];
      for (int a : members[bx])
        for (int b : members[by])
          if (block_of[l.op(a, b)] != target) return false;
    }
  return true;
}

LoopQuotient quotient_loop(const Loop& l, const std::vector<int>& s) {
  if (!is_normal_subloop(l, s))
    throw InputError("NotNormal: subloop is not normal");
  auto block_of = *coset_blocks(l, s);
  int m = 1 + *std::max_element(block_of.begin(), block_of.end());
  // relabel blocks by their least member, identity block first
  std::vector<int> least(m, l.size());
  for (int x = 0; x < l.size(); ++x)
    least[block_of[x]] = std::min(least[block_of[x]], x);
  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return least[a] < least[b]; });
  std::vector<int> new_id(m);
  for (int i = 0; i < m; ++i) new_id[order[i]] = i;
  std::vector<int> rep(m);
  for (int i = 0; i < m; ++i) rep[new_id[i]] = least[i];
  for (int& b : block_of) b = new_id[b];
  std::vector<std::vector<int>> t(m, std::vector<int>(m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) t[i][j] = block_of[l.op(rep[i], rep[j])];
  return LoopQuotient{Loop(std::move(t)), std::move(block_of)};
}

std::vector<std::vector<int>> all_subloops(const Loop& l) {
  int n = l.size();
  if (n > 64) throw SizeLimit("all_subloops: loop larger than 64");
  auto close = [&](unsigned long long mask) {
    bool grew = true;
    while (grew) {
      grew = false;
      for (int a = 0; a < n; ++a) {
        if (!(mask >> a & 1)) continue;
        for (int b = 0; b < n; ++b) {
          if (!(mask >> b & 1)) continue;
          unsigned long long bit = 1ull << l.op(a, b);
          if (!(mask & bit)) {
            mask |= bit;
            grew = true;
          }
        }
      }
    }
    return mask;
  };
  std::set<unsigned long long> seen;
  std::vector<unsigned long long> queue{close(1ull)};
  seen.insert(queue[0]);
  for (std::size_t q = 0; q < queue.size(); ++q) {
    unsigned long long cur = queue[q];
    for (int e = 1; e < n; ++e) {
      if (cur >> e & 1) continue;
      unsigned long long ext = close(cur | (1ull << e));
      if (seen.insert(ext).second) queue.push_back(ext);
    }
  }
  std::vector<std::vector<int>> out;
  for (unsigned long long mask : seen) {
    std::vector<int> s;
    for (int e = 0; e < n; ++e)
      if (mask >> e & 1) s.push_back(e);
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

namespace {

bool soluble_rec(const Loop& l, std::map<std::vector<int>, bool>& memo) {
  if (l.size() == 1) return true;
  std::vector<int> key;
  key.reserve(l.size() * l.size());
  for (const auto& row : l.table())
    key.insert(key.end(), row.begin(), row.end());
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  bool ok = is_abelian_group(l);
  if (!ok) {
    auto subs = all_subloops(l);
    // larger normal subloops first: shallower recursion
    for (auto it = subs.rbegin(); it != subs.rend() && !ok; ++it) {
      if (static_cast<int>(it->size()) == l.size() || it->size() == 1)
        continue;
      if (!is_normal_subloop(l, *it)) continue;
      ok = soluble_rec(quotient_loop(l, *it).loop, memo) &&
           soluble_rec(subloop_table(l, *it), memo);
    }
  }
  memo.emplace(std::move(key), ok);
  return ok;
}

}  // namespace

bool is_soluble_loop(const Loop& l) {
  std::map<std::vector<int>, bool> memo;
  return soluble_rec(l, memo);
}

namespace {

std::vector<std::vector<int>> iso_invariants(const Loop& l) {
  int n = l.size();
  std::vector<std::vector<int>> inv(n);
  for (int x = 0; x < n; ++x) {
    auto rt = cycle_type(l.rho(x));
    auto lt = cycle_type(l.lam(x));
    inv[x].push_back(l.op(x, x) == 0 ? 0 : 1);
    inv[x].push_back(l.op(x, x) == x ? 0 : 1);
    inv[x].insert(inv[x].end(), rt.begin(), rt.end());
    inv[x].push_back(-1);
    inv[x].insert(inv[x].end(), lt.begin(), lt.end());
  }
  return inv;
}

bool iso_extend(const Loop& a, const Loop& b, std::vector<int>& phi,
                std::vector<char>& used, int next,
                const std::vector<std::vector<int>>& ia,
                const std::vector<std::vector<int>>& ib) {
  int n = a.size();
  while (next < n && phi[next] != -1) ++next;
  if (next == n) return true;
  for (int img = 1; img < n; ++img) {
    if (used[img] || ia[next] != ib[img]) continue;
    // tentative assignment with product propagation
    std::vector<std::pair<int, int>> placed;
    auto assign = [&](int x, int y) {
      if (phi[x] != -1) return phi[x] == y;
      if (used[y]) return false;
      phi[x] = y;
      used[y] = 1;
      placed.emplace_back(x, y);
      return true;
    };
    bool ok = assign(next, img);
    for (std::size_t i = 0; ok && i < placed.size(); ++i) {
      int x = placed[i].first;
      for (int z = 0; ok && z < n; ++z) {
        if (phi[z] == -1) continue;
        ok = assign(a.op(x, z), b.op(phi[x], phi[z])) &&
             assign(a.op(z, x), b.op(phi[z], phi[x]));
      }
    }
    if (ok && iso_extend(a, b, phi, used, next + 1, ia, ib)) return true;
    for (auto& [x, y] : placed) {
      phi[x] = -1;
      used[y] = 0;
    }
  }
  return false;
}

}  // namespace

std::optional<std::vector<int>> loop_isomorphism(const Loop& a,
                                                 const Loop& b) {
  if (a.size() != b.size()) return std::nullopt;
  auto ia = iso_invariants(a);
  auto ib = iso_invariants(b);
  auto sa = ia, sb = ib;
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  if (sa != sb) return std::nullopt;
  std::vector<int> phi(a.size(), -1);
  std::vector<char> used(a.size(), 0);
  phi[0] = 0;
  used[0] = 1;
  if (iso_extend(a, b, phi, used, 1, ia, ib)) return phi;
  return std::nullopt;
}

bool loops_isomorphic(const Loop& a, const Loop& b) {
  return loop_isomorphism(a, b).has_value();
}

std::vector<int> canonical_key(const Loop& l) {
  int n = l.size();
  if (n > 8) throw SizeLimit("canonical_key: loop larger than 8");
  std::vector<int> relab(n);
  std::iota(relab.begin(), relab.end(), 0);
  std::vector<int> best;
  std::vector<int> flat(n * n);
  do {
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        flat[relab[x] * n + relab[y]] = relab[l.op(x, y)];
    if (best.empty() || flat < best) best = flat;
  } while (std::next_permutation(relab.begin() + 1, relab.end()));
  return best;
}

}  // namespace loopforge
