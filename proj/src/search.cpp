#include "loopforge/search.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "loopforge/bx2p.hpp"
#include "loopforge/errors.hpp"

namespace loopforge {
namespace {

using Table = std::vector<std::vector<int>>;

bool order_is_2_power_s(const Perm& p) {
  int o = p.order();
  while (o % 2 == 0) o /= 2;
  return o == 1;
}

// ---------------------------------------------------------------------------
// row-major backtracker over tables with identity row and column

struct RowMajor {
  int n;
  bool exp2;
  bool reverse;
  Table t;
  std::vector<unsigned> rowused, colused;
  std::vector<Table> done;

  explicit RowMajor(int n_, bool exp2_, bool reverse_)
      : n(n_), exp2(exp2_), reverse(reverse_) {
    t.assign(n, std::vector<int>(n, -1));
    rowused.assign(n, 0);
    colused.assign(n, 0);
    for (int j = 0; j < n; ++j) {
      t[0][j] = j;
      t[j][0] = j;
      rowused[j] = 1u << j;
      colused[j] = 1u << j;
    }
    rowused[0] = colused[0] = (n >= 31 ? 0u : (1u << n)) - 1;
  }

  void place(int r, int c, int v) {
    t[r][c] = v;
    rowused[r] |= 1u << v;
    colused[c] |= 1u << v;
  }
  void remove(int r, int c, int v) {
    t[r][c] = -1;
    rowused[r] &= ~(1u << v);
    colused[c] &= ~(1u << v);
  }

  void dfs(int r, int c) {
    if (r == n) {
      done.push_back(t);
      return;
    }
    int nr = c + 1 == n ? r + 1 : r;
    int nc = c + 1 == n ? 1 : c + 1;
    unsigned free = ~(rowused[r] | colused[c]) & ((1u << n) - 1);
    if (exp2 && r == c) free &= 1u;
    std::vector<int> vals;
    for (int v = 0; v < n; ++v)
      if (free >> v & 1) vals.push_back(v);
    if (reverse) std::reverse(vals.begin(), vals.end());
    for (int v : vals) {
      place(r, c, v);
      dfs(nr, nc);
      remove(r, c, v);
    }
  }

  // every completion of row r0 alone
  std::vector<std::vector<int>> row_fillings(int r0) {
    std::vector<std::vector<int>> rows;
    std::function<void(int)> go = [&](int c) {
      if (c == n) {
        rows.push_back(t[r0]);
        return;
      }
      unsigned free = ~(rowused[r0] | colused[c]) & ((1u << n) - 1);
      if (exp2 && r0 == c) free &= 1u;
      std::vector<int> vals;
      for (int v = 0; v < n; ++v)
        if (free >> v & 1) vals.push_back(v);
      if (reverse) std::reverse(vals.begin(), vals.end());
      for (int v : vals) {
        place(r0, c, v);
        go(c + 1);
        remove(r0, c, v);
      }
    };
    go(1);
    return rows;
  }

  void seed_row(int r0, const std::vector<int>& row) {
    for (int c = 1; c < n; ++c) place(r0, c, row[c]);
  }
};

std::vector<Table> run_row_major(const EnumSpec& spec) {
  int n = spec.order;
  if (n == 1) return {Table{{0}}};
  if (spec.threads <= 1 || n < 3) {
    RowMajor rm(n, spec.exponent2, spec.reverse);
    rm.dfs(1, 1);
    return std::move(rm.done);
  }
  RowMajor probe(n, spec.exponent2, spec.reverse);
  std::vector<std::vector<int>> firsts = probe.row_fillings(1);
  int workers = std::min<int>(spec.threads, static_cast<int>(firsts.size()));
  std::vector<std::vector<Table>> parts(workers);
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      RowMajor rm(n, spec.exponent2, spec.reverse);
      for (std::size_t i = w; i < firsts.size();
           i += static_cast<std::size_t>(workers)) {
        rm.seed_row(1, firsts[i]);
        rm.dfs(2, 1);
        for (int c = 1; c < n; ++c) rm.remove(1, c, firsts[i][c]);
      }
      parts[w] = std::move(rm.done);
    });
  for (auto& th : pool) th.join();
  std::vector<Table> all;
  for (auto& p : parts)
    for (auto& t : p) all.push_back(std::move(t));
  return all;
}

// ---------------------------------------------------------------------------
// column-propagation enumerator for the Bol constraint: whenever the
// translation columns at y and z are fixed, the column at (y*z)*y is their
// twisted product, so it is filled in rather than searched.

struct BolEnum {
  int n;
  bool exp2;
  bool reverse;
  std::vector<std::vector<int>> col;  // empty = not yet set
  std::vector<Table> done;

  BolEnum(int n_, bool exp2_, bool reverse_)
      : n(n_), exp2(exp2_), reverse(reverse_), col(n) {
    col[0].resize(n);
    for (int x = 0; x < n; ++x) col[0][x] = x;
  }

  bool latin_ok(const std::vector<int>& w, int c) const {
    for (int d = 0; d < n; ++d) {
      if (d == c || col[d].empty()) continue;
      for (int x = 0; x < n; ++x)
        if (col[d][x] == w[x]) return false;
    }
    return true;
  }

  bool propagate(int c0, std::vector<int>& trail) {
    std::vector<int> queue{c0};
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      int a = queue[qi];
      for (int y = 0; y < n; ++y) {
        if (col[y].empty()) continue;
        for (int z = 0; z < n; ++z) {
          if (col[z].empty() || (y != a && z != a)) continue;
          const auto& cy = col[y];
          const auto& cz = col[z];
          int tgt = cy[cz[y]];
          std::vector<int> w(n);
          for (int x = 0; x < n; ++x) w[x] = cy[cz[cy[x]]];
          if (!col[tgt].empty()) {
            if (col[tgt] != w) return false;
          } else {
            if (!latin_ok(w, tgt)) return false;
            col[tgt] = std::move(w);
            trail.push_back(tgt);
            queue.push_back(tgt);
          }
        }
      }
    }
    return true;
  }

  void candidates(int c, std::vector<std::vector<int>>& out) {
    std::vector<int> v(n, -1);
    std::vector<char> used(n, 0);
    v[0] = c;
    used[c] = 1;
    if (exp2 && c != 0) {
      v[c] = 0;
      used[0] = 1;
    }
    std::function<void(int)> go = [&](int x) {
      if (x == n) {
        out.push_back(v);
        return;
      }
      if (v[x] >= 0) {
        go(x + 1);
        return;
      }
      for (int val = 0; val < n; ++val) {
        if (used[val]) continue;
        // exponent-2 Bol columns are involutions (right inverse property)
        if (exp2 && val < x && v[val] != x) continue;
        bool clash = false;
        for (int d = 0; d < n && !clash; ++d)
          if (!col[d].empty() && col[d][x] == val) clash = true;
        if (clash) continue;
        v[x] = val;
        used[val] = 1;
        go(x + 1);
        v[x] = -1;
        used[val] = 0;
      }
    };
    go(0);
  }

  void dfs() {
    int c = -1;
    for (int i = 1; i < n; ++i)
      if (col[i].empty()) {
        c = i;
        break;
      }
    if (c < 0) {
      Table t(n, std::vector<int>(n));
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) t[x][y] = col[y][x];
      done.push_back(std::move(t));
      return;
    }
    std::vector<std::vector<int>> cands;
    candidates(c, cands);
    if (reverse) std::reverse(cands.begin(), cands.end());
    for (auto& v : cands) {
      std::vector<int> trail{c};
      col[c] = v;
      if (propagate(c, trail)) dfs();
      for (int d : trail) col[d].clear();
    }
  }
};

Table unflatten(const std::vector<int>& flat, int n) {
  Table t(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t[i][j] = flat[i * n + j];
  return t;
}

}  // namespace

EnumResult enumerate_loops(const EnumSpec& spec) {
  int n = spec.order;
  if (n < 1) throw InputError("NotLatin: order must be positive");
  int limit = spec.bol ? (spec.exponent2 ? 10 : 8) : 6;
  if (n > limit)
    throw SizeLimit("enumeration stops at order " + std::to_string(limit) +
                    " for these constraints");
  std::vector<Table> tables;
  if (spec.bol) {
    BolEnum be(n, spec.exponent2, spec.reverse);
    be.dfs();
    tables = std::move(be.done);
  } else {
    tables = run_row_major(spec);
  }
  std::sort(tables.begin(), tables.end());
  EnumResult res;
  std::vector<Loop> kept;
  for (const Table& t : tables) {
    Loop l(t);
    if (spec.bol && !is_bol(l)) continue;  // construction guarantees; verify
    if (spec.exponent2 && !is_exponent_two(l)) continue;
    if (spec.aip && !(has_two_sided_inverses(l) && is_aip(l))) continue;
    if (spec.ar && !is_ar_loop(l)) continue;
    kept.push_back(std::move(l));
  }
  res.raw_count = static_cast<long long>(kept.size());
  if (!spec.canonicalize) {
    res.loops = std::move(kept);
    return res;
  }
  if (n <= 8) {
    std::set<std::vector<int>> keys;
    for (const Loop& l : kept) keys.insert(canonical_key(l));
    for (const auto& key : keys) res.loops.push_back(Loop(unflatten(key, n)));
  } else {
    for (const Loop& l : kept) {
      bool fresh = true;
      for (const Loop& seen : res.loops)
        if (loops_isomorphic(seen, l)) {
          fresh = false;
          break;
        }
      if (fresh) res.loops.push_back(l);
    }
  }
  return res;
}

std::vector<Folder> search_hypothesis_a(const PermGroup& g,
                                        long long emission_cap) {
  if (g.order() > 10000)
    throw SizeLimit("hypothesis search stops at group order 10000");
  auto subs = all_subgroups(g, 4000);
  if (!subs) throw SizeLimit("subgroup census beyond 4000 subgroups");
  const auto& ge = g.elements();
  // subgroups up to conjugacy, each represented by its least conjugate
  std::vector<PermGroup> reps;
  {
    std::set<std::vector<Perm>> seen;
    for (const PermGroup& u : *subs) {
      std::vector<Perm> best = u.elements();
      for (const Perm& x : ge) {
        std::vector<Perm> conj;
        conj.reserve(best.size());
        for (const Perm& e : u.elements()) conj.push_back(conjugate(e, x));
        std::sort(conj.begin(), conj.end());
        if (conj < best) best = std::move(conj);
      }
      if (seen.insert(best).second)
        reps.push_back(PermGroup::from_elements(best));
    }
  }
  std::vector<std::vector<Perm>> invcls;
  for (const auto& c : conjugacy_classes(g))
    if (c.front().order() == 2) invcls.push_back(c);
  std::vector<Folder> out;
  for (const PermGroup& h : reps) {
    long long need = g.order() / h.order() - 1;
    std::vector<int> chosen;
    std::function<void(std::size_t, long long)> pick = [&](std::size_t i,
                                                           long long rem) {
      if (rem == 0) {
        std::vector<Perm> k{Perm::identity(g.degree())};
        for (int ci : chosen)
          k.insert(k.end(), invcls[ci].begin(), invcls[ci].end());
        std::sort(k.begin(), k.end());
        Folder f{g, h, k};
        if (!verify_folder(f, FolderLevel::folder).pass) return;
        FolderClass cls = classify_folder(f);
        Loop l = folder_to_loop(f);
        if (!cls.bruck || !is_exponent_two(l))
          throw VerdictError(
              "Falsified: an involution-class transversal is not an "
              "exponent-2 Bruck folder");
        out.push_back(std::move(f));
        if (static_cast<long long>(out.size()) > emission_cap)
          throw SizeLimit("emission cap reached");
        return;
      }
      if (i == invcls.size()) return;
      pick(i + 1, rem);
      long long sz = static_cast<long long>(invcls[i].size());
      if (sz <= rem) {
        chosen.push_back(static_cast<int>(i));
        pick(i + 1, rem - sz);
        chosen.pop_back();
      }
    };
    pick(0, need);
  }
  return out;
}

std::vector<Folder> search_folders(const PermGroup& g, const PermGroup& h,
                                   bool bx2p_only, long long emission_cap) {
  if (!is_subgroup_of(h, g))
    throw InputError("NotSubgroup: H must lie inside G");
  long long index = g.order() / h.order();
  if (index > 24) throw SizeLimit("transversal search stops at index 24");
  const auto& ge = g.elements();
  const auto& he = h.elements();
  auto idx_of = [&](const Perm& p) {
    return static_cast<int>(
        std::lower_bound(ge.begin(), ge.end(), p) - ge.begin());
  };
  std::vector<int> coset_of(ge.size(), -1);
  std::vector<std::vector<Perm>> cosets;
  for (std::size_t i = 0; i < ge.size(); ++i) {
    if (coset_of[i] >= 0) continue;
    int id = static_cast<int>(cosets.size());
    std::vector<Perm> members;
    for (const Perm& hh : he) {
      Perm m = hh * ge[i];
      coset_of[idx_of(m)] = id;
      members.push_back(m);
    }
    std::sort(members.begin(), members.end());
    cosets.push_back(std::move(members));
  }
  std::set<Perm> bset;
  for (const Perm& x : ge)
    for (const Perm& hh : he) {
      Perm c = conjugate(hh, x);
      if (!c.is_identity()) bset.insert(c);
    }
  std::vector<Perm> b(bset.begin(), bset.end());
  auto in_b = [&](const Perm& p) {
    return std::binary_search(b.begin(), b.end(), p);
  };
  int m = static_cast<int>(cosets.size());
  std::vector<Perm> k(m, Perm::identity(g.degree()));
  std::vector<Folder> out;
  std::function<void(int)> dfs = [&](int i) {
    if (i == m) {
      Folder f{g, h, k};
      if (!verify_folder(f, FolderLevel::folder).pass) return;
      if (bx2p_only && !classify_folder(f).bx2p) return;
      out.push_back(f);
      if (static_cast<long long>(out.size()) > emission_cap)
        throw SizeLimit("emission cap reached");
      return;
    }
    for (const Perm& x : cosets[i]) {
      bool ok = true;
      for (int j = 0; j < i && ok; ++j)
        if (in_b(x * k[j].inverse()) || in_b(k[j] * x.inverse())) ok = false;
      if (ok && bx2p_only) {
        if (!order_is_2_power_s(x)) ok = false;
        for (const Perm& hh : h.generators()) {
          if (!ok) break;
          Perm y = conjugate(x, hh);
          int cy = coset_of[idx_of(y)];
          if (cy < i && !(k[cy] == y)) ok = false;
        }
        for (int j = 0; j <= i && ok; ++j) {
          const Perm& other = j == i ? x : k[j];
          Perm u = x * other * x;
          int cu = coset_of[idx_of(u)];
          if (cu < i && !(k[cu] == u)) ok = false;
          if (cu == i && !(u == x)) ok = false;
          Perm v = other * x * other;
          int cv = coset_of[idx_of(v)];
          if (cv < i && !(k[cv] == v)) ok = false;
          if (cv == i && !(v == x)) ok = false;
        }
      }
      if (!ok) continue;
      k[i] = x;
      dfs(i + 1);
    }
    k[i] = Perm::identity(g.degree());
  };
  dfs(1);
  return out;
}

}  // namespace loopforge
