#include "loopforge/twisted.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <string>

#include "loopforge/errors.hpp"
#include "loopforge/group_algo.hpp"
#include "loopforge/loop.hpp"

namespace loopforge {

bool is_twisted_subgroup(const std::vector<Perm>& k) {
  if (k.empty()) return false;
  std::vector<Perm> sorted = k;
  std::sort(sorted.begin(), sorted.end());
  if (!sorted[0].is_identity()) return false;
  for (const Perm& x : k)
    if (!set_contains(sorted, x.inverse())) return false;
  for (const Perm& x : k)
    for (const Perm& y : k)
      if (!set_contains(sorted, x * y * x)) return false;
  return true;
}

namespace {

int index_in(const std::vector<Perm>& sorted, const Perm& p) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), p);
  if (it == sorted.end() || *it != p)
    throw InputError("element falls outside the group");
  return static_cast<int>(it - sorted.begin());
}

}  // namespace

XiPsi xi_psi(const PermGroup& g, const std::vector<Perm>& k) {
  const auto& ge = g.elements();
  std::size_t n = ge.size();
  if (n > 5000) throw CapExceeded("xi_psi: group larger than 5000");
  // left multiplication tables for each k and k^-1
  std::vector<std::vector<int>> lk(k.size()), lki(k.size());
  for (std::size_t i = 0; i < k.size(); ++i) {
    lk[i].resize(n);
    lki[i].resize(n);
    Perm ki = k[i].inverse();
    for (std::size_t j = 0; j < n; ++j) {
      lk[i][j] = index_in(ge, k[i] * ge[j]);
      lki[i][j] = index_in(ge, ki * ge[j]);
    }
  }
  std::vector<bool> seen(n * n, false);
  std::deque<std::pair<int, int>> todo;
  int id = index_in(ge, Perm::identity(g.degree()));
  seen[static_cast<std::size_t>(id) * n + id] = true;
  todo.emplace_back(id, id);
  while (!todo.empty()) {
    auto [x, y] = todo.front();
    todo.pop_front();
    for (std::size_t i = 0; i < k.size(); ++i) {
      int nx = lk[i][x], ny = lki[i][y];
      std::size_t key = static_cast<std::size_t>(nx) * n + ny;
      if (!seen[key]) {
        seen[key] = true;
        todo.emplace_back(nx, ny);
      }
    }
  }
  std::vector<Perm> xi;
  for (std::size_t x = 0; x < n; ++x)
    if (seen[x * n + id]) xi.push_back(ge[x]);

  std::vector<Perm> sorted = k;
  std::sort(sorted.begin(), sorted.end());
  std::vector<Perm> psi;
  for (const Perm& p : ge) {
    bool stab = true;
    for (const Perm& ki : k)
      if (!set_contains(sorted, p * ki)) {
        stab = false;
        break;
      }
    if (stab) psi.push_back(p);
  }

  XiPsi r{PermGroup::from_elements(xi), PermGroup::from_elements(psi),
          false, false, false, false};
  r.xi_inside_psi = std::includes(psi.begin(), psi.end(), xi.begin(), xi.end());
  r.psi_inside_k =
      std::includes(sorted.begin(), sorted.end(), psi.begin(), psi.end());
  PermGroup gk(g.degree(), k);
  r.xi_normal = is_normal_in(r.xi, gk);
  r.psi_normal = is_normal_in(r.psi, gk);
  return r;
}

std::optional<std::vector<int>> tau_automorphism(const PermGroup& g,
                                                 const std::vector<Perm>& k) {
  const auto& ge = g.elements();
  if (PermGroup(g.degree(), k).order() != g.order())
    throw InputError("NotGenerated: K does not generate the group");
  std::vector<Perm> kinv(k.size());
  for (std::size_t i = 0; i < k.size(); ++i) kinv[i] = k[i].inverse();
  std::vector<int> tau(ge.size(), -1);
  tau[0] = 0;  // the identity is the least element
  std::deque<int> todo{0};
  while (!todo.empty()) {
    int cur = todo.front();
    todo.pop_front();
    for (std::size_t i = 0; i < k.size(); ++i) {
      int nxt = index_in(ge, ge[cur] * k[i]);
      int img = index_in(ge, ge[tau[cur]] * kinv[i]);
      if (tau[nxt] == -1) {
        tau[nxt] = img;
        todo.push_back(nxt);
      } else if (tau[nxt] != img) {
        return std::nullopt;
      }
    }
  }
  return tau;
}

Perm apply_tau(const PermGroup& g, const std::vector<int>& tau,
               const Perm& x) {
  const auto& ge = g.elements();
  return ge[tau[index_in(ge, x)]];
}

std::vector<int> extend_tau_bruck(const Folder& f) {
  auto rep = verify_folder(f, FolderLevel::bruck);
  if (!rep.pass) throw InputError("NotBruckFolder: " + rep.reason);
  const auto& ge = f.g.elements();
  if (ge.size() > 4000)
    throw CapExceeded("extend_tau_bruck: group larger than 4000");
  std::vector<int> tau(ge.size(), -1);
  for (const Perm& h : f.h.elements())
    for (const Perm& k : f.k) {
      int i = index_in(ge, h * k);
      if (tau[i] != -1)
        throw VerdictError("extend_tau_bruck: HK factorization not unique");
      tau[i] = index_in(ge, h * k.inverse());
    }
  for (int t : tau)
    if (t == -1)
      throw VerdictError("extend_tau_bruck: HK does not cover G");
  // automorphism on generators extends to all of G by word induction
  for (std::size_t a = 0; a < ge.size(); ++a)
    for (const Perm& s : f.g.generators())
      if (tau[index_in(ge, ge[a] * s)] !=
          index_in(ge, ge[tau[a]] * ge[tau[index_in(ge, s)]]))
        throw VerdictError("extend_tau_bruck: extension is not an automorphism");
  for (std::size_t a = 0; a < ge.size(); ++a)
    if (tau[tau[a]] != static_cast<int>(a))
      throw VerdictError("extend_tau_bruck: extension is not an involution");
  for (const Perm& h : f.h.elements())
    if (ge[tau[index_in(ge, h)]] != h)
      throw VerdictError("extend_tau_bruck: extension moves H");
  // agreement with the intrinsic tau on <K>
  PermGroup gk(f.g.degree(), f.k);
  auto inner = tau_automorphism(gk, f.k);
  if (!inner)
    throw VerdictError("extend_tau_bruck: no tau on <K> for a Bruck folder");
  for (const Perm& x : gk.elements())
    if (apply_tau(gk, *inner, x) != ge[tau[index_in(ge, x)]])
      throw VerdictError("extend_tau_bruck: extension disagrees on <K>");
  return tau;
}

GPlusElem GPlus::id() const { return {Perm::identity(base.degree()), 0}; }

GPlusElem GPlus::mul(const GPlusElem& a, const GPlusElem& b) const {
  Perm bg = a.eps ? apply_tau(base, tau, b.g) : b.g;
  return {a.g * bg, a.eps ^ b.eps};
}

GPlusElem GPlus::inv(const GPlusElem& a) const {
  Perm gi = a.g.inverse();
  if (a.eps) gi = apply_tau(base, tau, gi);
  return {std::move(gi), a.eps};
}

GPlus build_gplus(const PermGroup& g, std::vector<int> tau) {
  const auto& ge = g.elements();
  if (tau.size() != ge.size())
    throw InputError("build_gplus: tau has the wrong size");
  std::vector<char> hit(ge.size(), 0);
  for (int t : tau) {
    if (t < 0 || static_cast<std::size_t>(t) >= ge.size() || hit[t])
      throw InputError("build_gplus: tau is not a permutation");
    hit[t] = 1;
  }
  for (std::size_t a = 0; a < ge.size(); ++a) {
    if (tau[tau[a]] != static_cast<int>(a))
      throw InputError("build_gplus: tau is not an involution");
    for (const Perm& s : g.generators())
      if (tau[index_in(ge, ge[a] * s)] !=
          index_in(ge, ge[tau[a]] * ge[tau[index_in(ge, s)]]))
        throw InputError("build_gplus: tau is not an automorphism");
  }
  GPlus e{g, std::move(tau), {}};
  e.elements.reserve(2 * ge.size());
  for (const Perm& p : ge) {
    e.elements.push_back({p, 0});
    e.elements.push_back({p, 1});
  }
  std::sort(e.elements.begin(), e.elements.end());
  return e;
}

namespace {

struct GPlusOps {
  const GPlus* e;
  GPlusElem id() const { return e->id(); }
  GPlusElem mul(const GPlusElem& a, const GPlusElem& b) const {
    return e->mul(a, b);
  }
  GPlusElem inv(const GPlusElem& a) const { return e->inv(a); }
};

}  // namespace

bool lambda_invariant(const GPlus& e, const std::vector<Perm>& k) {
  std::vector<GPlusElem> lambda;
  lambda.reserve(k.size());
  for (const Perm& p : k) lambda.push_back({p, 1});
  std::sort(lambda.begin(), lambda.end());
  std::vector<GPlusElem> gens;
  for (const Perm& s : e.base.generators()) gens.push_back({s, 0});
  gens.push_back({Perm::identity(e.base.degree()), 1});
  for (const GPlusElem& s : gens) {
    GPlusElem si = e.inv(s);
    for (const GPlusElem& x : lambda)
      if (!set_contains(lambda, e.mul(e.mul(si, x), s))) return false;
  }
  return true;
}

std::vector<GPlusElem> o2_gplus(const GPlus& e) {
  return o2_elems(e.elements, GPlusOps{&e});
}

XiReport xi_subfolder_check(const Folder& f) {
  XiReport r;
  PermGroup gk(f.g.degree(), f.k);
  auto xp = xi_psi(gk, f.k);
  r.xi = xp.xi;
  std::vector<Perm> sorted = f.k;
  std::sort(sorted.begin(), sorted.end());
  r.xi_inside_k = true;
  for (const Perm& x : r.xi.elements())
    if (!set_contains(sorted, x)) r.xi_inside_k = false;
  for (std::size_t i = 0; i < f.k.size(); ++i)
    if (r.xi.contains(f.k[i])) r.kappa.push_back(static_cast<int>(i));
  if (auto sf = detect_subfolder(f, r.xi))
    r.subfolder = sf->h.is_trivial() &&
                  static_cast<long long>(sf->k.size()) == r.xi.order();
  Loop l = folder_to_loop(f);
  r.normal_subloop = is_normal_subloop(l, r.kappa);
  if (r.normal_subloop && r.xi_inside_k) {
    Loop sub = subloop_table(l, r.kappa);
    if (is_associative(sub)) {
      std::vector<Perm> rhos;
      for (int y = 0; y < sub.size(); ++y) rhos.push_back(sub.rho(y));
      PermGroup ts(sub.size(), std::move(rhos));
      r.group_matches = fingerprint_isomorphic(ts, r.xi) == IsoVerdict::yes;
    }
  }
  return r;
}

}  // namespace loopforge
