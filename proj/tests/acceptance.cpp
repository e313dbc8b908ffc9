// Acceptance gate: prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.  Time budgets are enforced where stated.

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "loopforge/bx2p.hpp"
#include "loopforge/errors.hpp"
#include "loopforge/folder.hpp"
#include "loopforge/loop.hpp"
#include "loopforge/permgroup.hpp"
#include "loopforge/search.hpp"
#include "loopforge/smallgroups.hpp"
#include "loopforge/twisted.hpp"

using namespace loopforge;

namespace {

Perm p(std::vector<int> v) { return Perm(std::move(v)); }

// shared corpus: all groups of order <= 12 as loops, every enumerated
// non-group loop of order <= 6, and the non-group Bol loops of orders 7, 8
std::vector<Loop> corpus;
std::vector<Folder> envelopes;
std::vector<Folder> hits_s4;  // hypothesis-a output on Sym(4), reused later
std::string detail;

std::string check_round_trip() {
  for (const NamedLoop& nl : groups_up_to_12()) corpus.push_back(nl.loop);
  for (int n = 4; n <= 6; ++n) {
    EnumSpec s;
    s.order = n;
    s.canonicalize = true;
    for (const Loop& l : enumerate_loops(s).loops)
      if (!is_associative(l)) corpus.push_back(l);
  }
  for (int n = 7; n <= 8; ++n) {
    EnumSpec s;
    s.order = n;
    s.bol = true;
    s.canonicalize = true;
    for (const Loop& l : enumerate_loops(s).loops)
      if (!is_associative(l)) corpus.push_back(l);
  }
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    Folder f = baer_envelope(corpus[i]);
    envelopes.push_back(f);
    Loop back = folder_to_loop(f);
    if (!(back == corpus[i]) && !loops_isomorphic(back, corpus[i]))
      return "round trip failed at corpus index " + std::to_string(i);
  }
  detail = std::to_string(corpus.size()) + " loops";
  return "";
}

std::string check_bol_twisted() {
  if (corpus.empty()) return "corpus unavailable";
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    bool loop_side = is_bol(corpus[i]);
    bool group_side = is_twisted_subgroup(envelopes[i].k);
    if (loop_side != group_side)
      return "disagreement at corpus index " + std::to_string(i);
  }
  detail = std::to_string(corpus.size()) + " loops";
  return "";
}

std::string check_bruck_envelope() {
  if (corpus.empty()) return "corpus unavailable";
  int count = 0;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    if (!is_bruck(corpus[i])) continue;
    const Folder& f = envelopes[i];
    std::string where = " for Bruck corpus loop " + std::to_string(i);
    XiPsi xp = xi_psi(f.g, f.k);
    if (!xp.xi.is_trivial()) return "radical is nontrivial" + where;
    std::vector<int> tau = extend_tau_bruck(f);
    for (std::size_t a = 0; a < tau.size(); ++a)
      if (tau[static_cast<std::size_t>(tau[a])] != static_cast<int>(a))
        return "tau is not involutory" + where;
    for (const Perm& k : f.k)
      if (!(apply_tau(f.g, tau, k) == k.inverse()))
        return "tau fails to invert K" + where;
    const auto& helems = f.h.elements();
    for (const Perm& h : helems)
      if (!(apply_tau(f.g, tau, h) == h))
        return "tau moves the stabilizer" + where;
    GPlus gp = build_gplus(f.g, tau);
    if (!lambda_invariant(gp, f.k))
      return "Lambda is not invariant" + where;
    if (!is_ar_loop(corpus[i]))
      return "loop is not A_r" + where;
    ++count;
  }
  if (count < 10) return "too few Bruck loops exercised";
  detail = std::to_string(count) + " Bruck loops";
  return "";
}

std::string check_tau_biconditional() {
  if (corpus.empty()) return "corpus unavailable";
  int count = 0;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    if (!classify_folder(envelopes[i]).bruck) continue;
    LemmaReport r = check_bx2p_tau(envelopes[i]);
    if (!r.applicable) return "check inapplicable at index " + std::to_string(i);
    if (!r.pass) return "sides disagree at index " + std::to_string(i) + ": " + r.witness;
    ++count;
  }
  if (count < 10) return "too few Bruck folders exercised";
  detail = std::to_string(count) + " Bruck folders";
  return "";
}

std::string check_solubility() {
  std::vector<PermGroup> curated;
  for (const NamedLoop& nl : groups_up_to_12())
    curated.push_back(baer_envelope(nl.loop).g);
  Loop c2 = cyclic_loop(2);
  Loop c4 = cyclic_loop(4);
  std::vector<Loop> sixteens{
      dihedral_loop(8),                                   // D16
      dicyclic_loop(4),                                   // Q16
      semidirect_c2(8, 3, 0),                             // semidihedral
      semidirect_c2(8, 5, 0),                             // modular
      direct_product(direct_product(c2, c2), direct_product(c2, c2)),
      direct_product(c4, c4),
      direct_product(dihedral_loop(4), c2),
      direct_product(dicyclic_loop(2), c2)};
  for (const Loop& l : sixteens) curated.push_back(baer_envelope(l).g);
  curated.push_back(PermGroup(4, {p({1, 0, 2, 3}), p({1, 2, 3, 0})}));  // Sym(4)
  // the non-group exponent-2 Bol loop of order 8, when its envelope fits
  for (std::size_t i = 0; i < corpus.size(); ++i)
    if (corpus[i].size() == 8 && !is_associative(corpus[i]) &&
        is_exponent_two(corpus[i]) && is_bol(corpus[i]) &&
        envelopes[i].g.order() <= 64)
      curated.push_back(envelopes[i].g);
  long long checked = 0;
  for (const PermGroup& g : curated) {
    if (!is_soluble(g)) continue;
    PermGroup o2 = o2_subgroup(g);
    for (const Folder& f : search_hypothesis_a(g)) {
      PermGroup kgen = subgroup_generated(f.g, f.k);
      if (!is_subgroup_of(kgen, o2))
        return "transversal closure escapes the 2-core in a group of order " +
               std::to_string(g.order());
      ++checked;
      if (g.order() == 24) hits_s4.push_back(f);
    }
  }
  // transversal search feeds the same check through a different funnel
  {
    PermGroup s4(4, {p({1, 0, 2, 3}), p({1, 2, 3, 0})});
    PermGroup s3 = subgroup_generated(s4, {p({1, 0, 2, 3}), p({1, 2, 0, 3})});
    PermGroup d8(4, {p({1, 2, 3, 0}), p({1, 0, 3, 2})});
    PermGroup refl = subgroup_generated(d8, {p({1, 0, 3, 2})});
    std::vector<std::pair<PermGroup, PermGroup>> pairs{{s4, s3}, {d8, refl}};
    for (const auto& [g, h] : pairs) {
      PermGroup o2 = o2_subgroup(g);
      for (const Folder& f : search_folders(g, h, true)) {
        PermGroup kgen = subgroup_generated(f.g, f.k);
        if (!is_subgroup_of(kgen, o2))
          return "transversal closure escapes the 2-core in a group of order " +
                 std::to_string(g.order());
        ++checked;
      }
    }
  }
  if (checked < 100) return "too few folders produced";
  detail = std::to_string(checked) + " folders";
  return "";
}

std::string check_heiss_identity() {
  if (corpus.empty()) return "corpus unavailable";
  if (amt_size(5, 8) != 48) return "arithmetic helper disagrees at q=5, n0=8";
  std::vector<Folder> targets;
  for (std::size_t i = 0; i < corpus.size(); ++i)
    if (classify_folder(envelopes[i]).bx2p) targets.push_back(envelopes[i]);
  for (const Folder& f : hits_s4) targets.push_back(f);
  int cases = 0;
  for (const Folder& f : targets) {
    auto subs = all_subgroups(f.g, 4000);
    if (!subs) return "subgroup census overflow";
    PermGroup o2 = o2_subgroup(f.g);
    for (const PermGroup& n : *subs) {
      if (!is_subgroup_of(o2, n) || !is_normal_in(n, f.g)) continue;
      HeissData d = heiss_decomposition(f, n);
      if (!d.equals_k)
        return "decomposition misses |K| in a group of order " +
               std::to_string(f.g.order());
      ++cases;
    }
  }
  if (cases < 5) return "too few folder and subgroup pairs";
  detail = std::to_string(cases) + " folder and subgroup pairs";
  return "";
}

std::string check_lemma_suite() {
  if (corpus.empty()) return "corpus unavailable";
  std::vector<Folder> targets = envelopes;
  for (const Folder& f : hits_s4) targets.push_back(f);
  long long applicable = 0;
  for (const Folder& f : targets) {
    for (const LemmaReport& r : lemma_suite(f, Suite::all)) {
      if (!r.applicable) continue;
      ++applicable;
      if (!r.pass)
        return r.lemma + " failed on a folder with |G| = " +
               std::to_string(f.g.order()) + ": " + r.witness;
    }
  }
  detail = std::to_string(applicable) + " applicable checks";
  return "";
}

std::string check_d8_example() {
  Perm a({1, 0, 3, 2});
  Perm b({0, 3, 2, 1});
  PermGroup g(4, {a, b});
  Folder f{g, subgroup_generated(g, {a * b}), {Perm::identity(4), a}};
  if (!verify_folder(f, FolderLevel::folder).pass)
    return "triple is not a loop folder";
  Loop l = folder_to_loop(f);
  if (l.size() != 2 || !is_associative(l)) return "loop is not the 2-group";
  FolderClass c = classify_folder(f);
  if (c.ar) return "folder unexpectedly classifies as A_r";
  if (!is_ar_loop(l)) return "loop fails the A_r identity";
  return "";
}

std::string check_pgl2() {
  PGL2 five = make_pgl2(5);
  if (five.pgl.order() != 120) return "wrong order over the 5 element field";
  if (five.pgl.order() / five.borel.order() != 6) return "wrong point stabilizer index over the 5 element field";
  PGL2 nine = make_pgl2(9);
  if (nine.pgl.order() != 720) return "wrong order over the 9 element field";
  if (nine.pgl.order() / nine.borel.order() != 10) return "wrong point stabilizer index over the 9 element field";
  int outside = 0;
  const auto& elems = five.pgl.elements();
  for (const Perm& x : elems)
    if (x.order() == 2 && !five.psl.contains(x)) ++outside;
  if (outside != 10)
    return "involution count outside the derived half is " + std::to_string(outside);
  return "";
}

std::string check_q_sieve() {
  std::set<long long> survivors;
  for (const QClass& r : sieve_q(1 << 20))
    if (r.prime_power_hypothesis) survivors.insert(r.q);
  if (survivors != std::set<long long>{5, 9, 17, 257, 65537})
    return "survivor set is wrong";
  detail = "5 survivors below 2^20";
  return "";
}

std::string check_determinism() {
  for (int n = 1; n <= 6; ++n) {
    EnumSpec serial;
    serial.order = n;
    EnumSpec threaded = serial;
    threaded.threads = 4;
    EnumSpec reversed = serial;
    reversed.reverse = true;
    EnumResult a = enumerate_loops(serial);
    EnumResult b = enumerate_loops(threaded);
    EnumResult c = enumerate_loops(reversed);
    auto tables = [](const EnumResult& r) {
      std::vector<std::vector<std::vector<int>>> t;
      for (const Loop& l : r.loops) t.push_back(l.table());
      return t;
    };
    if (a.raw_count != b.raw_count || a.raw_count != c.raw_count ||
        tables(a) != tables(b) || tables(a) != tables(c))
      return "runs disagree at order " + std::to_string(n);
  }
  EnumSpec b5;
  b5.order = 5;
  b5.bol = true;
  b5.canonicalize = true;
  EnumResult r5 = enumerate_loops(b5);
  if (r5.loops.size() != 1 || !loops_isomorphic(r5.loops[0], cyclic_loop(5)))
    return "order 5 Bol classes are not exactly the cyclic group";
  return "";
}

}  // namespace

int main() {
  int failed = 0;
  auto run = [&failed](const char* name, double limit,
                       const std::function<std::string()>& body) {
    auto t0 = std::chrono::steady_clock::now();
    std::string note;
    detail.clear();
    try {
      note = body();
    } catch (const std::exception& e) {
      note = std::string("exception: ") + e.what();
    }
    double secs =
        std::chrono::duration_cast<std::chrono::duration<double>>(
            std::chrono::steady_clock::now() - t0)
            .count();
    bool pass = note.empty();
    if (pass && limit > 0 && secs > limit) {
      pass = false;
      note = "over the time budget";
    }
    std::string info = pass ? detail : note;
    std::printf("%-18s %s  %6.2fs%s%s\n", name, pass ? "PASS" : "FAIL", secs,
                info.empty() ? "" : "  ", info.c_str());
    std::fflush(stdout);
    if (!pass) ++failed;
  };

  run("round-trip", 60, check_round_trip);
  run("bol-twisted", 0, check_bol_twisted);
  run("bruck-envelope", 0, check_bruck_envelope);
  run("tau-biconditional", 0, check_tau_biconditional);
  run("solubility", 300, check_solubility);
  run("heiss-identity", 0, check_heiss_identity);
  run("lemma-suite", 0, check_lemma_suite);
  run("d8-example", 0, check_d8_example);
  run("pgl2-constructor", 5, check_pgl2);
  run("q-sieve", 10, check_q_sieve);
  run("determinism", 0, check_determinism);

  std::printf("%d of 11 criteria hold\n", 11 - failed);
  return failed == 0 ? 0 : 1;
}
