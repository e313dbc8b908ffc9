#include <algorithm>
#include <set>
#include <vector>

#include "doctest.h"
#include "loopforge/errors.hpp"
#include "loopforge/perm.hpp"
#include "loopforge/permgroup.hpp"
#include "oracles.hpp"

using namespace loopforge;

namespace {

Perm p(std::vector<int> v) { return Perm(std::move(v)); }

// Sym(4) on {0,1,2,3}
PermGroup sym4() { return PermGroup(4, {p({1, 0, 2, 3}), p({1, 2, 3, 0})}); }
PermGroup alt4() { return PermGroup(4, {p({1, 2, 0, 3}), p({0, 2, 3, 1})}); }

// quaternion group as a regular permutation representation of degree 8
PermGroup q8() {
  return PermGroup(8, {p({1, 2, 3, 0, 7, 4, 5, 6}), p({4, 5, 6, 7, 2, 3, 0, 1})});
}

// dihedral group of order 8 acting on the square's corners
PermGroup d8() { return PermGroup(4, {p({1, 2, 3, 0}), p({1, 0, 3, 2})}); }

}  // namespace

TEST_CASE("permutation basics") {
  Perm a = p({1, 0, 2});
  Perm b = p({0, 2, 1});
  CHECK((a * b)(0) == 2);  // left-to-right: apply a, then b
  CHECK((a * b)(2) == 1);
  CHECK(a.inverse() * a == Perm::identity(3));
  CHECK(a.order() == 2);
  CHECK(p({1, 2, 3, 0}).order() == 4);
  CHECK(Perm::identity(5).is_identity());
  CHECK(cycle_type(p({1, 0, 3, 2})) == std::vector<int>({2, 2}));
  CHECK(cycle_type(p({1, 0, 2})) == std::vector<int>({1, 2}));
  CHECK(to_string(p({1, 2, 0})) == "(0 1 2)");
  CHECK(to_string(Perm::identity(3)) == "()");
  CHECK_THROWS_AS(p({0, 0, 1}), InputError);
  CHECK_THROWS_AS(p({0, 1, 5}), InputError);
}

TEST_CASE("conjugate and commutator") {
  Perm x = p({1, 0, 2, 3});
  Perm g = p({1, 2, 3, 0});
  // g^-1 x g moves the transposition's support by g
  CHECK(conjugate(x, g) == p({0, 2, 1, 3}));
  CHECK(commutator(x, g) == x.inverse() * conjugate(x, g));
  auto s4 = sym4();
  for (const Perm& a : s4.elements())
    CHECK(cycle_type(conjugate(a, g)) == cycle_type(a));
}

TEST_CASE("closure agrees with the pairwise-product oracle") {
  auto check_group = [](const PermGroup& g, std::size_t order) {
    auto oracle = oracles::closure_by_pairs(g.generators(), g.degree());
    CHECK(g.order() == order);
    CHECK(oracle.size() == order);
    CHECK(std::equal(oracle.begin(), oracle.end(), g.elements().begin()));
  };
  check_group(sym4(), 24);
  check_group(alt4(), 12);
  check_group(q8(), 8);
  check_group(d8(), 8);
  check_group(PermGroup(3, {p({1, 0, 2}), p({1, 2, 0})}), 6);
}

TEST_CASE("closure edge cases") {
  PermGroup t = PermGroup::trivial(4);
  CHECK(t.order() == 1);
  CHECK(t.elements()[0] == Perm::identity(4));

  // elements are sorted and the identity is always first
  for (const PermGroup& g : {sym4(), q8(), d8()}) {
    const auto& e = g.elements();
    CHECK(std::is_sorted(e.begin(), e.end()));
    CHECK(e.front().is_identity());
  }

  // cap enforcement
  PermGroup s5(5, {p({1, 0, 2, 3, 4}), p({1, 2, 3, 4, 0})});
  CHECK_THROWS_AS(materialize(s5, 100), CapExceeded);
  CHECK(materialize(s5, 120).size() == 120);
}

TEST_CASE("from_elements and membership") {
  auto g = sym4();
  PermGroup rebuilt = PermGroup::from_elements(g.elements());
  CHECK(rebuilt.order() == 24);
  CHECK(rebuilt.contains(p({1, 0, 2, 3})));
  CHECK_FALSE(PermGroup::from_elements({Perm::identity(4), p({1, 0, 2, 3})})
                  .contains(p({1, 2, 3, 0})));
  // a generating set recovered from elements regenerates the group
  PermGroup regen(4, rebuilt.generators());
  CHECK(regen.order() == 24);
}

TEST_CASE("subgroup predicates") {
  auto g = sym4();
  auto a = alt4();
  CHECK(is_subgroup_of(a, g));
  CHECK(is_normal_in(a, g));
  auto h = subgroup_generated(g, {p({1, 0, 2, 3})});
  CHECK(h.order() == 2);
  CHECK(is_subgroup_of(h, g));
  CHECK_FALSE(is_normal_in(h, g));
  CHECK_THROWS_AS(subgroup_generated(a, {p({1, 0, 2, 3})}), InputError);
}

TEST_CASE("intersection and set product") {
  auto g = sym4();
  auto a = alt4();
  auto h = subgroup_generated(g, {p({1, 0, 2, 3}), p({0, 1, 3, 2})});  // C2xC2
  CHECK(h.order() == 4);
  auto i = intersection(h, a);
  CHECK(i.order() == 2);  // (01)(23) and identity
  CHECK(i.contains(p({1, 0, 3, 2})));
  auto prod = set_product(h.elements(), a.elements());
  CHECK(prod.size() == 24);  // HA = G since H is not inside A
}

TEST_CASE("sylow subgroups") {
  auto g = sym4();
  auto s2 = sylow_subgroup(g, 2);
  CHECK(s2.order() == 8);
  CHECK(is_2_group(s2));
  auto s3 = sylow_subgroup(g, 3);
  CHECK(s3.order() == 3);
  CHECK(fingerprint_isomorphic(s2, d8()) == IsoVerdict::yes);

  auto q = q8();
  CHECK(sylow_subgroup(q, 2).order() == 8);
  auto a = alt4();
  CHECK(sylow_subgroup(a, 2).order() == 4);
  CHECK(sylow_subgroup(a, 3).order() == 3);
}

TEST_CASE("o2 of Sym(4) is the Klein four-group") {
  auto g = sym4();
  auto o2 = o2_subgroup(g);
  // oracle: intersect all order-8 subgroups (the Sylow 2-subgroups)
  auto sylows = oracles::subgroups_of_order_2gen(g, 8);
  CHECK(sylows.size() == 3);
  std::set<Perm> meet = sylows[0];
  for (const auto& s : sylows) {
    std::set<Perm> next;
    for (const Perm& x : meet)
      if (s.count(x)) next.insert(x);
    meet = std::move(next);
  }
  CHECK(meet.size() == 4);
  CHECK(o2.order() == 4);
  for (const Perm& x : meet) CHECK(o2.contains(x));
  CHECK(o2.contains(p({1, 0, 3, 2})));
  CHECK(o2.contains(p({2, 3, 0, 1})));
  CHECK(o2.contains(p({3, 2, 1, 0})));
}

TEST_CASE("o2 contains every normal 2-subgroup") {
  for (const PermGroup& g : {sym4(), alt4(), d8(), q8()}) {
    auto o2 = o2_subgroup(g);
    CHECK(is_normal_in(o2, g));
    CHECK(is_2_group(o2));
    for (const auto& n : oracles::normal_subgroups_by_class_subsets(g)) {
      bool two_group = true;
      for (const Perm& x : n) {
        int o = x.order();
        while (o % 2 == 0) o /= 2;
        if (o != 1) two_group = false;
      }
      if (!two_group) continue;
      for (const Perm& x : n) CHECK(o2.contains(x));
    }
  }
  CHECK(o2_subgroup(PermGroup(3, {p({1, 0, 2}), p({1, 2, 0})})).is_trivial());
  CHECK(o2_subgroup(q8()).order() == 8);
}

TEST_CASE("largest normal odd subgroup and odd-generated subgroup") {
  // Sym(3) x C3 on 6 points: odd part is C3 x C3? no: largest normal odd
  // subgroup of Sym(3) is A3; build Sym(3) directly
  PermGroup s3(3, {p({1, 0, 2}), p({1, 2, 0})});
  auto odd = largest_normal_odd_subgroup(s3);
  CHECK(odd.order() == 3);
  CHECK(largest_normal_odd_subgroup(sym4()).is_trivial());
  // O^2: the subgroup generated by odd-order elements
  CHECK(odd_generated_subgroup(sym4()).order() == 12);
  CHECK(odd_generated_subgroup(q8()).is_trivial());
  CHECK(odd_generated_subgroup(s3).order() == 3);
}

TEST_CASE("fitting subgroup") {
  CHECK(fitting_subgroup(sym4()).order() == 4);
  CHECK(fitting_subgroup(d8()).order() == 8);
  PermGroup s3(3, {p({1, 0, 2}), p({1, 2, 0})});
  CHECK(fitting_subgroup(s3).order() == 3);
}

TEST_CASE("quotient of Sym(4) by the Klein subgroup") {
  auto g = sym4();
  auto v4 = o2_subgroup(g);
  auto q = quotient(g, v4);
  CHECK(q.group.order() == 6);
  CHECK(q.kernel.order() == 4);
  PermGroup s3(3, {p({1, 0, 2}), p({1, 2, 0})});
  CHECK(fingerprint_isomorphic(q.group, s3) == IsoVerdict::yes);

  // projection is a homomorphism, exhaustively
  const auto& e = g.elements();
  for (const Perm& a : e)
    for (const Perm& b : e)
      CHECK(q.project(a) * q.project(b) == q.project(a * b));
  // kernel of the projection is exactly N
  int ker = 0;
  for (const Perm& a : e)
    if (q.project(a).is_identity()) ++ker;
  CHECK(ker == 4);
  CHECK_THROWS_AS(quotient(g, subgroup_generated(g, {p({1, 0, 2, 3})})),
                  InputError);
}

TEST_CASE("quotient round trips through preimages") {
  auto g = d8();
  auto z = subgroup_generated(g, {p({2, 3, 0, 1})});  // center, order 2
  auto q = quotient(g, z);
  CHECK(q.group.order() == 4);
  // preimage of the trivial subgroup is the kernel, of everything is g
  CHECK(q.preimage(PermGroup::trivial(q.group.degree())).order() == 2);
  CHECK(q.preimage(q.group).order() == 8);
  // each quotient element has exactly |z| preimages
  for (const Perm& img : q.group.elements()) {
    int count = 0;
    for (const Perm& x : g.elements())
      if (q.project(x) == img) ++count;
    CHECK(count == 2);
  }
}

TEST_CASE("conjugacy classes match the brute-force oracle") {
  for (const PermGroup& g : {sym4(), alt4(), d8(), q8()}) {
    auto mine = conjugacy_classes(g);
    auto oracle = oracles::classes_by_brute_force(g);
    CHECK(mine.size() == oracle.size());
    std::size_t total = 0;
    for (const auto& c : mine) {
      total += c.size();
      std::set<Perm> cs(c.begin(), c.end());
      bool found = false;
      for (const auto& o : oracle)
        if (o == cs) found = true;
      CHECK(found);
    }
    CHECK(total == g.order());
  }
  auto sizes = [](const PermGroup& g) {
    std::vector<std::size_t> v;
    for (const auto& c : conjugacy_classes(g)) v.push_back(c.size());
    std::sort(v.begin(), v.end());
    return v;
  };
  CHECK(sizes(sym4()) == std::vector<std::size_t>({1, 3, 6, 6, 8}));
  CHECK(sizes(q8()) == std::vector<std::size_t>({1, 1, 2, 2, 2}));
}

TEST_CASE("centralizer and normalizer") {
  auto g = sym4();
  auto c = centralizer(g, p({1, 0, 3, 2}));
  CHECK(c.order() == 8);
  for (const Perm& x : c.elements())
    CHECK(x * p({1, 0, 3, 2}) == p({1, 0, 3, 2}) * x);

  auto h = subgroup_generated(g, {p({1, 2, 0, 3})});  // C3
  auto n = normalizer(g, h);
  CHECK(n.order() == 6);
  for (const Perm& x : n.elements())
    for (const Perm& y : h.elements()) CHECK(h.contains(conjugate(y, x)));

  auto zc = centralizer_of_set(d8(), {p({1, 2, 3, 0})});
  CHECK(zc.order() == 4);
}

TEST_CASE("normal closure") {
  auto g = sym4();
  CHECK(normal_closure(g, {p({1, 0, 2, 3})}).order() == 24);
  CHECK(normal_closure(g, {p({1, 2, 0, 3})}).order() == 12);
  CHECK(normal_closure(g, {p({1, 0, 3, 2})}).order() == 4);
}

TEST_CASE("derived series and solubility") {
  auto orders = [](const std::vector<PermGroup>& v) {
    std::vector<std::size_t> o;
    for (const auto& g : v) o.push_back(g.order());
    return o;
  };
  CHECK(orders(derived_series(sym4())) ==
        std::vector<std::size_t>({24, 12, 4, 1}));
  CHECK(is_soluble(sym4()));
  CHECK(is_soluble(q8()));
  PermGroup a5(5, {p({1, 2, 3, 4, 0}), p({1, 2, 0, 3, 4})});
  CHECK(a5.order() == 60);
  CHECK_FALSE(is_soluble(a5));
  CHECK(derived_subgroup(a5).order() == 60);
}

TEST_CASE("core of a subgroup") {
  auto g = sym4();
  auto s3 = subgroup_generated(g, {p({1, 0, 2, 3}), p({1, 2, 0, 3})});
  CHECK(s3.order() == 6);
  CHECK(core(g, s3).is_trivial());
  CHECK(core(g, alt4()).order() == 12);
  auto c4 = subgroup_generated(d8(), {p({1, 2, 3, 0})});
  CHECK(core(d8(), c4).order() == 4);

  // oracle: the core is the largest class-subset normal subgroup inside H
  auto normals = oracles::normal_subgroups_by_class_subsets(g);
  std::size_t best = 0;
  std::set<Perm> s3set(s3.elements().begin(), s3.elements().end());
  for (const auto& n : normals) {
    bool inside = std::all_of(n.begin(), n.end(),
                              [&](const Perm& x) { return s3set.count(x); });
    if (inside) best = std::max(best, n.size());
  }
  CHECK(best == 1);
}

TEST_CASE("all_subgroups enumeration") {
  auto subs = all_subgroups(d8(), 200);
  REQUIRE(subs.has_value());
  CHECK(subs->size() == 10);  // D8 has 10 subgroups
  auto subs4 = all_subgroups(sym4(), 200);
  REQUIRE(subs4.has_value());
  CHECK(subs4->size() == 30);  // Sym(4) has 30 subgroups
  // every reported subgroup really is one, and they're distinct
  std::set<std::vector<Perm>> seen;
  for (const auto& h : *subs4) {
    CHECK(is_subgroup_of(h, sym4()));
    CHECK(seen.insert(h.elements()).second);
  }
  CHECK_FALSE(all_subgroups(sym4(), 5).has_value());
}

TEST_CASE("overgroups of a subgroup") {
  auto g = sym4();
  auto v4 = o2_subgroup(g);
  auto over = overgroups(g, v4);
  // V4 <= H <= S4: V4, D8 (three of them? no: V4 normal, contained in all
  // three Sylows), A4, S4 -> count them
  std::size_t with_v4 = 0;
  auto subs = all_subgroups(g, 200);
  for (const auto& h : *subs)
    if (is_subgroup_of(v4, h)) ++with_v4;
  CHECK(over.size() == with_v4);
  for (const auto& h : over) {
    CHECK(is_subgroup_of(v4, h));
    CHECK(is_subgroup_of(h, g));
  }
}

TEST_CASE("normal subgroups above a given one") {
  auto g = sym4();
  auto ns = normal_subgroups_above(g, PermGroup::trivial(4));
  // oracle says Sym(4) has exactly 4 normal subgroups: 1, V4, A4, S4
  auto oracle = oracles::normal_subgroups_by_class_subsets(g);
  CHECK(oracle.size() == 4);
  CHECK(ns.size() == 4);
  std::set<std::size_t> sizes;
  for (const auto& n : ns) {
    CHECK(is_normal_in(n, g));
    sizes.insert(n.order());
  }
  CHECK(sizes == std::set<std::size_t>({1, 4, 12, 24}));

  auto above_v4 = normal_subgroups_above(g, o2_subgroup(g));
  CHECK(above_v4.size() == 3);
}

TEST_CASE("isomorphism search finds explicit maps") {
  // two presentations of C6
  PermGroup c6a(6, {p({1, 2, 3, 4, 5, 0})});
  PermGroup c6b(5, {p({1, 0, 3, 4, 2})});
  auto r = find_isomorphism(c6a, c6b);
  REQUIRE(r.verdict == IsoVerdict::yes);
  // the returned map is a bijective homomorphism
  const auto& phi = r.map;
  CHECK(phi.size() == 6);
  std::set<Perm> image;
  for (const auto& [k, v] : phi) image.insert(v);
  CHECK(image.size() == 6);
  for (const Perm& a : c6a.elements())
    for (const Perm& b : c6a.elements())
      CHECK(phi.at(a) * phi.at(b) == phi.at(a * b));

  CHECK(find_isomorphism(d8(), q8()).verdict == IsoVerdict::no);
  CHECK(find_isomorphism(sym4(), sym4()).verdict == IsoVerdict::yes);
  // different orders: immediate no
  CHECK(find_isomorphism(d8(), sym4()).verdict == IsoVerdict::no);
}

TEST_CASE("fingerprint comparison") {
  auto fa = fingerprint(d8());
  auto fb = fingerprint(q8());
  CHECK(fa.order == fb.order);
  CHECK(fa.order_profile != fb.order_profile);  // Q8 has one involution
  CHECK(fingerprint_isomorphic(d8(), d8()) == IsoVerdict::yes);
  CHECK(fingerprint_isomorphic(d8(), q8()) == IsoVerdict::no);
  CHECK(fingerprint_isomorphic(alt4(), sym4()) == IsoVerdict::no);
}

TEST_CASE("small generating set stays small") {
  auto gens = small_generating_set(sym4().elements());
  CHECK(gens.size() <= 3);
  CHECK(PermGroup(4, gens).order() == 24);
  auto g1 = small_generating_set(PermGroup::trivial(3).elements());
  CHECK(PermGroup(3, g1).order() == 1);
}

TEST_CASE("default cap is adjustable") {
  auto old = default_cap();
  set_default_cap(10);
  PermGroup s5(5, {p({1, 0, 2, 3, 4}), p({1, 2, 3, 4, 0})});
  CHECK_THROWS_AS(s5.elements(), CapExceeded);
  set_default_cap(old);
  CHECK(s5.order() == 120);
}
