#include "loopforge/bx2p.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "loopforge/errors.hpp"
#include "loopforge/twisted.hpp"

namespace loopforge {
namespace {

bool set_has(const std::vector<Perm>& sorted, const Perm& p) {
  return std::binary_search(sorted.begin(), sorted.end(), p);
}

bool is_pow2(long long v) { return v > 0 && (v & (v - 1)) == 0; }

bool is_prime_ll(long long v) {
  if (v < 2) return false;
  for (long long d = 2; d * d <= v; ++d)
    if (v % d == 0) return false;
  return true;
}

bool is_prime_power_ll(long long v) {
  if (v < 2) return false;
  long long p = v;
  for (long long d = 2; d * d <= v; ++d)
    if (v % d == 0) {
      p = d;
      break;
    }
  while (v % p == 0) v /= p;
  return v == 1;
}

std::vector<long long> odd_prime_divisors(long long v) {
  std::vector<long long> out;
  while (v % 2 == 0) v /= 2;
  for (long long d = 3; d * d <= v; d += 2)
    if (v % d == 0) {
      out.push_back(d);
      while (v % d == 0) v /= d;
    }
  if (v > 1) out.push_back(v);
  return out;
}

bool order_is_2_power(const Perm& p) {
  int o = p.order();
  while (o % 2 == 0) o /= 2;
  return o == 1;
}

// First H-generator / K-element pair whose conjugate leaves K.
std::optional<std::pair<Perm, Perm>> ar_violation(const Folder& f) {
  std::vector<Perm> sorted = f.k;
  std::sort(sorted.begin(), sorted.end());
  for (const Perm& h : f.h.generators())
    for (const Perm& k : f.k)
      if (!set_has(sorted, conjugate(k, h))) return std::make_pair(h, k);
  return std::nullopt;
}

}  // namespace

FolderClass classify_folder(const Folder& f) {
  FolderClass c;
  FolderReport base = verify_folder(f, FolderLevel::folder);
  c.folder = base.pass;
  if (!c.folder) {
    c.witness = base.reason;
    return c;
  }
  FolderReport bol = verify_folder(f, FolderLevel::bol);
  c.bol = bol.pass;
  auto bad = ar_violation(f);
  c.ar = !bad.has_value();
  if (!c.bol) {
    c.witness = bol.reason;
  } else if (!c.ar) {
    c.witness = "ar: conjugating " + to_string(bad->second) + " by " +
                to_string(bad->first) + " leaves K";
  }
  if (c.bol && c.ar) {
    FolderReport bruck = verify_folder(f, FolderLevel::bruck);
    c.bruck = bruck.pass;
    if (!c.bruck) c.witness = bruck.reason;
  }
  if (c.bruck) {
    FolderReport top = verify_folder(f, FolderLevel::bx2p);
    c.bx2p = top.pass;
    if (!c.bx2p) c.witness = top.reason;
  }
  return c;
}

LemmaReport check_bx2p_tau(const Folder& f) {
  LemmaReport r;
  r.lemma = "BX2P_tau";
  FolderReport bruck = verify_folder(f, FolderLevel::bruck);
  if (!bruck.pass) {
    r.witness = "needs a bruck folder: " + bruck.reason;
    return r;
  }
  r.applicable = true;
  GPlus ext = build_gplus(f.g, extend_tau_bruck(f));
  std::vector<GPlusElem> core2 = o2_gplus(ext);
  GPlusElem tau{Perm::identity(f.g.degree()), 1};
  bool structural = std::binary_search(core2.begin(), core2.end(), tau);
  bool orders = true;
  Perm bad = Perm::identity(f.g.degree());
  for (const Perm& k : f.k)
    if (!order_is_2_power(k)) {
      orders = false;
      bad = k;
      break;
    }
  r.pass = structural == orders;
  std::ostringstream w;
  w << "tau in the extended 2-core: " << (structural ? "yes" : "no")
    << "; all K orders 2-powers: " << (orders ? "yes" : "no");
  if (!orders)
    w << " (" << to_string(bad) << " has order " << bad.order() << ")";
  r.witness = w.str();
  return r;
}

LemmaReport kbar_check(const Folder& f) {
  LemmaReport r;
  r.lemma = "overlineK";
  FolderClass cls = classify_folder(f);
  if (!cls.bx2p) {
    r.witness = "needs a bx2p folder: " + cls.witness;
    return r;
  }
  r.applicable = true;
  PermGroup o2 = o2_subgroup(f.g);
  const std::vector<Perm>& o2e = o2.elements();
  for (const Perm& k : f.k)
    if (!set_has(o2e, k * k)) {
      r.witness = "square of " + to_string(k) + " escapes the 2-core";
      return r;
    }
  Quotient q = quotient(f.g, o2);
  Perm one = Perm::identity(q.group.degree());
  std::set<Perm> kbar;
  for (const Perm& k : f.k) kbar.insert(q.project(k));
  for (const Perm& x : kbar) {
    if (x == one) continue;
    if (!(x * x == one)) {
      r.witness = "image " + to_string(x) + " is not an involution";
      return r;
    }
  }
  for (const auto& c : conjugacy_classes(q.group)) {
    bool meets = false, misses = false;
    for (const Perm& x : c) {
      if (x == one) continue;
      (kbar.count(x) ? meets : misses) = true;
    }
    if (meets && misses) {
      r.witness = "the class of " + to_string(c.front()) +
                  " meets the K image without lying inside it";
      return r;
    }
  }
  PermGroup kgen = subgroup_generated(f.g, f.k);
  if (!is_normal_in(kgen, f.g)) {
    r.witness = "the subgroup generated by K is not normal";
    return r;
  }
  r.pass = true;
  std::ostringstream w;
  w << "nontrivial image size " << kbar.size() - kbar.count(one)
    << "; generated subgroup of order " << kgen.order() << " is normal";
  r.witness = w.str();
  return r;
}

HeissData heiss_decomposition(const Folder& f, const PermGroup& n) {
  FolderReport base = verify_folder(f, FolderLevel::folder);
  if (!base.pass) throw InputError("NotFolder: " + base.reason);
  if (!is_normal_in(n, f.g))
    throw InputError("BadN: the chosen subgroup is not normal");
  if (!is_subgroup_of(o2_subgroup(f.g), n))
    throw InputError("BadN: the 2-core of G is not inside the chosen subgroup");
  Quotient q = quotient(f.g, n);
  Perm one = Perm::identity(q.group.degree());
  HeissData d;
  std::map<Perm, long long> fiber;
  for (const Perm& k : f.k) {
    Perm image = q.project(k);
    if (image == one)
      ++d.n0;
    else
      ++fiber[image];
  }
  d.fibers_constant = true;
  if (!fiber.empty()) {
    for (const auto& c : conjugacy_classes(q.group)) {
      bool meets = false;
      for (const Perm& x : c)
        if (fiber.count(x)) {
          meets = true;
          break;
        }
      if (!meets) continue;
      HeissOrbit orb;
      orb.rep = c.front();
      orb.m = static_cast<long long>(c.size());
      auto it = fiber.find(orb.rep);
      orb.n = it == fiber.end() ? 0 : it->second;
      for (const Perm& x : c) {
        long long nx = fiber.count(x) ? fiber.at(x) : 0;
        if (nx != orb.n) d.fibers_constant = false;
      }
      d.orbits.push_back(orb);
    }
  }
  d.total = d.n0;
  for (const auto& o : d.orbits) d.total += o.n * o.m;
  d.equals_k = d.total == static_cast<long long>(f.k.size());
  return d;
}

long long amt_size(long long q, long long n0) { return (q + 1) * n0; }

QClass classify_q(long long q) {
  QClass r;
  r.q = q;
  bool pow2 = q > 1 && is_pow2(q - 1);
  r.literal_hypothesis = pow2;
  r.prime_power_hypothesis = pow2 && q - 1 >= 4 && is_prime_power_ll(q);
  if (q == 2) {
    r.verdict = "two";
    return r;
  }
  if (q == 9) {
    r.verdict = "nine";
    return r;
  }
  if (pow2 && q >= 5 && is_prime_ll(q)) {
    r.verdict = "fermat_prime";
    return r;
  }
  r.verdict = "excluded";
  if (!pow2)
    r.reason = "q-1 is not a power of 2";
  else if (q == 3)
    r.reason = "below the admissible bound of 5";
  else if (!is_prime_power_ll(q))
    r.reason = "composite, not a prime power";
  else
    r.reason = "prime power outside the admissible list";
  return r;
}

std::vector<QClass> sieve_q(long long max) {
  std::vector<QClass> out;
  for (long long j = 2; j < 62 && (1LL << j) + 1 <= max; ++j)
    out.push_back(classify_q((1LL << j) + 1));
  return out;
}

namespace {

// Arithmetic in the q-element field; indices 0..q-1.  For q = 9 an index
// a + 3b stands for a + bx with x*x = -1 over the 3-element field.
struct GF {
  long long q;
  bool ext;

  int add(int i, int j) const {
    if (!ext) return static_cast<int>((i + j) % q);
    return (i % 3 + j % 3) % 3 + 3 * ((i / 3 + j / 3) % 3);
  }
  int neg(int i) const {
    if (!ext) return static_cast<int>((q - i) % q);
    return (3 - i % 3) % 3 + 3 * ((3 - i / 3) % 3);
  }
  int mul(int i, int j) const {
    if (!ext) return static_cast<int>((1LL * i * j) % q);
    int a = i % 3, b = i / 3, c = j % 3, d = j / 3;
    return (a * c + 2 * b * d) % 3 + 3 * ((a * d + b * c) % 3);
  }
  int pow(int g, long long e) const {
    int r = 1;
    while (e > 0) {
      if (e & 1) r = mul(r, g);
      g = mul(g, g);
      e >>= 1;
    }
    return r;
  }
  int inverse(int i) const { return pow(i, q - 2); }
};

}  // namespace

PGL2 make_pgl2(long long q) {
  bool ok = q == 9 || (q >= 5 && is_pow2(q - 1) && is_prime_ll(q));
  if (!ok)
    throw InputError(
        "UnsupportedField: q must be 9 or a prime exceeding a power of 2 "
        "by one, q >= 5");
  GF f{q, q == 9};
  int deg = static_cast<int>(q) + 1;
  int inf = static_cast<int>(q);
  auto translation = [&](int u) {
    std::vector<int> img(deg);
    for (int z = 0; z < q; ++z) img[z] = f.add(z, u);
    img[inf] = inf;
    return Perm(img);
  };
  auto scaling = [&](int c) {
    std::vector<int> img(deg);
    for (int z = 0; z < q; ++z) img[z] = f.mul(c, z);
    img[inf] = inf;
    return Perm(img);
  };
  auto inversion = [&](int c) {  // z -> c/z
    std::vector<int> img(deg);
    img[0] = inf;
    img[inf] = 0;
    for (int z = 1; z < q; ++z) img[z] = f.mul(c, f.inverse(z));
    return Perm(img);
  };
  // q-1 is a 2-power, so g generates the multiplicative group exactly when
  // its (q-1)/2 power is not 1.
  int g = 2;
  while (f.pow(g, (q - 1) / 2) == 1) ++g;
  std::vector<Perm> trans{translation(1)};
  if (q == 9) trans.push_back(translation(3));
  std::vector<Perm> pgl_gens = trans;
  pgl_gens.push_back(scaling(g));
  pgl_gens.push_back(inversion(1));
  std::vector<Perm> psl_gens = trans;
  psl_gens.push_back(scaling(f.mul(g, g)));
  psl_gens.push_back(inversion(f.neg(1)));
  std::vector<Perm> borel_gens = trans;
  borel_gens.push_back(scaling(g));
  PGL2 out;
  out.q = q;
  out.pgl = PermGroup(deg, pgl_gens);
  out.psl = PermGroup(deg, psl_gens);
  out.borel = PermGroup(deg, borel_gens);
  return out;
}

namespace {

constexpr long long kShapeCap = 10000;

// Field sizes whose projective group could fit under the cap.
const long long kShapeQs[] = {5, 9, 17};

}  // namespace

ShapeReport shape_decompose(const PermGroup& gbar, const PermGroup& hbar) {
  ShapeReport r;
  r.applicable = true;
  long long n = gbar.order();
  if (n == 1) {
    r.e = 0;
    r.product_ok = true;
    r.pass = true;
    r.witness = "trivial quotient";
    return r;
  }
  if (n > kShapeCap) {
    r.undecided = true;
    r.witness = "quotient order " + std::to_string(n) +
                " is beyond the decomposition cap";
    return r;
  }
  Perm one = Perm::identity(gbar.degree());
  std::vector<PermGroup> closures;
  for (const auto& c : conjugacy_classes(gbar)) {
    if (c.front() == one && c.size() == 1) continue;
    closures.push_back(normal_closure(gbar, {c.front()}));
  }
  std::vector<PermGroup> minimals;
  for (std::size_t i = 0; i < closures.size(); ++i) {
    bool keep = true;
    for (std::size_t j = 0; j < closures.size() && keep; ++j)
      if (closures[j].order() < closures[i].order() &&
          is_subgroup_of(closures[j], closures[i]))
        keep = false;
    if (!keep) continue;
    bool dup = false;
    for (const auto& m : minimals)
      if (m.elements() == closures[i].elements()) dup = true;
    if (!dup) minimals.push_back(closures[i]);
  }
  r.e = static_cast<int>(minimals.size());
  bool all_match = true;
  std::vector<PermGroup> components;
  for (const auto& s : minimals) {
    PermGroup inner = centralizer_of_set(gbar, s.generators());
    PermGroup d = inner.is_trivial()
                      ? gbar
                      : centralizer_of_set(gbar, inner.generators());
    components.push_back(d);
    ShapeFactor fac;
    fac.order = d.order();
    for (long long q : kShapeQs)
      if (q * (q * q - 1) == fac.order) fac.q = q;
    if (fac.q == 0) {
      all_match = false;
      r.factors.push_back(fac);
      continue;
    }
    PGL2 model = make_pgl2(fac.q);
    IsoVerdict v = fingerprint_isomorphic(d, model.pgl);
    if (v == IsoVerdict::unknown) {
      r.undecided = true;
      all_match = false;
    } else {
      fac.pgl_match = v == IsoVerdict::yes;
      if (!fac.pgl_match) all_match = false;
    }
    if (fac.pgl_match) {
      PermGroup x = intersection(hbar, d);
      long long want = fac.q * (fac.q - 1);
      if (x.order() == want) {
        int p = fac.q == 9 ? 3 : static_cast<int>(fac.q);
        PermGroup syl = sylow_subgroup(x, p);
        PermGroup norm = normalizer(d, syl);
        fac.borel_match = syl.order() == fac.q && is_normal_in(syl, x) &&
                          norm.order() == want;
      }
      if (!fac.borel_match) all_match = false;
    }
    r.factors.push_back(fac);
  }
  // the factors must commute pairwise and tile the whole quotient
  r.product_ok = true;
  for (std::size_t i = 0; i < components.size() && r.product_ok; ++i)
    for (std::size_t j = i + 1; j < components.size() && r.product_ok; ++j)
      for (const Perm& a : components[i].generators())
        for (const Perm& b : components[j].generators())
          if (!(a * b == b * a)) {
            r.product_ok = false;
            break;
          }
  if (r.product_ok) {
    std::vector<Perm> prod{one};
    for (const auto& d : components) prod = set_product(prod, d.elements());
    r.product_ok = static_cast<long long>(prod.size()) == n;
  }
  r.pass = !r.undecided && all_match && r.product_ok;
  std::ostringstream w;
  w << r.e << " factor" << (r.e == 1 ? "" : "s");
  for (const auto& fac : r.factors) {
    w << "; order " << fac.order;
    if (fac.q > 0)
      w << " (q=" << fac.q << ", projective " << (fac.pgl_match ? "yes" : "no")
        << ", borel " << (fac.borel_match ? "yes" : "no") << ")";
    else
      w << " (no admissible q)";
  }
  if (!r.product_ok) w << "; factors do not tile the quotient";
  r.witness = w.str();
  return r;
}

ShapeReport check_theorem1_shape(const Folder& f) {
  ShapeReport r;
  FolderClass cls = classify_folder(f);
  if (!cls.bx2p) {
    r.witness = "needs a bx2p folder: " + cls.witness;
    return r;
  }
  PermGroup kgen = subgroup_generated(f.g, f.k);
  if (kgen.order() != f.g.order()) {
    r.witness = "not an envelope: K generates a subgroup of order " +
                std::to_string(kgen.order());
    return r;
  }
  PermGroup o2 = o2_subgroup(f.g);
  PermGroup cent =
      o2.is_trivial() ? f.g : centralizer_of_set(f.g, o2.generators());
  bool fstar = is_subgroup_of(cent, o2);
  Quotient q = quotient(f.g, o2);
  r = shape_decompose(q.group, q.project_subgroup(f.h));
  r.fstar_ok = fstar;
  if (!fstar) {
    r.pass = false;
    r.witness += "; the centralizer of the 2-core escapes it";
  }
  return r;
}

// ---------------------------------------------------------------------------
// audit suite

namespace {

struct SuiteCtx {
  const Folder& f;
  FolderClass cls;
  bool envelope = false;
  bool faithful = false;
  PermGroup kgen;
  PermGroup o2;
  std::vector<Perm> o2h;  // the set product of the 2-core with H
  Quotient qbar;          // G modulo its 2-core
  PermGroup hbar;
  std::vector<Perm> kbar;  // sorted distinct images of K
  std::vector<int> tau;    // only valid when bruck holds
};

SuiteCtx make_ctx(const Folder& f) {
  SuiteCtx c{f, classify_folder(f), false, false, {}, {}, {}, {}, {}, {}, {}};
  if (!c.cls.folder) return c;
  c.kgen = subgroup_generated(f.g, f.k);
  c.envelope = c.kgen.order() == f.g.order();
  c.faithful = core(f.g, f.h).is_trivial();
  c.o2 = o2_subgroup(f.g);
  c.o2h = set_product(c.o2.elements(), f.h.elements());
  c.qbar = quotient(f.g, c.o2);
  c.hbar = c.qbar.project_subgroup(f.h);
  std::set<Perm> kb;
  for (const Perm& k : f.k) kb.insert(c.qbar.project(k));
  c.kbar.assign(kb.begin(), kb.end());
  if (c.cls.bruck) c.tau = extend_tau_bruck(f);
  return c;
}

LemmaReport start(const char* id) {
  LemmaReport r;
  r.lemma = id;
  return r;
}

std::string needs_bx2p(const SuiteCtx& c) {
  return "needs a bx2p folder: " + c.cls.witness;
}

LemmaReport lem_evensize(const SuiteCtx& c) {
  LemmaReport r = start("evensize");
  if (!c.cls.bx2p) {
    r.witness = needs_bx2p(c);
    return r;
  }
  r.applicable = true;
  long long size = static_cast<long long>(c.f.k.size());
  r.pass = size == 1 || size % 2 == 0;
  r.witness = "loop size " + std::to_string(size);
  return r;
}

LemmaReport lem_even_index(const SuiteCtx& c) {
  LemmaReport r = start("even_index");
  if (!c.cls.bx2p) {
    r.witness = needs_bx2p(c);
    return r;
  }
  r.applicable = true;
  r.pass = true;
  std::vector<PermGroup> ups = overgroups(c.f.g, c.f.h);
  for (const PermGroup& u : ups) {
    long long idx = c.f.g.order() / u.order();
    if (idx != 1 && idx % 2 == 1) {
      r.pass = false;
      r.witness = "overgroup of order " + std::to_string(u.order()) +
                  " has odd index " + std::to_string(idx);
      return r;
    }
  }
  r.witness = "checked " + std::to_string(ups.size()) + " overgroups of H";
  return r;
}

LemmaReport lem_2h2g(const SuiteCtx& c) {
  LemmaReport r = start("2Himplies2G");
  if (!c.cls.bx2p) {
    r.witness = needs_bx2p(c);
    return r;
  }
  r.applicable = true;
  bool h2 = is_2_group(c.f.h), g2 = is_2_group(c.f.g);
  r.pass = h2 == g2;
  std::ostringstream w;
  w << "|H| = " << c.f.h.order() << ", |G| = " << c.f.g.order();
  r.witness = w.str();
  return r;
}

LemmaReport lem_o22prime(const SuiteCtx& c) {
  LemmaReport r = start("O22prime");
  if (!c.cls.bx2p) {
    r.witness = needs_bx2p(c);
    return r;
  }
  r.applicable = true;
  PermGroup oddbar = largest_normal_odd_subgroup(c.qbar.group);
  PermGroup lifted = c.qbar.preimage(oddbar);
  std::vector<Perm> left = set_product(lifted.elements(), c.f.h.elements());
  r.pass = left.size() == c.o2h.size();
  std::ostringstream w;
  w << "|O_{2,2'}(G)H| = " << left.size() << ", |O_2(G)H| = " << c.o2h.size();
  r.witness = w.str();
  return r;
}

LemmaReport lem_noHinvert(const SuiteCtx& c) {
  LemmaReport r = start("noHinvert");
  if (!c.cls.bx2p) {
    r.witness = needs_bx2p(c);
    return r;
  }
  r.applicable = true;
  r.pass = true;
  // conjugates of H-elements, closed under conjugation by the generators
  auto helems = c.f.h.elements();
  std::set<Perm> in(helems.begin(), helems.end());
  std::vector<Perm> work(in.begin(), in.end());
  while (!work.empty()) {
    Perm y = work.back();
    work.pop_back();
    for (const Perm& g : c.f.g.generators()) {
      Perm z = conjugate(y, g);
      if (in.insert(z).second) work.push_back(z);
    }
  }
  Perm one = Perm::identity(c.f.g.degree());
  long long hits = 0;
  for (const Perm& y : in) {
    Perm yi = y.inverse();
    for (const Perm& k : c.f.k) {
      if (!(conjugate(apply_tau(c.f.g, c.tau, y), k) == yi)) continue;
      ++hits;
      if (!(y * y == one)) {
        r.pass = false;
        r.witness = to_string(y) + " is inverted across the twist but has order " +
                    std::to_string(y.order());
        return r;
      }
    }
  }
  std::ostringstream w;
  w << in.size() << " conjugates scanned, " << hits << " inversions seen";
  r.witness = w.str();
  return r;
}

LemmaReport lem_noHoverlineinvert(const SuiteCtx& c) {
  LemmaReport r = start("noHoverlineinvert");
  if (!c.cls.bx2p) {
    r.witness = needs_bx2p(c);
    return r;
  }
  r.applicable = true;
  r.pass = true;
  const PermGroup& gb = c.qbar.group;
  auto gbe = gb.elements();
  auto hbe = c.hbar.elements();
  std::set<Perm> seen;
  long long inverted_classes = 0;
  for (const Perm& y : gbe) {
    int o = y.order();
    if (o == 1 || o % 2 == 0 || seen.count(y)) continue;
    Perm yi = y.inverse();
    bool inverted = false;
    for (const Perm& x : c.kbar)
      if (x.order() == 2 && conjugate(y, x) == yi) {
        inverted = true;
        break;
      }
    // walk the class either way so each class is handled once
    std::vector<Perm> cls{y};
    std::set<Perm> local{y};
    for (std::size_t i = 0; i < cls.size(); ++i)
      for (const Perm& g : gb.generators()) {
        Perm z = conjugate(cls[i], g);
        if (local.insert(z).second) cls.push_back(z);
      }
    seen.insert(local.begin(), local.end());
    if (!inverted) continue;
    ++inverted_classes;
    for (const Perm& z : cls)
      if (set_has(hbe, z)) {
        r.pass = false;
        r.witness = "the class of " + to_string(y) +
                    " is inverted by a K image yet meets the H image at " +
                    to_string(z);
        return r;
      }
  }
  std::ostringstream w;
  w << inverted_classes << " odd-order classes inverted by K images, "
    << "none meeting the H image";
  r.witness = w.str();
  return r;
}

LemmaReport lem_o2prime(const SuiteCtx& c) {
  LemmaReport r = start("O2prime");
  if (!c.cls.bx2p) {
    r.witness = needs_bx2p(c);
    return r;
  }
  r.applicable = true;
  PermGroup odd = largest_normal_odd_subgroup(c.f.g);
  auto helems = c.f.h.elements();
  for (const Perm& x : odd.elements()) {
    if (!set_has(helems, x)) {
      r.witness = "odd core element " + to_string(x) + " lies outside H";
      return r;
    }
    for (const Perm& k : c.f.k)
      if (!(x * k == k * x)) {
        r.witness = "odd core element " + to_string(x) +
                    " fails to centralize " + to_string(k);
        return r;
      }
  }
  if (c.faithful && !odd.is_trivial()) {
    r.witness = "faithful folder with odd core of order " +
                std::to_string(odd.order());
    return r;
  }
  if (c.envelope) {
    for (const Perm& x : odd.elements())
      for (const Perm& g : c.f.g.generators())
        if (!(x * g == g * x)) {
          r.witness = "envelope with non-central odd core element " +
                      to_string(x);
          return r;
        }
  }
  r.pass = true;
  r.witness = "odd core order " + std::to_string(odd.order());
  return r;
}

LemmaReport lem_2powerorder(const SuiteCtx& c) {
  LemmaReport r = start("2powerorder");
  if (!c.cls.bx2p || !c.envelope ||
      !is_pow2(static_cast<long long>(c.f.k.size()))) {
    r.witness = !c.cls.bx2p ? needs_bx2p(c)
                            : (!c.envelope ? "needs an envelope"
                                           : "loop size is not a 2-power");
    return r;
  }
  r.applicable = true;
  r.pass = is_2_group(c.f.g);
  r.witness = "|G| = " + std::to_string(c.f.g.order());
  return r;
}

LemmaReport lem_solubleloop(const SuiteCtx& c) {
  LemmaReport r = start("solubleloop");
  if (!c.cls.bx2p || !c.envelope ||
      c.o2h.size() != static_cast<std::size_t>(c.f.g.order())) {
    r.witness = !c.cls.bx2p
                    ? needs_bx2p(c)
                    : (!c.envelope ? "needs an envelope"
                                   : "G exceeds the product of the 2-core "
                                     "with H");
    return r;
  }
  r.applicable = true;
  r.pass = is_soluble_loop(folder_to_loop(c.f));
  r.witness = "loop of size " + std::to_string(c.f.k.size());
  return r;
}

LemmaReport lem_solublegroups(const SuiteCtx& c) {
  LemmaReport r = start("solublegroups");
  if (!c.cls.bx2p) {
    r.witness = needs_bx2p(c);
    return r;
  }
  if (!is_soluble(c.f.g)) {
    r.witness = "G is not soluble";
    return r;
  }
  r.applicable = true;
  auto o2e = c.o2.elements();
  r.pass = is_2_group(c.kgen);
  for (const Perm& k : c.f.k)
    if (!set_has(o2e, k)) r.pass = false;
  r.witness = "<K> has order " + std::to_string(c.kgen.order()) +
              ", 2-core order " + std::to_string(c.o2.order());
  return r;
}

LemmaReport lem_oddnormal(const SuiteCtx& c) {
  LemmaReport r = start("oddnormal");
  if (!c.cls.bx2p) {
    r.witness = needs_bx2p(c);
    return r;
  }
  r.applicable = true;
  PermGroup odd = largest_normal_odd_subgroup(c.f.g);
  if (!is_subgroup_of(odd, c.f.h)) {
    r.witness = "the odd core escapes H";
    return r;
  }
  QuotientFolder qf = quotient_folder(c.f, odd);
  FolderReport rep = verify_folder(qf.folder, FolderLevel::folder);
  r.pass = rep.pass && qf.same_loop;
  std::ostringstream w;
  w << "odd core order " << odd.order() << ", image folder "
    << (rep.pass ? "valid" : rep.reason.c_str()) << ", same loop "
    << (qf.same_loop ? "yes" : "no");
  r.witness = w.str();
  return r;
}

LemmaReport lem_arfolders5(const SuiteCtx& c) {
  LemmaReport r = start("ArFolders5");
  if (!c.cls.folder || !c.cls.ar) {
    r.witness = c.cls.folder ? "needs H acting on K: " + c.cls.witness
                             : c.cls.witness;
    return r;
  }
  r.applicable = true;
  r.pass = true;
  std::map<Perm, int> gid, hid;
  {
    int i = 0;
    for (const auto& cl : conjugacy_classes(c.f.g)) {
      for (const Perm& x : cl) gid[x] = i;
      ++i;
    }
    i = 0;
    for (const auto& cl : conjugacy_classes(c.f.h)) {
      for (const Perm& x : cl) hid[x] = i;
      ++i;
    }
  }
  std::map<int, std::pair<int, Perm>> first_seen;
  for (const Perm& x : c.f.h.elements()) {
    auto [it, fresh] = first_seen.try_emplace(gid.at(x), hid.at(x), x);
    if (!fresh && it->second.first != hid.at(x)) {
      r.pass = false;
      r.witness = to_string(it->second.second) + " and " + to_string(x) +
                  " fuse in G but not in H";
      return r;
    }
  }
  r.witness = "H-class fusion matches G-class fusion on " +
              std::to_string(c.f.h.order()) + " elements";
  return r;
}

LemmaReport lem_arfolders6(const SuiteCtx& c) {
  LemmaReport r = start("ArFolders6");
  if (!c.cls.folder || !c.cls.ar) {
    r.witness = c.cls.folder ? "needs H acting on K: " + c.cls.witness
                             : c.cls.witness;
    return r;
  }
  r.applicable = true;
  r.pass = true;
  PermGroup cr = core(c.f.g, c.f.h);
  for (const Perm& x : cr.elements())
    for (const Perm& k : c.f.k)
      if (!(x * k == k * x)) {
        r.pass = false;
        r.witness = "core element " + to_string(x) +
                    " fails to centralize " + to_string(k);
        return r;
      }
  r.witness = "core of order " + std::to_string(cr.order()) +
              " centralizes the generated subgroup";
  return r;
}

LemmaReport lem_heissprime(const SuiteCtx& c) {
  LemmaReport r = start("HeissPrime");
  if (!c.cls.bx2p) {
    r.witness = needs_bx2p(c);
    return r;
  }
  if (!o2_subgroup(c.hbar).is_trivial()) {
    r.witness = "the H image has a nontrivial 2-core";
    return r;
  }
  std::vector<long long> odd = odd_prime_divisors(c.qbar.group.order());
  HeissData hd = heiss_decomposition(c.f, c.o2);
  std::vector<long long> qualifying;
  for (long long p : odd) {
    bool all = true;
    for (const auto& orb : hd.orbits)
      if (orb.m % p != 0) all = false;
    if (all) qualifying.push_back(p);
  }
  if (qualifying.empty()) {
    r.witness = "no odd prime divides every class size";
    return r;
  }
  r.applicable = true;
  r.pass = true;
  long long ksize = static_cast<long long>(c.f.k.size());
  for (long long p : qualifying)
    if (ksize % p == 0) {
      r.pass = false;
      r.witness = std::to_string(p) + " divides the loop size " +
                  std::to_string(ksize);
      return r;
    }
  std::ostringstream w;
  w << "primes";
  for (long long p : qualifying) w << " " << p;
  w << " avoid the loop size " << ksize;
  r.witness = w.str();
  return r;
}

LemmaReport lem_zerocomponent(const SuiteCtx& c) {
  LemmaReport r = start("ZeroComponentCase");
  if (!c.cls.bx2p) {
    r.witness = needs_bx2p(c);
    return r;
  }
  PermGroup fit = fitting_subgroup(c.qbar.group);
  PermGroup cf = fit.is_trivial()
                     ? c.qbar.group
                     : centralizer_of_set(c.qbar.group, fit.generators());
  if (!is_subgroup_of(cf, fit)) {
    r.witness = "the Fitting subgroup of the quotient is not self-bounding";
    return r;
  }
  r.applicable = true;
  r.pass = c.hbar.order() == c.qbar.group.order();
  std::ostringstream w;
  w << "|quotient| = " << c.qbar.group.order() << ", |H image| = "
    << c.hbar.order();
  r.witness = w.str();
  return r;
}

LemmaReport lem_passive(const SuiteCtx& c) {
  LemmaReport r = start("passive_centralizing_components");
  if (!c.cls.bx2p) {
    r.witness = needs_bx2p(c);
    return r;
  }
  r.applicable = true;
  PermGroup dbar = c.qbar.project_subgroup(c.kgen);
  PermGroup cc = dbar.is_trivial()
                     ? c.qbar.group
                     : centralizer_of_set(c.qbar.group, dbar.generators());
  PermGroup odd_part = odd_generated_subgroup(cc);
  r.pass = is_subgroup_of(odd_part, c.hbar);
  std::ostringstream w;
  w << "odd-generated centralizer part of order " << odd_part.order();
  r.witness = w.str();
  return r;
}

LemmaReport lem_inv_invert(const SuiteCtx& c) {
  LemmaReport r = start("inv_invert");
  if (!c.cls.folder) {
    r.witness = c.cls.witness;
    return r;
  }
  r.applicable = true;
  r.pass = true;
  auto gbe = c.qbar.group.elements();
  long long reps = 0;
  for (const auto& cl : conjugacy_classes(c.f.g)) {
    Perm x = cl.front();
    if (x.order() != 2) continue;
    ++reps;
    Perm xb = c.qbar.project(x);
    std::set<int> primes;
    for (const Perm& yb : gbe) {
      int o = yb.order();
      if (o <= 2 || o % 2 == 0 || !is_prime_ll(o)) continue;
      if (conjugate(yb, xb) == yb.inverse()) primes.insert(o);
    }
    auto gelems = c.f.g.elements();
    for (int p : primes) {
      bool found = false;
      for (const Perm& y : gelems)
        if (y.order() == p && conjugate(y, x) == y.inverse()) {
          found = true;
          break;
        }
      if (!found) {
        r.pass = false;
        r.witness = to_string(x) + " inverts order-" + std::to_string(p) +
                    " elements only after passing to the quotient";
        return r;
      }
    }
  }
  std::ostringstream w;
  w << reps << " involution classes lift their inversions";
  r.witness = w.str();
  return r;
}

LemmaReport lem_subloops(const SuiteCtx& c) {
  LemmaReport r = start("subloops");
  if (!c.cls.bx2p) {
    r.witness = needs_bx2p(c);
    return r;
  }
  r.applicable = true;
  r.pass = true;
  // centralizer and normalizer triples over subgroups of H
  std::vector<PermGroup> ls;
  if (auto subs = all_subgroups(c.f.h, 256)) {
    ls = std::move(*subs);
  } else {
    ls.push_back(PermGroup::trivial(c.f.h.degree()));
    ls.push_back(c.f.h);
  }
  long long checked = 0;
  for (const PermGroup& l : ls) {
    PermGroup cg = centralizer_of_set(c.f.g, l.elements());
    PermGroup ng = normalizer(c.f.g, l);
    PermGroup ch = intersection(cg, c.f.h);
    PermGroup nh = intersection(ng, c.f.h);
    std::vector<Perm> ck;
    for (const Perm& k : c.f.k) {
      bool central = true;
      for (const Perm& x : l.elements())
        if (!(x * k == k * x)) {
          central = false;
          break;
        }
      if (central) ck.push_back(k);
    }
    Folder cent{cg, ch, ck};
    Folder norm{ng, nh, ck};
    FolderReport rc = verify_folder(cent, FolderLevel::bx2p);
    FolderReport rn = verify_folder(norm, FolderLevel::bx2p);
    if (!rc.pass || !rn.pass) {
      r.pass = false;
      r.witness = "an L of order " + std::to_string(l.order()) +
                  " breaks a fixed-point triple: " +
                  (rc.pass ? rn.reason : rc.reason);
      return r;
    }
    if (!(folder_to_loop(cent).table() == folder_to_loop(norm).table())) {
      r.pass = false;
      r.witness = "centralizer and normalizer triples of an L of order " +
                  std::to_string(l.order()) + " carry different subloops";
      return r;
    }
    ++checked;
  }
  // factorizing subgroups carry subfolders
  std::vector<PermGroup> us;
  if (c.f.g.order() <= 48) {
    if (auto allu = all_subgroups(c.f.g, 400)) us = std::move(*allu);
  }
  if (us.empty()) {
    us = overgroups(c.f.g, c.f.h);
    us.push_back(c.kgen);
    us.push_back(PermGroup::from_elements(c.o2h));
    us.push_back(c.o2);
  }
  long long factored = 0;
  for (const PermGroup& u : us) {
    long long uh = intersection(u, c.f.h).order();
    long long uk = 0;
    for (const Perm& k : c.f.k)
      if (u.contains(k)) ++uk;
    if (u.order() > uh * uk) continue;
    auto sub = detect_subfolder(c.f, u);
    if (!sub) {
      r.pass = false;
      r.witness = "a factorizing subgroup of order " +
                  std::to_string(u.order()) + " yields no subfolder";
      return r;
    }
    FolderReport ru = verify_folder(*sub, FolderLevel::bx2p);
    if (!ru.pass) {
      r.pass = false;
      r.witness = "the subfolder on a subgroup of order " +
                  std::to_string(u.order()) + " fails: " + ru.reason;
      return r;
    }
    ++factored;
  }
  std::ostringstream w;
  w << checked << " fixed-point triples and " << factored
    << " factorizing subgroups verified";
  r.witness = w.str();
  return r;
}

LemmaReport lem_o_upper_2(const SuiteCtx& c) {
  LemmaReport r = start("O_upper_2_criterion");
  if (!c.cls.bx2p) {
    r.witness = needs_bx2p(c);
    return r;
  }
  r.applicable = true;
  r.pass = true;
  std::vector<PermGroup> us;
  if (c.f.g.order() <= 64) {
    if (auto allu = all_subgroups(c.f.g, 1500)) us = std::move(*allu);
  }
  if (us.empty()) {
    us = overgroups(c.f.g, c.f.h);
    us.push_back(c.kgen);
    us.push_back(PermGroup::from_elements(c.o2h));
    us.push_back(c.o2);
    us.push_back(c.f.g);
  }
  long long qualifying = 0;
  for (const PermGroup& u : us) {
    long long uh = intersection(u, c.f.h).order();
    std::vector<Perm> kin;
    for (const Perm& k : c.f.k)
      if (u.contains(k)) kin.push_back(k);
    if (u.order() != uh * static_cast<long long>(kin.size())) continue;
    PermGroup o2u = o2_subgroup(u);
    PermGroup ou = odd_generated_subgroup(u);
    auto o2g = c.o2.elements();
    bool hyp = true;
    auto o2ue = o2u.elements();
    auto oue = ou.elements();
    for (const Perm& a : o2ue) {
      for (const Perm& b : oue)
        if (!set_has(o2g, commutator(a, b))) {
          hyp = false;
          break;
        }
      if (!hyp) break;
    }
    if (hyp && !kin.empty())
      hyp = is_subgroup_of(subgroup_generated(u, kin), o2u);
    if (!hyp) continue;
    ++qualifying;
    for (const Perm& x : oue)
      if (!set_has(c.o2h, x)) {
        r.pass = false;
        r.witness = "a qualifying subgroup of order " +
                    std::to_string(u.order()) +
                    " has odd-generated part escaping the 2-core times H";
        return r;
      }
  }
  std::ostringstream w;
  w << qualifying << " qualifying subgroups of " << us.size() << " scanned";
  r.witness = w.str();
  return r;
}

}  // namespace

std::vector<LemmaReport> lemma_suite(const Folder& f, Suite suite) {
  SuiteCtx c = make_ctx(f);
  std::vector<LemmaReport> out;
  out.push_back(lem_2h2g(c));
  out.push_back(lem_2powerorder(c));
  out.push_back(lem_arfolders5(c));
  out.push_back(lem_arfolders6(c));
  out.push_back(lem_heissprime(c));
  out.push_back(lem_o22prime(c));
  out.push_back(lem_o2prime(c));
  out.push_back(lem_o_upper_2(c));
  out.push_back(lem_zerocomponent(c));
  out.push_back(lem_even_index(c));
  out.push_back(lem_evensize(c));
  out.push_back(lem_inv_invert(c));
  out.push_back(lem_noHinvert(c));
  out.push_back(lem_noHoverlineinvert(c));
  out.push_back(lem_oddnormal(c));
  out.push_back(lem_passive(c));
  out.push_back(lem_solublegroups(c));
  out.push_back(lem_solubleloop(c));
  out.push_back(lem_subloops(c));
  if (suite == Suite::all) {
    out.push_back(check_bx2p_tau(f));
    out.push_back(kbar_check(f));
  }
  std::sort(out.begin(), out.end(),
            [](const LemmaReport& a, const LemmaReport& b) {
              return a.lemma < b.lemma;
            });
  return out;
}

bool is_2m_loop(const Loop& l) {
  if (l.size() > 32) throw SizeLimit("is_2m_loop: loop order beyond 32");
  if (is_soluble_loop(l)) return false;
  for (const auto& s : all_subloops(l)) {
    if (static_cast<int>(s.size()) == l.size()) continue;
    if (!is_soluble_loop(subloop_table(l, s))) return false;
  }
  return true;
}

std::optional<Folder> find_2m_subfolder(const Folder& f) {
  FolderClass cls = classify_folder(f);
  if (!cls.bx2p)
    throw InputError("NotBX2P: the descent needs a bx2p folder (" +
                     cls.witness + ")");
  PermGroup o2 = o2_subgroup(f.g);
  std::vector<Perm> o2h = set_product(o2.elements(), f.h.elements());
  if (static_cast<long long>(o2h.size()) == f.g.order()) return std::nullopt;
  Loop x = folder_to_loop(f);
  if (x.size() > 64) throw SizeLimit("find_2m_subfolder: loop order beyond 64");
  // descend to a minimal nonsoluble subloop
  std::vector<int> carrier(x.size());
  for (int i = 0; i < x.size(); ++i) carrier[i] = i;
  Loop y = x;
  bool shrunk = true;
  while (shrunk) {
    shrunk = false;
    for (const auto& s : all_subloops(y)) {
      if (static_cast<int>(s.size()) == y.size()) continue;
      Loop z = subloop_table(y, s);
      if (is_soluble_loop(z)) continue;
      std::vector<int> next;
      for (int i : s) next.push_back(carrier[i]);
      carrier = next;
      y = z;
      shrunk = true;
      break;
    }
  }
  if (is_soluble_loop(y))
    throw VerdictError("NotFound: no nonsoluble subloop below the loop");
  std::vector<Perm> gens;
  for (int i : carrier) gens.push_back(f.k[i]);
  PermGroup u = subgroup_generated(f.g, gens);
  auto sub = detect_subfolder(f, u);
  if (!sub)
    throw VerdictError(
        "NotFound: the subgroup under the minimal nonsoluble subloop fails "
        "the factorization criterion");
  if (subgroup_generated(u, sub->k).order() != u.order())
    throw VerdictError("NotFound: the subfolder is not an envelope");
  if (!verify_folder(*sub, FolderLevel::bx2p).pass)
    throw VerdictError("NotFound: the subfolder drops below bx2p");
  Loop w = folder_to_loop(*sub);
  if (!is_2m_loop(w))
    throw VerdictError("NotFound: the subfolder loop is not minimal "
                       "nonsoluble");
  PermGroup o2u = o2_subgroup(u);
  PermGroup cent =
      o2u.is_trivial() ? u : centralizer_of_set(u, o2u.generators());
  if (!is_subgroup_of(cent, o2u))
    throw VerdictError("NotFound: the 2-core of the subfolder misses its own "
                       "centralizer");
  Quotient qu = quotient(u, o2u);
  long long n = qu.group.order();
  long long q = 0;
  for (long long cand : {5LL, 9LL, 17LL, 257LL})
    if (cand * (cand * cand - 1) == n) q = cand;
  if (q == 0)
    throw VerdictError("NotFound: the reduced subfolder group has order " +
                       std::to_string(n) + ", matching no admissible q");
  if (fingerprint_isomorphic(qu.group, make_pgl2(q).pgl) != IsoVerdict::yes)
    throw VerdictError("NotFound: the reduced subfolder group does not match "
                       "the projective model");
  PermGroup uh = intersection(u, f.h);
  std::vector<Perm> base = set_product(o2u.elements(), uh.elements());
  if (u.order() / static_cast<long long>(base.size()) != q + 1)
    throw VerdictError("NotFound: the reduced index is not q+1");
  // image of U cap K: 1 plus involutions outside the derived subgroup
  std::set<Perm> kimg;
  for (const Perm& k : sub->k) kimg.insert(qu.project(k));
  PermGroup der = derived_subgroup(qu.group);
  std::set<Perm> expect;
  expect.insert(Perm::identity(qu.group.degree()));
  for (const Perm& z : qu.group.elements())
    if (z.order() == 2 && !der.contains(z)) expect.insert(z);
  if (kimg != expect)
    throw VerdictError("NotFound: the K image misses the outer involutions");
  return sub;
}

}  // namespace loopforge
