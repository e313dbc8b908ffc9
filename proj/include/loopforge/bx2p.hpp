#pragma once

#include <optional>
#include <string>
#include <vector>

#include "loopforge/folder.hpp"
#include "loopforge/loop.hpp"
#include "loopforge/permgroup.hpp"

namespace loopforge {

/// Where a folder sits along folder < bol < ar < bruck < bx2p.  The bol and
/// ar flags are independent of each other; bruck requires both plus the
/// inverse map of the carried loop being an automorphism; bx2p adds 2-power
/// order for every element of K.
struct FolderClass {
  bool folder = false;
  bool bol = false;
  bool ar = false;
  bool bruck = false;
  bool bx2p = false;
  std::string witness;  // first failure along the chain, empty when bx2p holds
};

FolderClass classify_folder(const Folder& f);

struct LemmaReport {
  std::string lemma;
  bool applicable = false;
  bool pass = false;  // meaningful only when applicable
  std::string witness;
};

/// For a Bruck folder, the extension element tau sits in the 2-core of the
/// extended group exactly when every element of K has 2-power order.  Both
/// sides are computed independently and compared.
LemmaReport check_bx2p_tau(const Folder& f);

/// For a bx2p folder: squares of K land in the 2-core of G, the image of K
/// in G modulo the 2-core is 1 plus a union of involution classes, and the
/// subgroup generated by K is normal.
LemmaReport kbar_check(const Folder& f);

struct HeissOrbit {
  Perm rep;         // least element of its conjugacy class in G/N
  long long m = 0;  // class size
  long long n = 0;  // K-elements mapping onto the representative
};

struct HeissData {
  long long n0 = 0;  // K-elements mapping into N
  std::vector<HeissOrbit> orbits;
  long long total = 0;           // n0 + sum over orbits of n*m
  bool equals_k = false;         // total == |K|
  bool fibers_constant = false;  // fiber size constant along every class
};

/// Counts K by conjugacy classes of its image in G/N.  Requires N normal
/// in G with the 2-core inside N; throws BadN otherwise.
HeissData heiss_decomposition(const Folder& f, const PermGroup& n);

/// Loop size of a minimal nonsoluble instance over the projective group of
/// parameter q with n0 elements of K in the 2-core: (q+1)*n0.
long long amt_size(long long q, long long n0);

enum class Suite { section3, all };

/// The audit suite: every checkable structural statement runs when its
/// hypotheses hold; reports come back in fixed lemma-id order.
std::vector<LemmaReport> lemma_suite(const Folder& f,
                                     Suite suite = Suite::section3);

struct QClass {
  long long q = 0;
  std::string verdict;  // two | nine | fermat_prime | excluded
  std::string reason;   // set when excluded
  bool literal_hypothesis = false;      // q > 1 and q-1 a power of 2
  bool prime_power_hypothesis = false;  // also q a prime power and q-1 >= 4
};

QClass classify_q(long long q);

/// Every q = 2^j + 1 <= max with j >= 2, classified.
std::vector<QClass> sieve_q(long long max);

/// The projective group of degree 2 over the q-element field, acting on the
/// q+1 projective points: 0..q-1 are the field elements, point q is infinity.
struct PGL2 {
  PermGroup pgl;
  PermGroup psl;    // index-2 simple subgroup
  PermGroup borel;  // stabilizer of infinity, order q(q-1)
  long long q = 0;
};

/// q = 9 or a prime with q-1 >= 4 a power of 2; UnsupportedField otherwise.
PGL2 make_pgl2(long long q);

struct ShapeFactor {
  long long order = 0;
  long long q = 0;  // matched field size, 0 when unmatched
  bool pgl_match = false;
  bool borel_match = false;
};

struct ShapeReport {
  bool applicable = false;  // bx2p envelope
  bool pass = false;
  bool undecided = false;  // hit the size cap or an unknown isomorphism
  int e = 0;               // number of direct factors of the 2-core quotient
  bool product_ok = false;
  bool fstar_ok = false;  // centralizer of the 2-core lies inside it
  std::vector<ShapeFactor> factors;
  std::string witness;
};

/// Decomposition half of the shape check, usable on a bare quotient pair:
/// minimal normal subgroups, double centralizers as factors, projective
/// matching, and the Borel test on the H-image intersections.
ShapeReport shape_decompose(const PermGroup& gbar, const PermGroup& hbar);

/// The structural conclusions for a bx2p envelope: the quotient by the
/// 2-core decomposes into matched projective factors with Borel
/// intersections, and the 2-core contains its own centralizer.
ShapeReport check_theorem1_shape(const Folder& f);

/// Nonsoluble with every proper subloop soluble.  Lattice test, order <= 32.
bool is_2m_loop(const Loop& l);

/// For a bx2p folder whose G exceeds the product of the 2-core with H:
/// descend to a minimal nonsoluble subloop and return its verified
/// subfolder.  nullopt when G equals that product (nothing to find).
std::optional<Folder> find_2m_subfolder(const Folder& f);

}  // namespace loopforge
