#include <doctest.h>

#include <cstdio>
#include <string>
#include <vector>

#include "loopforge/errors.hpp"
#include "loopforge/folder.hpp"
#include "loopforge/io.hpp"
#include "loopforge/smallgroups.hpp"

using namespace loopforge;

namespace {

Perm p(std::vector<int> v) { return Perm(std::move(v)); }

Folder paper_d8() {
  Perm a({1, 0, 3, 2});
  Perm b({0, 3, 2, 1});
  PermGroup g(4, {a, b});
  return Folder{g, subgroup_generated(g, {a * b}), {Perm::identity(4), a}};
}

Folder rotation() {
  PermGroup g(4, {p({1, 2, 3, 0}), p({1, 0, 3, 2})});
  PermGroup h = subgroup_generated(g, {p({1, 0, 3, 2})});
  std::vector<Perm> k{p({0, 1, 2, 3}), p({1, 2, 3, 0}), p({2, 3, 0, 1}),
                      p({3, 0, 1, 2})};
  return Folder{g, h, k};
}

bool same_folder(const Folder& a, const Folder& b) {
  return a.g.elements() == b.g.elements() && a.h.elements() == b.h.elements() &&
         a.k == b.k;
}

}  // namespace

TEST_CASE("loop text round trip") {
  for (const NamedLoop& nl : groups_up_to_12()) {
    Loop back = parse_loop(format_loop(nl.loop));
    CHECK(back == nl.loop);
  }
}

TEST_CASE("loop parser tolerates comments and spacing") {
  Loop l = parse_loop(
      "# two element loop\n"
      "loop 2\n"
      "\n"
      "0 1   # identity row\n"
      "  1 0\n");
  CHECK(l == cyclic_loop(2));
}

TEST_CASE("loop parser rejects malformed input") {
  CHECK_THROWS_AS(parse_loop(""), InputError);
  CHECK_THROWS_AS(parse_loop("latin 2\n0 1\n1 0\n"), InputError);
  CHECK_THROWS_AS(parse_loop("loop 2\n0 1\n"), InputError);
  CHECK_THROWS_AS(parse_loop("loop 2\n0 1 0\n1 0\n"), InputError);
  CHECK_THROWS_AS(parse_loop("loop 2\n0 x\n1 0\n"), InputError);
  CHECK_THROWS_AS(parse_loop("loop 2\n0 1\n0 1\n"), InputError);   // column repeat
  CHECK_THROWS_AS(parse_loop("loop 2\n1 0\n0 1\n"), InputError);   // identity not 0
  CHECK_THROWS_AS(parse_loop("loop 2\n0 2\n1 0\n"), InputError);   // out of range
}

TEST_CASE("group text round trip") {
  PermGroup s3(3, {p({1, 0, 2}), p({1, 2, 0})});
  PermGroup back = parse_group(format_group(s3));
  CHECK(back.elements() == s3.elements());
  PermGroup triv = parse_group("group 5\n");
  CHECK(triv.order() == 1);
  CHECK(triv.degree() == 5);
  CHECK(parse_group(format_group(PermGroup::trivial(3))).order() == 1);
}

TEST_CASE("group parser rejects malformed input") {
  CHECK_THROWS_AS(parse_group("group\n"), InputError);
  CHECK_THROWS_AS(parse_group("group 0\n"), InputError);
  CHECK_THROWS_AS(parse_group("group 3 extra\n"), InputError);
  CHECK_THROWS_AS(parse_group("group 3\n1 0\n"), InputError);
  CHECK_THROWS_AS(parse_group("group 3\n1 1 0\n"), InputError);
  CHECK_THROWS_AS(parse_group("group 3\n1 0 3\n"), InputError);
}

TEST_CASE("folder text round trip") {
  for (const Folder& f : {paper_d8(), rotation()}) {
    Folder back = parse_folder(format_folder(f));
    CHECK(same_folder(back, f));
  }
}

TEST_CASE("folder parser accepts the documented layout") {
  Folder f = parse_folder(
      "# dihedral folder over the cyclic stabilizer\n"
      "[group]\n"
      "group 4\n"
      "1 0 3 2\n"
      "0 3 2 1\n"
      "[H]\n"
      "3 0 1 2\n"
      "[K]\n"
      "0 1 2 3\n"
      "1 0 3 2\n");
  CHECK(same_folder(f, paper_d8()));
  CHECK(f.h.order() == 4);
  CHECK(folder_to_loop(f).size() == 2);
}

TEST_CASE("folder parser accepts an empty stabilizer section") {
  Folder f = parse_folder(
      "[group]\n"
      "group 3\n"
      "1 2 0\n"
      "[H]\n"
      "[K]\n"
      "0 1 2\n"
      "1 2 0\n"
      "2 0 1\n");
  CHECK(f.h.order() == 1);
  CHECK(f.g.order() == 3);
}

TEST_CASE("folder parser rejects malformed input") {
  const std::string good =
      "[group]\ngroup 4\n1 0 3 2\n0 3 2 1\n[H]\n3 0 1 2\n[K]\n0 1 2 3\n1 0 3 2\n";
  CHECK_NOTHROW(parse_folder(good));
  CHECK_THROWS_AS(parse_folder("group 4\n1 0 3 2\n"), InputError);
  CHECK_THROWS_AS(parse_folder("[group]\ngroup 4\n1 0 3 2\n0 3 2 1\n[H]\n"),
                  InputError);
  CHECK_THROWS_AS(parse_folder("[group]\ngroup 4\n1 0 3 2\n[banana]\n[K]\n0 1 2 3\n"),
                  InputError);
  // K not starting at the identity
  CHECK_THROWS_AS(
      parse_folder("[group]\ngroup 4\n1 0 3 2\n0 3 2 1\n[H]\n3 0 1 2\n[K]\n"
                   "1 0 3 2\n0 1 2 3\n"),
      InputError);
  // K element outside the group
  CHECK_THROWS_AS(
      parse_folder("[group]\ngroup 4\n1 0 3 2\n[H]\n[K]\n0 1 2 3\n0 2 1 3\n"),
      InputError);
  // H generator outside the group
  CHECK_THROWS_AS(
      parse_folder("[group]\ngroup 4\n1 0 3 2\n[H]\n0 2 1 3\n[K]\n0 1 2 3\n"),
      InputError);
  // wrong K size for the stabilizer
  CHECK_THROWS_AS(
      parse_folder("[group]\ngroup 4\n1 0 3 2\n0 3 2 1\n[H]\n3 0 1 2\n[K]\n"
                   "0 1 2 3\n"),
      InputError);
  // K meets a conjugate of H
  CHECK_THROWS_AS(
      parse_folder("[group]\ngroup 4\n1 0 3 2\n0 3 2 1\n[H]\n3 0 1 2\n[K]\n"
                   "0 1 2 3\n3 0 1 2\n"),
      InputError);
}

TEST_CASE("file save and load") {
  const std::string path = "io_roundtrip_tmp.folder";
  Folder f = rotation();
  save_text(path, format_folder(f));
  Folder back = load_folder(path);
  CHECK(same_folder(back, f));
  std::remove(path.c_str());
  CHECK_THROWS_AS(load_folder("does_not_exist.folder"), InputError);
  const std::string lpath = "io_roundtrip_tmp.loop";
  save_text(lpath, format_loop(dihedral_loop(4)));
  CHECK(load_loop(lpath) == dihedral_loop(4));
  std::remove(lpath.c_str());
}
