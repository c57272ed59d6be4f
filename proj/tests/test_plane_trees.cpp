#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "dessin/error.hpp"
#include "dessin/plane_tree.hpp"
#include "dessin/rational.hpp"

using namespace dessin;

namespace {

Int factorial(std::size_t n) {
  Int f = 1;
  for (std::size_t i = 2; i <= n; ++i) f *= static_cast<unsigned long>(i);
  return f;
}

Int multiplicity_factorials(const std::vector<unsigned>& degrees) {
  Int f = 1;
  for (std::size_t i = 0; i < degrees.size();) {
    std::size_t j = i;
    while (j < degrees.size() && degrees[j] == degrees[i]) ++j;
    f *= factorial(j - i);
    i = j;
  }
  return f;
}

// Independent count: the automorphism-weighted number of plane trees with a
// passport is (n-1)!(m-1)! / (prod of degree-multiplicity factorials).
Rat weighted_tree_count(const Passport& p) {
  Rat q(factorial(p.white_count() - 1) * factorial(p.black_count() - 1),
        multiplicity_factorials(p.white()) * multiplicity_factorials(p.black()));
  q.canonicalize();
  return q;
}

PlaneTree relabel(const PlaneTree& t, std::mt19937_64& rng) {
  std::vector<std::size_t> perm(t.vertex_count());
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin() + 1, perm.end(), rng);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<PlaneTree::Vertex> v(t.vertex_count());
  for (std::size_t i = 0; i < t.vertex_count(); ++i) {
    auto& out = v[perm[i]];
    out.color = t.vertex(i).color;
    for (std::size_t w : t.vertex(i).rotation) out.rotation.push_back(perm[w]);
    if (!out.rotation.empty()) {
      std::uniform_int_distribution<std::size_t> shift(0, out.rotation.size() - 1);
      std::rotate(out.rotation.begin(), out.rotation.begin() + static_cast<std::ptrdiff_t>(shift(rng)),
                  out.rotation.end());
    }
  }
  return PlaneTree(std::move(v));
}

}  // namespace

TEST_CASE("tree counts for the black-centered passports") {
  CHECK(enumerate_trees(parse_passport("1,2,4,6/4,1^9")).size() == 6);
  CHECK(enumerate_trees(parse_passport("1,2,3,3/4,1^5")).size() == 3);
  CHECK(enumerate_trees(parse_passport("1,2,3,3,3/5,1^7")).size() == 4);
  CHECK(enumerate_trees(parse_passport("6,2,1,1/4,1^6")).size() == 3);
  CHECK(enumerate_trees(parse_passport("8,2,1,1,1,1/6,1^8")).size() == 5);
}

TEST_CASE("weighted counts match the closed formula") {
  for (const char* text : {"1,2,4,6/4,1^9", "2,2/2,1,1", "2,1/2,1", "2,2,1/2,2,1", "3,2,1/2,2,1,1",
                           "2,2,2/2,2,1,1", "3,2,1,1/3,2,1,1", "4,2,1/2,2,1,1,1", "2,2,2,2/2,2,2,1,1",
                           "6/1^6", "1^6/6", "3,2,2,1/2,2,2,1,1"}) {
    const Passport p = parse_passport(text);
    Rat total = 0;
    for (const auto& t : enumerate_trees(p)) total += Rat(1, automorphism_count(t));
    CHECK_MESSAGE(total == weighted_tree_count(p), text);
  }
}

TEST_CASE("enumerated trees carry the requested passport and distinct codes") {
  const Passport p = parse_passport("1,2,4,6/4,1^9");
  const auto trees = enumerate_trees(p);
  std::vector<CanonicalCode> codes;
  for (const auto& t : trees) {
    CHECK(passport_of(t) == p);
    CHECK(diameter(t) == 4);
    codes.push_back(canonical_code(t));
  }
  CHECK(std::is_sorted(codes.begin(), codes.end()));
  CHECK(std::adjacent_find(codes.begin(), codes.end()) == codes.end());
}

TEST_CASE("canonical code is invariant under relabeling and re-rooting") {
  std::mt19937_64 rng(8);
  for (const char* text : {"1,2,4,6/4,1^9", "3,2,1/2,2,1,1", "4,2,1/2,2,1,1,1", "2,2,2,2/2,2,2,1,1"}) {
    for (const auto& t : enumerate_trees(parse_passport(text))) {
      const auto code = canonical_code(t);
      for (int k = 0; k < 10; ++k) CHECK(canonical_code(relabel(t, rng)) == code);
      CHECK(canonical_code(tree_from_code(code)) == code);
    }
  }
}

TEST_CASE("small shapes") {
  const PlaneTree path = parse_tree("0 w 1 : 1\n1 b 2 : 0 2\n2 w 1 : 1\n");
  CHECK(to_string(canonical_code(path)) == "[w1 b1 w0]");
  CHECK(canonical_code(mirror(path)) == canonical_code(path));
  CHECK(diameter(path) == 2);

  const PlaneTree star = centered_tree({1, 1, 1, 1, 1});
  CHECK(is_mirror_symmetric(star));
  PlaneTree rotated = parse_tree(serialize(star));
  CHECK(canonical_code(rotated) == canonical_code(star));
  CHECK(enumerate_trees(parse_passport("1/1")).size() == 1);
}

TEST_CASE("mirror reverses rotations") {
  const PlaneTree t = centered_tree({6, 1, 2, 4});
  CHECK(canonical_code(mirror(t)) == canonical_code(centered_tree({6, 4, 2, 1})));
  CHECK(canonical_code(mirror(mirror(t))) == canonical_code(t));

  int fixed = 0;
  for (const auto& tree : enumerate_trees(parse_passport("1,2,4,6/4,1^9"))) fixed += is_mirror_symmetric(tree);
  CHECK(fixed == 0);

  int symmetric = 0;
  for (const auto& tree : enumerate_trees(parse_passport("6,2,1,1/4,1^6"))) {
    if (is_mirror_symmetric(tree)) {
      ++symmetric;
      CHECK(canonical_code(tree) == canonical_code(centered_tree({6, 1, 2, 1})));
    }
  }
  CHECK(symmetric == 1);
}

TEST_CASE("necklaces count the black-centered family") {
  for (const char* text : {"1,2,4,6/4,1^9", "1,2,3,3/4,1^5", "1,2,3,3,3/5,1^7", "6,2,1,1/4,1^6",
                           "8,2,1,1,1,1/6,1^8", "1,1/2", "2,2,2/3,1^3"}) {
    const Passport p = parse_passport(text);
    REQUIRE(is_black_centered(p));
    const auto necklaces = centered_necklaces(p);
    const auto trees = enumerate_trees(p);
    CHECK(necklaces.size() == trees.size());
    std::vector<CanonicalCode> a;
    std::vector<CanonicalCode> b;
    for (const auto& n : necklaces) a.push_back(canonical_code(centered_tree(n)));
    for (const auto& t : trees) b.push_back(canonical_code(t));
    std::sort(a.begin(), a.end());
    CHECK(a == b);
  }
  // Distinct degrees: (n-1)! arrangements.
  CHECK(centered_necklaces(parse_passport("1,11,80,84/4,1^172")).size() == 6);
  CHECK_FALSE(is_black_centered(parse_passport("2,2,1/2,2,1")));
  CHECK_FALSE(is_black_centered(parse_passport("6/1^6")));
}

TEST_CASE("serialization round trip and validation") {
  for (const auto& t : enumerate_trees(parse_passport("3,2,1/2,2,1,1"))) {
    const PlaneTree back = parse_tree(serialize(t));
    CHECK(serialize(back) == serialize(t));
  }
  CHECK_THROWS_AS(parse_tree("0 w 1 : 1\n1 w 1 : 0\n"), InvalidInput);
  CHECK_THROWS_AS(parse_tree("0 w 2 : 1\n1 b 1 : 0\n"), InvalidInput);
  CHECK_THROWS_AS(enumerate_trees(parse_passport("25/1^25")), Unsupported);
}
