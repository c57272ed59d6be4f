#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dessin/passport.hpp"

namespace dessin {

/// A bipartite tree embedded in the plane: every vertex lists its neighbors in
/// counter-clockwise order.
class PlaneTree {
 public:
  struct Vertex {
    Color color = Color::White;
    std::vector<std::size_t> rotation;
  };

  PlaneTree() = default;
  /// Validates connectivity, N = V - 1, the proper 2-coloring, symmetric
  /// adjacency and distinct neighbors in each rotation.
  explicit PlaneTree(std::vector<Vertex> vertices);

  [[nodiscard]] std::size_t vertex_count() const { return vertices_.size(); }
  [[nodiscard]] std::size_t edges() const { return vertices_.empty() ? 0 : vertices_.size() - 1; }
  [[nodiscard]] const Vertex& vertex(std::size_t v) const { return vertices_[v]; }
  [[nodiscard]] const std::vector<Vertex>& vertices() const { return vertices_; }
  [[nodiscard]] std::size_t degree(std::size_t v) const { return vertices_[v].rotation.size(); }

 private:
  std::vector<Vertex> vertices_;
};

/// Preorder tokens (color, child count) read from the lexicographically
/// smallest directed-edge rooting.
struct CanonicalCode {
  std::vector<std::pair<Color, unsigned>> tokens;

  friend bool operator==(const CanonicalCode&, const CanonicalCode&) = default;
  friend auto operator<=>(const CanonicalCode& a, const CanonicalCode& b) { return a.tokens <=> b.tokens; }
};

CanonicalCode canonical_code(const PlaneTree& tree);
/// Builds the tree whose rooting at the code's root edge reads back as `code`.
PlaneTree tree_from_code(const CanonicalCode& code);
/// "[w6 b3 w0 ...]"
std::string to_string(const CanonicalCode& code);

inline constexpr unsigned kMaxEnumerationEdges = 24;

/// One representative per orientation-preserving isomorphism class, in
/// canonical-code order. Throws Unsupported above kMaxEnumerationEdges edges.
std::vector<PlaneTree> enumerate_trees(const Passport& passport);

/// Number of orientation-preserving, color-preserving automorphisms: the
/// directed edges whose rooting reads the canonical code.
std::size_t automorphism_count(const PlaneTree& tree);

PlaneTree mirror(const PlaneTree& tree);
bool is_mirror_symmetric(const PlaneTree& tree);
Passport passport_of(const PlaneTree& tree);
std::size_t diameter(const PlaneTree& tree);

/// One line per vertex: `id color degree : neighbor-cycle`.
std::string serialize(const PlaneTree& tree);
PlaneTree parse_tree(std::string_view text);

/// Passports <k_1..k_n | n, 1^(N-n)> with n >= 2: one internal black vertex
/// adjacent to every white vertex.
bool is_black_centered(const Passport& passport);

/// Cyclic arrangements (up to rotation) of the white degrees around the black
/// center, each given by its lexicographically smallest rotation. Works for any
/// N; throws Unsupported for more than 10 white vertices.
std::vector<std::vector<unsigned>> centered_necklaces(const Passport& passport);
/// The black-centered tree with the given counter-clockwise white arrangement.
PlaneTree centered_tree(const std::vector<unsigned>& arrangement);

}  // namespace dessin
