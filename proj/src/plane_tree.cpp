#include "dessin/plane_tree.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <sstream>

#include "dessin/error.hpp"

namespace dessin {

PlaneTree::PlaneTree(std::vector<Vertex> vertices) : vertices_(std::move(vertices)) {
  const std::size_t n = vertices_.size();
  if (n == 0) throw InvalidInput("plane tree needs at least one vertex");
  std::size_t degree_sum = 0;
  for (std::size_t v = 0; v < n; ++v) {
    const auto& rot = vertices_[v].rotation;
    degree_sum += rot.size();
    std::set<std::size_t> seen;
    for (std::size_t w : rot) {
      if (w >= n || w == v) throw InvalidInput("rotation references an invalid neighbor");
      if (!seen.insert(w).second) throw InvalidInput("rotation lists a neighbor twice");
      if (vertices_[w].color == vertices_[v].color) throw InvalidInput("edge joins two vertices of one color");
      const auto& back = vertices_[w].rotation;
      if (std::find(back.begin(), back.end(), v) == back.end()) throw InvalidInput("adjacency is not symmetric");
    }
  }
  if (degree_sum != 2 * (n - 1)) throw InvalidInput("edge count is not V - 1");
  std::vector<char> seen(n, 0);
  std::vector<std::size_t> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    stack.pop_back();
    for (std::size_t w : vertices_[v].rotation) {
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  if (reached != n) throw InvalidInput("plane tree is not connected");
}

namespace {

std::size_t position_of(const std::vector<std::size_t>& rot, std::size_t w) {
  return static_cast<std::size_t>(std::find(rot.begin(), rot.end(), w) - rot.begin());
}

// Code of the rooting at directed edge root -> first.
CanonicalCode code_from(const PlaneTree& t, std::size_t root, std::size_t first) {
  CanonicalCode code;
  code.tokens.reserve(t.vertex_count());
  struct Frame {
    std::size_t vertex;
    std::size_t parent;
    std::size_t start;  // rotation index of the first child
    std::size_t emitted;
    std::size_t total;
  };
  const auto& root_rot = t.vertex(root).rotation;
  code.tokens.emplace_back(t.vertex(root).color, static_cast<unsigned>(root_rot.size()));
  std::vector<Frame> stack{{root, root, position_of(root_rot, first), 0, root_rot.size()}};
  while (!stack.empty()) {
    Frame& f = stack.back();
    if (f.emitted == f.total) {
      stack.pop_back();
      continue;
    }
    const auto& rot = t.vertex(f.vertex).rotation;
    const std::size_t child = rot[(f.start + f.emitted) % rot.size()];
    ++f.emitted;
    const auto& crot = t.vertex(child).rotation;
    code.tokens.emplace_back(t.vertex(child).color, static_cast<unsigned>(crot.size() - 1));
    const std::size_t parent_pos = position_of(crot, f.vertex);
    stack.push_back({child, f.vertex, (parent_pos + 1) % crot.size(), 0, crot.size() - 1});
  }
  return code;
}

}  // namespace

CanonicalCode canonical_code(const PlaneTree& tree) {
  if (tree.vertex_count() == 1) {
    return CanonicalCode{{{tree.vertex(0).color, 0U}}};
  }
  CanonicalCode best;
  bool have = false;
  for (std::size_t v = 0; v < tree.vertex_count(); ++v) {
    for (std::size_t w : tree.vertex(v).rotation) {
      CanonicalCode c = code_from(tree, v, w);
      if (!have || c < best) {
        best = std::move(c);
        have = true;
      }
    }
  }
  return best;
}

std::size_t automorphism_count(const PlaneTree& tree) {
  if (tree.vertex_count() == 1) return 1;
  const CanonicalCode best = canonical_code(tree);
  std::size_t count = 0;
  for (std::size_t v = 0; v < tree.vertex_count(); ++v) {
    for (std::size_t w : tree.vertex(v).rotation) {
      if (code_from(tree, v, w) == best) ++count;
    }
  }
  return count;
}

PlaneTree tree_from_code(const CanonicalCode& code) {
  if (code.tokens.empty()) throw InvalidInput("empty canonical code");
  std::vector<PlaneTree::Vertex> vertices(code.tokens.size());
  struct Open {
    std::size_t vertex;
    unsigned remaining;
  };
  vertices[0].color = code.tokens[0].first;
  std::vector<Open> stack;
  if (code.tokens[0].second > 0) stack.push_back({0, code.tokens[0].second});
  for (std::size_t i = 1; i < code.tokens.size(); ++i) {
    while (!stack.empty() && stack.back().remaining == 0) stack.pop_back();
    if (stack.empty()) throw InvalidInput("canonical code has too many tokens");
    const std::size_t parent = stack.back().vertex;
    --stack.back().remaining;
    vertices[i].color = code.tokens[i].first;
    vertices[parent].rotation.push_back(i);
    vertices[i].rotation.push_back(parent);
    if (code.tokens[i].second > 0) stack.push_back({i, code.tokens[i].second});
  }
  return PlaneTree(std::move(vertices));
}

std::string to_string(const CanonicalCode& code) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < code.tokens.size(); ++i) {
    if (i > 0) os << ' ';
    os << (code.tokens[i].first == Color::White ? 'w' : 'b') << code.tokens[i].second;
  }
  os << ']';
  return os.str();
}

namespace {

class Enumerator {
 public:
  explicit Enumerator(const Passport& p) {
    for (unsigned d : p.white()) ++remaining_[0][d];
    for (unsigned d : p.black()) ++remaining_[1][d];
    left_ = p.white_count() + p.black_count();
  }

  std::set<CanonicalCode> run() {
    const unsigned root_degree = remaining_[0].rbegin()->first;
    take(Color::White, root_degree, vertices_.size());
    recurse();
    return codes_;
  }

 private:
  struct Slot {
    std::size_t parent;
    Color color;
  };

  static int side(Color c) { return c == Color::White ? 0 : 1; }
  static Color other(Color c) { return c == Color::White ? Color::Black : Color::White; }

  // Creates a vertex of the given color and degree attached to `parent`
  // (parent == own id for the root) and pushes its child slots.
  void take(Color c, unsigned degree, std::size_t parent) {
    const std::size_t id = vertices_.size();
    auto& pool = remaining_[side(c)];
    if (--pool[degree] == 0) pool.erase(degree);
    --left_;
    vertices_.push_back({c, {}});
    children_.push_back(parent == id ? degree : degree - 1);
    if (parent != id) {
      vertices_[parent].rotation.push_back(id);
      vertices_[id].rotation.push_back(parent);
    }
    const unsigned kids = children_.back();
    for (unsigned k = 0; k < kids; ++k) slots_.push_back({id, other(c)});
    // Slots are consumed from the back; reverse this vertex's block so the
    // first child is filled first.
    std::reverse(slots_.end() - kids, slots_.end());
  }

  void untake(Color c, unsigned degree, std::size_t parent) {
    const std::size_t id = vertices_.size() - 1;
    const unsigned kids = children_.back();
    slots_.resize(slots_.size() - kids);
    if (parent != id) vertices_[parent].rotation.pop_back();
    vertices_.pop_back();
    children_.pop_back();
    ++remaining_[side(c)][degree];
    ++left_;
  }

  void recurse() {
    if (slots_.empty()) {
      if (left_ == 0) codes_.insert(canonical_code(PlaneTree(vertices_)));
      return;
    }
    if (left_ == 0) return;
    const Slot slot = slots_.back();
    slots_.pop_back();
    const auto pool = remaining_[side(slot.color)];
    for (const auto& [degree, count] : pool) {
      (void)count;
      take(slot.color, degree, slot.parent);
      recurse();
      untake(slot.color, degree, slot.parent);
    }
    slots_.push_back(slot);
  }

  std::map<unsigned, unsigned> remaining_[2];
  std::size_t left_ = 0;
  std::vector<PlaneTree::Vertex> vertices_;
  std::vector<unsigned> children_;
  std::vector<Slot> slots_;
  std::set<CanonicalCode> codes_;
};

}  // namespace

std::vector<PlaneTree> enumerate_trees(const Passport& passport) {
  if (passport.edges() > kMaxEnumerationEdges) {
    throw Unsupported("unsupported size: N = " + std::to_string(passport.edges()) + " exceeds " +
                      std::to_string(kMaxEnumerationEdges));
  }
  Enumerator e(passport);
  std::vector<PlaneTree> out;
  for (const auto& code : e.run()) out.push_back(tree_from_code(code));
  return out;
}

PlaneTree mirror(const PlaneTree& tree) {
  std::vector<PlaneTree::Vertex> v = tree.vertices();
  for (auto& x : v) std::reverse(x.rotation.begin(), x.rotation.end());
  return PlaneTree(std::move(v));
}

bool is_mirror_symmetric(const PlaneTree& tree) { return canonical_code(mirror(tree)) == canonical_code(tree); }

Passport passport_of(const PlaneTree& tree) {
  std::vector<unsigned> white;
  std::vector<unsigned> black;
  for (std::size_t v = 0; v < tree.vertex_count(); ++v) {
    (tree.vertex(v).color == Color::White ? white : black).push_back(static_cast<unsigned>(tree.degree(v)));
  }
  return Passport(std::move(white), std::move(black));
}

namespace {

std::pair<std::size_t, std::size_t> farthest(const PlaneTree& t, std::size_t from) {
  std::vector<std::size_t> dist(t.vertex_count(), static_cast<std::size_t>(-1));
  std::queue<std::size_t> q;
  dist[from] = 0;
  q.push(from);
  std::size_t last = from;
  while (!q.empty()) {
    const std::size_t v = q.front();
    q.pop();
    last = v;
    for (std::size_t w : t.vertex(v).rotation) {
      if (dist[w] == static_cast<std::size_t>(-1)) {
        dist[w] = dist[v] + 1;
        q.push(w);
      }
    }
  }
  return {last, dist[last]};
}

}  // namespace

std::size_t diameter(const PlaneTree& tree) {
  const auto [far, d0] = farthest(tree, 0);
  (void)d0;
  return farthest(tree, far).second;
}

std::string serialize(const PlaneTree& tree) {
  std::ostringstream os;
  for (std::size_t v = 0; v < tree.vertex_count(); ++v) {
    const auto& x = tree.vertex(v);
    os << v << ' ' << (x.color == Color::White ? 'w' : 'b') << ' ' << x.rotation.size() << " :";
    for (std::size_t w : x.rotation) os << ' ' << w;
    os << '\n';
  }
  return os.str();
}

PlaneTree parse_tree(std::string_view text) {
  std::istringstream is{std::string(text)};
  std::string line;
  std::vector<PlaneTree::Vertex> vertices;
  while (std::getline(is, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ls(line);
    std::size_t id = 0;
    char color = 0;
    std::size_t degree = 0;
    char colon = 0;
    if (!(ls >> id >> color >> degree >> colon) || colon != ':' || (color != 'w' && color != 'b') ||
        id != vertices.size()) {
      throw InvalidInput("malformed tree line '" + line + "'");
    }
    PlaneTree::Vertex v;
    v.color = color == 'w' ? Color::White : Color::Black;
    std::size_t w = 0;
    while (ls >> w) v.rotation.push_back(w);
    if (v.rotation.size() != degree) throw InvalidInput("degree does not match rotation in '" + line + "'");
    vertices.push_back(std::move(v));
  }
  return PlaneTree(std::move(vertices));
}

bool is_black_centered(const Passport& passport) {
  const auto& black = passport.black();
  const std::size_t n = passport.white_count();
  if (n < 2 || black.front() != n) return false;
  return black.size() == 1 || black[1] == 1;
}

std::vector<std::vector<unsigned>> centered_necklaces(const Passport& passport) {
  if (!is_black_centered(passport)) throw InvalidInput("passport is not black-centered");
  if (passport.white_count() > 10) throw Unsupported("too many white vertices for necklace listing");
  std::vector<unsigned> arrangement = passport.white();
  std::sort(arrangement.begin(), arrangement.end());
  std::set<std::vector<unsigned>> classes;
  do {
    std::vector<unsigned> best = arrangement;
    std::vector<unsigned> rot = arrangement;
    for (std::size_t k = 1; k < rot.size(); ++k) {
      std::rotate(rot.begin(), rot.begin() + 1, rot.end());
      best = std::min(best, rot);
    }
    classes.insert(best);
  } while (std::next_permutation(arrangement.begin(), arrangement.end()));
  return {classes.begin(), classes.end()};
}

PlaneTree centered_tree(const std::vector<unsigned>& arrangement) {
  std::vector<PlaneTree::Vertex> v(1);
  v[0].color = Color::Black;
  for (unsigned k : arrangement) {
    const std::size_t w = v.size();
    v[0].rotation.push_back(w);
    v.push_back({Color::White, {0}});
    for (unsigned j = 1; j < k; ++j) {
      const std::size_t leaf = v.size();
      v[w].rotation.push_back(leaf);
      v.push_back({Color::Black, {w}});
    }
  }
  return PlaneTree(std::move(v));
}

}  // namespace dessin
