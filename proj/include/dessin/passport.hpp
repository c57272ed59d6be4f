#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dessin {

enum class Color { White, Black };

std::string_view to_string(Color c);

/// Degree multisets of the white and black vertices of a plane bipartite tree.
/// Degrees are stored in non-increasing order; every witness index refers to
/// that order.
class Passport {
 public:
  /// Validates sum(white) == sum(black) == N and n + m == N + 1.
  Passport(std::vector<unsigned> white, std::vector<unsigned> black);

  [[nodiscard]] const std::vector<unsigned>& white() const { return white_; }
  [[nodiscard]] const std::vector<unsigned>& black() const { return black_; }
  [[nodiscard]] const std::vector<unsigned>& degrees(Color c) const {
    return c == Color::White ? white_ : black_;
  }
  [[nodiscard]] unsigned edges() const { return edges_; }
  [[nodiscard]] std::size_t white_count() const { return white_.size(); }
  [[nodiscard]] std::size_t black_count() const { return black_.size(); }

  /// The passport of the color-swapped tree.
  [[nodiscard]] Passport swapped() const { return Passport(black_, white_); }

  friend bool operator==(const Passport&, const Passport&) = default;

 private:
  std::vector<unsigned> white_;
  std::vector<unsigned> black_;
  unsigned edges_ = 0;
};

/// Grammar: `w1,w2,.../b1,b2,...`, each term `d` or `d^count`.
Passport parse_passport(std::string_view text);
/// Inverse of parse_passport, compressing runs as `d^count`.
std::string to_string(const Passport& p);

/// N = p^s * r with gcd(p, r) = 1.
struct PrimeSplit {
  unsigned p = 0;
  unsigned s = 0;
  unsigned r = 0;
};

bool is_prime(unsigned n);
/// Throws InvalidInput when p is not prime or does not divide N.
PrimeSplit prime_power_split(const Passport& passport, unsigned p);

struct DecompositionWitness {
  Color color = Color::White;
  std::vector<std::size_t> indices;  ///< ascending positions in Passport::degrees(color)
  std::vector<unsigned> degrees;     ///< the chosen degrees, ascending
  unsigned subset_sum = 0;
};

struct Decomposability {
  bool decomposable = false;
  std::optional<DecompositionWitness> witness;
};

/// Is there a proper nonempty subset of the given color's degrees whose sum is
/// divisible by p? The witness has minimal cardinality, then the
/// lexicographically smallest ascending degree tuple.
Decomposability is_decomposable(const Passport& passport, unsigned p, Color color);

/// Exact subset-sum decision over a multiset (any subset, including the whole
/// multiset and the empty one for y = 0). Returns the chosen elements ascending.
std::optional<std::vector<unsigned>> subset_sum_realizable(const std::vector<unsigned>& partition, unsigned y);

/// max white degree d > p(r - 1), a sufficient condition for
/// white-indecomposability. Throws InvalidInput when s > 1.
bool max_degree_criterion(const Passport& passport, unsigned p);

/// True for N = p, where both colors are indecomposable because every proper
/// subset sum lies strictly between 0 and p. For N = p^s with s > 1 the larger
/// color class still realizes the sum p, so r = 1 alone is not vacuous.
inline bool trivially_indecomposable(const PrimeSplit& split) { return split.r == 1 && split.s == 1; }

}  // namespace dessin
