#include "dessin/passport.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <numeric>
#include <sstream>

#include "dessin/error.hpp"

namespace dessin {

std::string_view to_string(Color c) { return c == Color::White ? "white" : "black"; }

Passport::Passport(std::vector<unsigned> white, std::vector<unsigned> black)
    : white_(std::move(white)), black_(std::move(black)) {
  if (white_.empty() || black_.empty()) throw InvalidInput("passport needs white and black vertices");
  for (unsigned d : white_)
    if (d == 0) throw InvalidInput("zero degree in passport");
  for (unsigned d : black_)
    if (d == 0) throw InvalidInput("zero degree in passport");
  std::sort(white_.begin(), white_.end(), std::greater<>());
  std::sort(black_.begin(), black_.end(), std::greater<>());
  const unsigned sw = std::accumulate(white_.begin(), white_.end(), 0U);
  const unsigned sb = std::accumulate(black_.begin(), black_.end(), 0U);
  if (sw != sb) {
    throw InvalidInput("not a valid bipartite tree passport: white sum " + std::to_string(sw) +
                       " != black sum " + std::to_string(sb));
  }
  edges_ = sw;
  if (white_.size() + black_.size() != edges_ + 1) {
    throw InvalidInput("not a valid bipartite tree passport: n+m = " +
                       std::to_string(white_.size() + black_.size()) +
                       " != N+1 = " + std::to_string(edges_ + 1));
  }
}

namespace {

unsigned parse_unsigned(std::string_view s, std::string_view whole) {
  if (s.empty() || s.size() > 6) throw InvalidInput("malformed passport '" + std::string(whole) + "'");
  unsigned v = 0;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw InvalidInput("malformed passport '" + std::string(whole) + "'");
    }
    v = v * 10 + static_cast<unsigned>(c - '0');
  }
  return v;
}

std::vector<unsigned> parse_side(std::string_view side, std::string_view whole) {
  std::vector<unsigned> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = side.find(',', start);
    std::string_view term = side.substr(start, comma == std::string_view::npos ? side.npos : comma - start);
    while (!term.empty() && term.front() == ' ') term.remove_prefix(1);
    while (!term.empty() && term.back() == ' ') term.remove_suffix(1);
    const auto caret = term.find('^');
    const unsigned degree = parse_unsigned(term.substr(0, caret), whole);
    if (degree == 0) throw InvalidInput("zero degree in passport '" + std::string(whole) + "'");
    unsigned count = 1;
    if (caret != std::string_view::npos) count = parse_unsigned(term.substr(caret + 1), whole);
    if (count == 0) throw InvalidInput("zero repetition count in passport '" + std::string(whole) + "'");
    out.insert(out.end(), count, degree);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

void print_side(std::ostringstream& os, const std::vector<unsigned>& degrees) {
  for (std::size_t i = 0; i < degrees.size();) {
    std::size_t j = i;
    while (j < degrees.size() && degrees[j] == degrees[i]) ++j;
    if (i > 0) os << ',';
    os << degrees[i];
    if (j - i > 1) os << '^' << (j - i);
    i = j;
  }
}

}  // namespace

Passport parse_passport(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos || text.find('/', slash + 1) != std::string_view::npos) {
    throw InvalidInput("malformed passport '" + std::string(text) + "': expected white/black");
  }
  return Passport(parse_side(text.substr(0, slash), text), parse_side(text.substr(slash + 1), text));
}

std::string to_string(const Passport& p) {
  std::ostringstream os;
  print_side(os, p.white());
  os << '/';
  print_side(os, p.black());
  return os.str();
}

bool is_prime(unsigned n) {
  if (n < 2) return false;
  for (unsigned d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

PrimeSplit prime_power_split(const Passport& passport, unsigned p) {
  if (!is_prime(p)) throw InvalidInput(std::to_string(p) + " is not prime");
  unsigned r = passport.edges();
  if (r % p != 0) {
    throw InvalidInput(std::to_string(p) + " does not divide N = " + std::to_string(passport.edges()));
  }
  unsigned s = 0;
  while (r % p == 0) {
    r /= p;
    ++s;
  }
  return {p, s, r};
}

Decomposability is_decomposable(const Passport& passport, unsigned p, Color color) {
  if (!is_prime(p) || passport.edges() % p != 0) {
    throw InvalidInput("decomposability needs a prime dividing N");
  }
  const auto& degrees = passport.degrees(color);
  const std::size_t n = degrees.size();
  // Items ascending so the greedy reconstruction yields the lexicographically
  // smallest ascending tuple.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return degrees[a] < degrees[b]; });

  // reach[i][c][r]: some c-subset of items i..n-1 has sum = r (mod p).
  const std::size_t stride_c = p;
  const std::size_t stride_i = (n + 1) * stride_c;
  std::vector<char> reach((n + 1) * stride_i, 0);
  auto at = [&](std::size_t i, std::size_t c, std::size_t r) -> char& {
    return reach[i * stride_i + c * stride_c + r];
  };
  at(n, 0, 0) = 1;
  for (std::size_t i = n; i-- > 0;) {
    const unsigned d = degrees[order[i]] % p;
    for (std::size_t c = 0; c <= n - i; ++c) {
      for (std::size_t r = 0; r < p; ++r) {
        char v = at(i + 1, c, r);
        if (!v && c > 0) v = at(i + 1, c - 1, (r + p - d) % p);
        at(i, c, r) = v;
      }
    }
  }

  Decomposability out;
  for (std::size_t c = 1; c < n; ++c) {
    if (!at(0, c, 0)) continue;
    DecompositionWitness w;
    w.color = color;
    std::size_t need = c;
    std::size_t residue = 0;
    for (std::size_t i = 0; i < n && need > 0; ++i) {
      const unsigned d = degrees[order[i]] % p;
      const std::size_t rest = (residue + p - d) % p;
      if (at(i + 1, need - 1, rest)) {
        w.indices.push_back(order[i]);
        w.degrees.push_back(degrees[order[i]]);
        w.subset_sum += degrees[order[i]];
        residue = rest;
        --need;
      }
    }
    std::sort(w.indices.begin(), w.indices.end());
    out.decomposable = true;
    out.witness = std::move(w);
    break;
  }
  return out;
}

std::optional<std::vector<unsigned>> subset_sum_realizable(const std::vector<unsigned>& partition, unsigned y) {
  std::vector<unsigned> items = partition;
  std::sort(items.begin(), items.end());
  const std::size_t n = items.size();
  // reach[i][s]: items i..n-1 can realize sum s exactly.
  std::vector<std::vector<char>> reach(n + 1, std::vector<char>(y + 1, 0));
  reach[n][0] = 1;
  for (std::size_t i = n; i-- > 0;) {
    for (unsigned s = 0; s <= y; ++s) {
      reach[i][s] = reach[i + 1][s] || (s >= items[i] && reach[i + 1][s - items[i]]);
    }
  }
  if (!reach[0][y]) return std::nullopt;
  std::vector<unsigned> chosen;
  unsigned s = y;
  for (std::size_t i = 0; i < n && s > 0; ++i) {
    if (s >= items[i] && reach[i + 1][s - items[i]]) {
      chosen.push_back(items[i]);
      s -= items[i];
    }
  }
  return chosen;
}

bool max_degree_criterion(const Passport& passport, unsigned p) {
  const PrimeSplit split = prime_power_split(passport, p);
  if (split.s != 1) throw InvalidInput("criterion stated for s=1 only");
  return passport.white().front() > p * (split.r - 1);
}

}  // namespace dessin
