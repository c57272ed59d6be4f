#include "dessin/rational.hpp"

#include <cctype>

#include "dessin/error.hpp"

namespace dessin {

namespace {

Int parse_int(std::string_view text, std::string_view whole) {
  std::size_t i = 0;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
  if (i == text.size()) throw InvalidInput("malformed rational '" + std::string(whole) + "'");
  for (std::size_t j = i; j < text.size(); ++j) {
    if (!std::isdigit(static_cast<unsigned char>(text[j]))) {
      throw InvalidInput("malformed rational '" + std::string(whole) + "'");
    }
  }
  std::string digits(text);
  if (digits.front() == '+') digits.erase(0, 1);
  return Int(digits, 10);
}

std::string_view strip(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rat parse_rat(std::string_view text) {
  const std::string_view t = strip(text);
  const auto slash = t.find('/');
  if (slash == std::string_view::npos) return Rat(parse_int(t, text));
  const Int num = parse_int(strip(t.substr(0, slash)), text);
  const Int den = parse_int(strip(t.substr(slash + 1)), text);
  if (den == 0) throw InvalidInput("zero denominator in '" + std::string(text) + "'");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

std::string to_string(const Int& z) { return z.get_str(10); }

std::string to_string(const Rat& q) {
  if (q.get_den() == 1) return q.get_num().get_str(10);
  return q.get_num().get_str(10) + "/" + q.get_den().get_str(10);
}

}  // namespace dessin
