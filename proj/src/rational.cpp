#include "conflict_lab/rational.hpp"

#include "conflict_lab/error.hpp"

namespace clab {

std::string to_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

namespace {

bool valid_integer(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

Integer to_integer(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  return Integer(std::string(s), 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!valid_integer(num) || !valid_integer(den) || den.front() == '-') {
    throw ParseError("malformed rational: '" + std::string(text) + "'");
  }
  Integer d = to_integer(den);
  if (d == 0) throw ParseError("zero denominator in rational: '" + std::string(text) + "'");
  return make_rational(to_integer(num), d);
}

}  // namespace clab
