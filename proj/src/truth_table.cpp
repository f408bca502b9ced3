#include "conflict_lab/truth_table.hpp"

#include <bit>
#include <cctype>
#include <charconv>

#include "conflict_lab/error.hpp"

namespace clab {

namespace {

void check_arity(int arity) {
  if (arity < 1 || arity > kMaxArity) {
    throw ArityError("arity " + std::to_string(arity) + " outside 1.." + std::to_string(kMaxArity));
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Point

Point Point::from_string(std::string_view bitstring) {
  if (bitstring.empty() || bitstring.size() > static_cast<std::size_t>(kMaxArity)) {
    throw ParseError("point must have 1.." + std::to_string(kMaxArity) + " bits: '" +
                     std::string(bitstring) + "'");
  }
  Point p{0, static_cast<int>(bitstring.size())};
  for (std::size_t i = 0; i < bitstring.size(); ++i) {
    if (bitstring[i] == '1') {
      p.bits |= 1u << i;
    } else if (bitstring[i] != '0') {
      throw ParseError("point contains non-binary character: '" + std::string(bitstring) + "'");
    }
  }
  return p;
}

std::string Point::to_string() const {
  std::string s(static_cast<std::size_t>(arity), '0');
  for (int i = 0; i < arity; ++i) {
    if ((*this)[i]) s[static_cast<std::size_t>(i)] = '1';
  }
  return s;
}

std::vector<int> mask_to_indices(std::uint32_t mask) {
  std::vector<int> out;
  for (int i = 0; mask != 0; ++i, mask >>= 1) {
    if (mask & 1u) out.push_back(i + 1);
  }
  return out;
}

std::uint32_t indices_to_mask(const std::vector<int>& one_based) {
  std::uint32_t mask = 0;
  for (int i : one_based) {
    if (i < 1 || i > kMaxArity) throw DomainError("variable index out of range: " + std::to_string(i));
    mask |= 1u << (i - 1);
  }
  return mask;
}

// ---------------------------------------------------------------------------
// Subcube

Subcube Subcube::full(int arity) {
  check_arity(arity);
  return Subcube(arity, 0, 0);
}

Subcube Subcube::fixing(const Point& point, std::uint32_t mask) {
  check_arity(point.arity);
  if (mask >> point.arity) throw DomainError("subcube mask exceeds arity");
  return Subcube(point.arity, mask, point.bits & mask);
}

std::uint32_t Subcube::free_mask() const {
  std::uint32_t all = arity_ >= 32 ? ~0u : ((1u << arity_) - 1);
  return all & ~fixed_mask_;
}

int Subcube::fixed_count() const { return std::popcount(fixed_mask_); }

Subcube Subcube::restrict(int var, bool value) const {
  if (var < 0 || var >= arity_) {
    throw DomainError("variable x" + std::to_string(var + 1) + " out of range for arity " +
                      std::to_string(arity_));
  }
  if (!is_free(var)) {
    throw DomainError("variable x" + std::to_string(var + 1) + " is already fixed");
  }
  std::uint32_t bit = 1u << var;
  return Subcube(arity_, fixed_mask_ | bit, value ? (fixed_values_ | bit) : fixed_values_);
}

void Subcube::for_each_member(const std::function<void(std::uint32_t)>& fn) const {
  const std::uint32_t free = free_mask();
  std::uint32_t sub = 0;
  // Enumerates all subsets of `free` in increasing order.
  do {
    fn(fixed_values_ | sub);
    sub = (sub - free) & free;
  } while (sub != 0);
}

std::string Subcube::to_string() const {
  std::string s(static_cast<std::size_t>(arity_), '*');
  for (int i = 0; i < arity_; ++i) {
    if (!is_free(i)) s[static_cast<std::size_t>(i)] = ((fixed_values_ >> i) & 1u) ? '1' : '0';
  }
  return s;
}

// ---------------------------------------------------------------------------
// TruthTable

TruthTable::TruthTable(int arity) : arity_(arity) {
  check_arity(arity);
  words_.assign(((std::size_t{1} << arity) + 63) / 64, 0);
}

TruthTable TruthTable::from_function(int arity, const std::function<bool(std::uint32_t)>& fn) {
  TruthTable t(arity);
  for (std::uint32_t idx = 0; idx < t.size(); ++idx) {
    if (fn(idx)) t.set(idx, true);
  }
  return t;
}

void TruthTable::set(std::uint32_t idx, bool value) {
  const std::uint64_t bit = std::uint64_t{1} << (idx & 63);
  if (value) {
    words_[idx >> 6] |= bit;
  } else {
    words_[idx >> 6] &= ~bit;
  }
}

bool TruthTable::eval(const Point& x) const {
  if (x.arity != arity_) {
    throw DomainError("point of length " + std::to_string(x.arity) + " evaluated against arity " +
                      std::to_string(arity_));
  }
  return at(x.bits);
}

std::uint32_t TruthTable::count_ones() const {
  std::uint32_t n = 0;
  for (auto w : words_) n += static_cast<std::uint32_t>(std::popcount(w));
  return n;
}

bool TruthTable::is_constant() const {
  const std::uint32_t ones = count_ones();
  return ones == 0 || ones == size();
}

Constancy constant_on(const TruthTable& t, const Subcube& s) {
  if (s.arity() != t.arity()) throw DomainError("subcube arity does not match table");
  bool seen[2] = {false, false};
  s.for_each_member([&](std::uint32_t idx) { seen[t.at(idx)] = true; });
  if (seen[0] && seen[1]) return Constancy::kNonconstant;
  return seen[1] ? Constancy::kConst1 : Constancy::kConst0;
}

TruthTable compose(const TruthTable& outer, const TruthTable& inner) {
  const int n = outer.arity();
  const int m = inner.arity();
  if (n * m > kMaxArity) {
    throw ArityError("composition arity " + std::to_string(n) + "*" + std::to_string(m) +
                     " exceeds " + std::to_string(kMaxArity));
  }
  const std::uint32_t block_mask = (1u << m) - 1;
  return TruthTable::from_function(n * m, [&](std::uint32_t idx) {
    std::uint32_t outer_idx = 0;
    for (int i = 0; i < n; ++i) {
      if (inner.at((idx >> (i * m)) & block_mask)) outer_idx |= 1u << i;
    }
    return outer.at(outer_idx);
  });
}

// ---------------------------------------------------------------------------
// Serialization and parsing

std::string serialize(const TruthTable& t) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string hex;
  const std::uint32_t nibbles = (t.size() + 3) / 4;
  for (std::uint32_t k = nibbles; k-- > 0;) {
    unsigned digit = 0;
    for (unsigned b = 0; b < 4; ++b) {
      const std::uint32_t idx = 4 * k + b;
      if (idx < t.size() && t.at(idx)) digit |= 1u << b;
    }
    if (hex.empty() && digit == 0 && k != 0) continue;
    hex.push_back(kDigits[digit]);
  }
  return std::to_string(t.arity()) + ":" + hex;
}

namespace families {

TruthTable and_n(int n) {
  TruthTable t(n);
  t.set(t.size() - 1, true);
  return t;
}

TruthTable or_n(int n) {
  return TruthTable::from_function(n, [](std::uint32_t idx) { return idx != 0; });
}

TruthTable xor_n(int n) {
  return TruthTable::from_function(n, [](std::uint32_t idx) { return std::popcount(idx) % 2 == 1; });
}

TruthTable maj_n(int n) {
  if (n % 2 == 0) throw DomainError("MAJ requires odd arity, got " + std::to_string(n));
  return TruthTable::from_function(n, [n](std::uint32_t idx) { return 2 * std::popcount(idx) > n; });
}

TruthTable constant(int n, bool value) {
  return TruthTable::from_function(n, [value](std::uint32_t) { return value; });
}

TruthTable identity() { return TruthTable::from_function(1, [](std::uint32_t idx) { return idx == 1; }); }

}  // namespace families

namespace {

class SpecParser {
 public:
  explicit SpecParser(std::string_view text) : text_(text) {}

  TruthTable parse() {
    TruthTable t = parse_spec();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing characters");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("bad function spec '" + std::string(text_) + "' at offset " +
                     std::to_string(pos_) + ": " + what);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  void expect(char c) {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string_view word() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a token");
    return text_.substr(start, pos_ - start);
  }

  int arity(std::string_view token) const {
    int n = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), n);
    if (ec != std::errc() || ptr != token.data() + token.size()) fail("expected an arity");
    if (n < 1 || n > kMaxArity) {
      throw ArityError("arity " + std::to_string(n) + " outside 1.." + std::to_string(kMaxArity));
    }
    return n;
  }

  TruthTable parse_spec() {
    std::string_view head = word();
    if (head == "COMPOSE") {
      expect('(');
      TruthTable outer = parse_spec();
      expect(',');
      TruthTable inner = parse_spec();
      expect(')');
      return compose(outer, inner);
    }
    expect(':');
    if (head == "AND") return families::and_n(arity(word()));
    if (head == "OR") return families::or_n(arity(word()));
    if (head == "XOR") return families::xor_n(arity(word()));
    if (head == "MAJ") return families::maj_n(arity(word()));
    if (head == "CONST") {
      const int n = arity(word());
      expect(':');
      std::string_view b = word();
      if (b != "0" && b != "1") fail("CONST value must be 0 or 1");
      return families::constant(n, b == "1");
    }
    if (std::isdigit(static_cast<unsigned char>(head.front()))) return literal(arity(head), word());
    fail("unknown function family '" + std::string(head) + "'");
  }

  TruthTable literal(int n, std::string_view hex) const {
    TruthTable t(n);
    for (std::size_t k = 0; k < hex.size(); ++k) {
      const char c = static_cast<char>(std::tolower(static_cast<unsigned char>(hex[hex.size() - 1 - k])));
      unsigned digit;
      if (c >= '0' && c <= '9') {
        digit = static_cast<unsigned>(c - '0');
      } else if (c >= 'a' && c <= 'f') {
        digit = static_cast<unsigned>(c - 'a' + 10);
      } else {
        fail("malformed hex digit");
      }
      for (unsigned b = 0; b < 4; ++b) {
        if (!((digit >> b) & 1u)) continue;
        const std::uint64_t idx = 4 * k + b;
        if (idx >= t.size()) fail("hex value longer than 2^" + std::to_string(n) + " bits");
        t.set(static_cast<std::uint32_t>(idx), true);
      }
    }
    return t;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

TruthTable parse_spec(std::string_view text) { return SpecParser(text).parse(); }

}  // namespace clab
