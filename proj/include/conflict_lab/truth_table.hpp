#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace clab {

/// Largest arity a TruthTable can store. Individual algorithms declare
/// lower caps of their own.
inline constexpr int kMaxArity = 20;

/*
 * Variables are numbered 0..n-1 in the C++ API and x1..xn in every text
 * format. A point x is stored as its index
 *
 *     idx(x) = sum_i x_i * 2^(i-1),
 *
 * so x1 is the least significant bit. The bitstring form of a point lists
 * x1 first: "10" is x1 = 1, x2 = 0, i.e. idx 1.
 */
struct Point {
  std::uint32_t bits = 0;
  int arity = 0;

  bool operator[](int var) const { return (bits >> var) & 1u; }

  /// The point with every variable in `mask` flipped (x^B).
  Point flipped(std::uint32_t mask) const { return {bits ^ mask, arity}; }

  static Point from_string(std::string_view bitstring);
  std::string to_string() const;

  friend bool operator==(const Point&, const Point&) = default;
  friend auto operator<=>(const Point&, const Point&) = default;
};

/// Renders an index set (bit mask over variables) as sorted 1-based indices.
std::vector<int> mask_to_indices(std::uint32_t mask);
std::uint32_t indices_to_mask(const std::vector<int>& one_based);

/// Partial assignment in {0,1,*}^n.
class Subcube {
 public:
  Subcube() = default;
  static Subcube full(int arity);
  /// Fixes every variable in `mask` to its value in `point`.
  static Subcube fixing(const Point& point, std::uint32_t mask);

  int arity() const { return arity_; }
  std::uint32_t fixed_mask() const { return fixed_mask_; }
  std::uint32_t fixed_values() const { return fixed_values_; }
  std::uint32_t free_mask() const;
  int fixed_count() const;
  int free_count() const { return arity_ - fixed_count(); }
  std::uint64_t member_count() const { return std::uint64_t{1} << free_count(); }
  bool is_full() const { return fixed_mask_ == 0; }
  bool is_free(int var) const { return ((fixed_mask_ >> var) & 1u) == 0; }
  bool contains(std::uint32_t point_bits) const {
    return (point_bits & fixed_mask_) == fixed_values_;
  }

  /// Returns a copy with `var` fixed to `value`. Throws DomainError if the
  /// variable is already fixed or out of range.
  Subcube restrict(int var, bool value) const;

  /// Calls `fn(idx)` for every member of the subcube.
  void for_each_member(const std::function<void(std::uint32_t)>& fn) const;

  /// "01*" style rendering, x1 first.
  std::string to_string() const;

  /// Memo key built from the (fixed-mask, fixed-values) pair.
  std::uint64_t key() const {
    return (std::uint64_t{fixed_mask_} << 32) | fixed_values_;
  }

  friend bool operator==(const Subcube&, const Subcube&) = default;

 private:
  Subcube(int arity, std::uint32_t mask, std::uint32_t values)
      : arity_(arity), fixed_mask_(mask), fixed_values_(values) {}

  int arity_ = 0;
  std::uint32_t fixed_mask_ = 0;
  std::uint32_t fixed_values_ = 0;
};

enum class Constancy { kConst0, kConst1, kNonconstant };

/// Bit-packed truth table of a total Boolean function on 1..20 variables.
class TruthTable {
 public:
  TruthTable() = default;
  explicit TruthTable(int arity);  // all-zero table

  static TruthTable from_function(int arity, const std::function<bool(std::uint32_t)>& fn);

  int arity() const { return arity_; }
  std::uint32_t size() const { return std::uint32_t{1} << arity_; }

  bool at(std::uint32_t idx) const { return (words_[idx >> 6] >> (idx & 63)) & 1u; }
  void set(std::uint32_t idx, bool value);

  /// f(x). Throws DomainError when the point's arity differs.
  bool eval(const Point& x) const;

  std::uint32_t count_ones() const;
  bool is_constant() const;

  const std::vector<std::uint64_t>& words() const { return words_; }

  friend bool operator==(const TruthTable&, const TruthTable&) = default;

 private:
  int arity_ = 0;
  std::vector<std::uint64_t> words_;
};

Constancy constant_on(const TruthTable& t, const Subcube& s);

/// (f o g)(x_1..x_nm) = f(g(x_1..x_m), ..., g(x_{(n-1)m+1}..x_nm)).
/// Throws ArityError when n*m exceeds kMaxArity.
TruthTable compose(const TruthTable& outer, const TruthTable& inner);

/// Canonical "n:HEX" form: lowercase, no leading zeros beyond a single digit.
std::string serialize(const TruthTable& t);

/*
 * Function spec grammar:
 *
 *   spec    := family | literal | compose
 *   family  := ("AND" | "OR" | "XOR" | "MAJ") ":" n | "CONST" ":" n ":" ("0"|"1")
 *   literal := n ":" hex           hex = values integer sum f(x) 2^idx(x)
 *   compose := "COMPOSE(" spec "," spec ")"
 *
 * MAJ requires odd n. Whitespace around tokens is ignored.
 */
TruthTable parse_spec(std::string_view text);

namespace families {
TruthTable and_n(int n);
TruthTable or_n(int n);
TruthTable xor_n(int n);
TruthTable maj_n(int n);
TruthTable constant(int n, bool value);
TruthTable identity();
}  // namespace families

}  // namespace clab
