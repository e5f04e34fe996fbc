#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <ostream>
#include <string>

namespace spbmaxsat {

using Var = std::uint32_t;       // 1-based variable index
using ClauseId = std::uint32_t;  // hard clauses first, then soft clauses
using Weight = std::uint64_t;    // original soft weights, obj values

// Largest admissible total soft weight; keeps every sum of soft weights
// (and their signed differences) representable in int64.
inline constexpr Weight kMaxTotalSoftWeight =
    static_cast<Weight>(std::numeric_limits<std::int64_t>::max());

struct Literal {
  Var var = 0;
  bool positive = true;

  constexpr Literal negated() const { return {var, !positive}; }
  // Dense code: 2*var for x, 2*var+1 for not-x.
  constexpr std::uint32_t code() const { return 2 * var + (positive ? 0u : 1u); }
  constexpr bool satisfied_by(bool value) const { return value == positive; }

  static constexpr Literal from_dimacs(std::int64_t lit) {
    return lit > 0 ? Literal{static_cast<Var>(lit), true}
                   : Literal{static_cast<Var>(-lit), false};
  }
  constexpr std::int64_t to_dimacs() const {
    return positive ? static_cast<std::int64_t>(var) : -static_cast<std::int64_t>(var);
  }

  friend constexpr bool operator==(Literal, Literal) = default;
  friend constexpr auto operator<=>(Literal, Literal) = default;
};

enum class ClauseKind : std::uint8_t { hard, soft };

// A weight that may be +infinity, used for cost(A) and SPB bounds.
class Cost {
 public:
  constexpr Cost() = default;  // infinite
  constexpr explicit Cost(Weight value) : value_(value), finite_(true) {}

  static constexpr Cost infinite() { return Cost{}; }

  constexpr bool is_finite() const { return finite_; }
  constexpr bool is_infinite() const { return !finite_; }
  // Precondition: is_finite().
  constexpr Weight value() const { return value_; }

  friend constexpr bool operator==(const Cost& a, const Cost& b) {
    return a.finite_ == b.finite_ && (!a.finite_ || a.value_ == b.value_);
  }
  friend constexpr std::strong_ordering operator<=>(const Cost& a, const Cost& b) {
    if (a.finite_ != b.finite_) {
      return a.finite_ ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    if (!a.finite_) return std::strong_ordering::equal;
    return a.value_ <=> b.value_;
  }

  std::string to_string() const { return finite_ ? std::to_string(value_) : "inf"; }
  friend std::ostream& operator<<(std::ostream& os, const Cost& c) { return os << c.to_string(); }

 private:
  Weight value_ = 0;
  bool finite_ = false;
};

}  // namespace spbmaxsat
