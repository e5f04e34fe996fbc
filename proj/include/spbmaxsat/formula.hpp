#pragma once

#include <cstddef>
#include <initializer_list>
#include <istream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "spbmaxsat/types.hpp"

namespace spbmaxsat {

// Read-only view of one clause stored in a Formula.
struct ClauseView {
  std::span<const Literal> literals;
  ClauseKind kind = ClauseKind::hard;
  Weight weight = 0;  // original soft weight, 0 for hard clauses

  bool is_hard() const { return kind == ClauseKind::hard; }
  bool satisfied_by(std::span<const std::uint8_t> values) const;
};

class Assignment;

// Immutable weighted partial MaxSAT instance.
//
// Clause ids are dense: hard clauses occupy [0, num_hard()), soft clauses
// [num_hard(), num_clauses()), each group in input order. Every stored
// clause is non-empty, has no repeated variable and is not a tautology.
class Formula {
 public:
  Formula() = default;

  std::size_t num_vars() const { return num_vars_; }
  std::size_t num_hard() const { return num_hard_; }
  std::size_t num_soft() const { return clauses_.size() - num_hard_; }
  std::size_t num_clauses() const { return clauses_.size(); }

  bool is_hard(ClauseId c) const { return c < num_hard_; }
  ClauseView clause(ClauseId c) const;
  ClauseView hard_clause(std::size_t i) const { return clause(static_cast<ClauseId>(i)); }
  ClauseView soft_clause(std::size_t i) const {
    return clause(static_cast<ClauseId>(num_hard_ + i));
  }
  std::span<const Literal> literals(ClauseId c) const {
    const auto& info = clauses_[c];
    return {literal_pool_.data() + info.offset, info.size};
  }
  Weight soft_weight(ClauseId c) const { return clauses_[c].weight; }

  // Clauses containing literal `lit`.
  std::span<const ClauseId> occurrences(Literal lit) const {
    const auto code = lit.code();
    return {occurrence_pool_.data() + occurrence_offset_[code],
            occurrence_offset_[code + 1] - occurrence_offset_[code]};
  }

  // Sum of soft weights, including the weight of empty soft clauses.
  Weight total_soft_weight() const { return total_soft_weight_; }
  // Weight of empty soft clauses: falsified under every assignment.
  Weight constant_soft_weight() const { return constant_soft_weight_; }
  // An empty hard clause was read; no assignment is feasible.
  bool trivially_infeasible() const { return trivially_infeasible_; }
  // Every soft weight equals 1 (vacuously true without soft clauses).
  bool is_partial_unweighted() const { return unit_weights_; }

  friend bool operator==(const Formula&, const Formula&) = default;

 private:
  friend class FormulaBuilder;

  struct ClauseInfo {
    std::uint32_t offset = 0;
    std::uint32_t size = 0;
    Weight weight = 0;
    friend bool operator==(const ClauseInfo&, const ClauseInfo&) = default;
  };

  std::size_t num_vars_ = 0;
  std::size_t num_hard_ = 0;
  std::vector<Literal> literal_pool_;
  std::vector<ClauseInfo> clauses_;
  std::vector<std::uint32_t> occurrence_offset_ = {0, 0, 0};
  std::vector<ClauseId> occurrence_pool_;
  Weight total_soft_weight_ = 0;
  Weight constant_soft_weight_ = 0;
  bool trivially_infeasible_ = false;
  bool unit_weights_ = true;
};

// Raised by FormulaBuilder on invalid clause data.
class FormulaError : public std::invalid_argument {
 public:
  enum class Kind { variable_out_of_range, zero_weight, weight_overflow };
  FormulaError(Kind kind, const std::string& what) : std::invalid_argument(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// Collects clauses, normalizes them and produces a Formula.
// Duplicate literals are merged; tautologies are dropped (a dropped soft
// tautology does not contribute to the total soft weight).
class FormulaBuilder {
 public:
  // num_vars == 0 with `grow_vars` lets the variable count follow the
  // largest index seen (new-format WCNF).
  explicit FormulaBuilder(std::size_t num_vars = 0, bool grow_vars = true)
      : num_vars_(num_vars), grow_vars_(grow_vars) {}

  void add_hard(std::span<const Literal> lits);
  void add_soft(Weight weight, std::span<const Literal> lits);
  void add_hard(std::initializer_list<Literal> lits) { add_hard(std::span(lits.begin(), lits.size())); }
  void add_soft(Weight weight, std::initializer_list<Literal> lits) {
    add_soft(weight, std::span(lits.begin(), lits.size()));
  }

  Formula build() const;

 private:
  // Returns false for tautologies.
  bool normalize(std::span<const Literal> lits, std::vector<Literal>& out);

  std::size_t num_vars_;
  bool grow_vars_;
  std::vector<std::vector<Literal>> hard_;
  std::vector<std::pair<Weight, std::vector<Literal>>> soft_;
  Weight total_soft_weight_ = 0;
  Weight constant_soft_weight_ = 0;
  bool trivially_infeasible_ = false;
  bool unit_weights_ = true;
  std::vector<std::int8_t> seen_;
};

class ParseError : public std::runtime_error {
 public:
  enum class Kind {
    malformed_header,
    invalid_token,
    missing_terminator,
    variable_out_of_range,
    zero_weight,
    weight_overflow,
  };
  ParseError(Kind kind, std::size_t line, const std::string& detail);
  Kind kind() const { return kind_; }
  std::size_t line() const { return line_; }

 private:
  Kind kind_;
  std::size_t line_;
};

std::string_view to_string(ParseError::Kind kind);

enum class WcnfFormat { old_format, new_format };

// Parses old ("p wcnf nv nc top") or new (MSE 2022+, "h ..." hard lines)
// WCNF; the format is detected by the presence of the header line.
Formula parse_wcnf(std::istream& in);
Formula parse_wcnf(std::string_view text);
Formula parse_wcnf_file(const std::string& path);

// Serializes `f` in the requested format. Clauses dropped during
// normalization are not reproduced.
std::string write_wcnf(const Formula& f, WcnfFormat format);

// Complete 0/1 valuation plus per-variable last-flip stamps.
class Assignment {
 public:
  Assignment() = default;
  explicit Assignment(std::size_t num_vars) : values_(num_vars + 1, 0), flip_stamp_(num_vars + 1, 0) {}

  std::size_t size() const { return values_.empty() ? 0 : values_.size() - 1; }

  bool operator[](Var v) const { return values_[v] != 0; }
  void set(Var v, bool value) { values_[v] = value ? 1 : 0; }
  void flip(Var v, std::uint64_t step) {
    values_[v] ^= 1;
    flip_stamp_[v] = step;
  }
  std::uint64_t flip_stamp(Var v) const { return flip_stamp_[v]; }

  // Indexed by variable; entry 0 is unused.
  std::span<const std::uint8_t> values() const { return values_; }

  // One '0'/'1' character per variable in index order.
  std::string to_bitstring() const;
  static Assignment from_bitstring(std::string_view bits);

  // Values only; flip stamps are bookkeeping.
  bool same_values(const Assignment& other) const { return values_ == other.values_; }

 private:
  std::vector<std::uint8_t> values_;
  std::vector<std::uint64_t> flip_stamp_;
};

// Total weight of soft clauses falsified by `a`.
Weight obj(const Formula& f, const Assignment& a);
bool is_feasible(const Formula& f, const Assignment& a);
// obj(f, a) when every hard clause holds, infinite otherwise.
Cost cost(const Formula& f, const Assignment& a);

}  // namespace spbmaxsat
