#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "spbmaxsat/formula.hpp"
#include "spbmaxsat/indexed_set.hpp"
#include "spbmaxsat/spb.hpp"

namespace spbmaxsat {

// score(v) must exceed this to count as positive.
inline constexpr double kScoreEpsilon = 1e-9;

struct ScoreView {
  Var var = 0;
  double score = 0.0;
};

// Mutable local-search state over a shared immutable Formula.
//
// Per clause we keep the number of satisfied literals and the XOR of the
// variables satisfying it, which names the unique satisfier whenever the
// count is 1. From these the per-variable scores follow the usual
// make/break contribution rule:
//   count 0 -> every variable of c gains +w (flipping it satisfies c)
//   count 1 -> the unique satisfier gains -w (flipping it falsifies c)
// Hard clauses feed hscore with their dynamic weight; soft clauses feed
// softdelta with their original integer weight. score(v) is assembled at
// read time as hscore[v] + w(SPB) * softdelta[v].
//
// The set of variables with positive score is maintained exactly on every
// score change. A positive score needs hscore > 0 or softdelta > 0, so
// only variables of falsified clauses can ever be members.
class SearchState {
 public:
  // `hard_weights` empty means every w_h(c) = 1.
  SearchState(const Formula& formula, Assignment assignment, std::vector<double> hard_weights = {},
              SpbConstraint spb = {});

  // Builds every derived field straight from the definitions (clause scans
  // before and after a hypothetical flip), independent of the counters
  // used by the incremental path. Test oracle.
  static SearchState recompute_from_scratch(const Formula& formula, const Assignment& assignment,
                                            std::span<const double> hard_weights,
                                            const SpbConstraint& spb);

  const Formula& formula() const { return *formula_; }
  const Assignment& assignment() const { return assignment_; }
  std::uint64_t step() const { return step_; }

  Weight current_obj() const { return current_obj_; }
  bool feasible() const { return falsified_hard_.empty() && !formula_->trivially_infeasible(); }
  Cost current_cost() const { return feasible() ? Cost{current_obj_} : Cost::infinite(); }

  std::span<const double> hard_weights() const { return hard_weight_; }
  double hard_weight(ClauseId c) const { return hard_weight_[c]; }
  double max_hard_weight() const { return max_hard_weight_; }
  const SpbConstraint& spb() const { return spb_; }

  double hscore(Var v) const { return hscore_[v]; }
  std::int64_t softdelta(Var v) const { return softdelta_[v]; }
  double spbscore(Var v) const { return spb_.weight * static_cast<double>(softdelta_[v]); }
  double score(Var v) const { return hscore_[v] + spbscore(v); }
  ScoreView score_view(Var v) const { return {v, score(v)}; }

  std::uint32_t sat_count(ClauseId c) const { return sat_count_[c]; }
  // Clause ids of falsified hard / soft clauses.
  const IndexedSet& falsified_hard() const { return falsified_hard_; }
  const IndexedSet& falsified_soft() const { return falsified_soft_; }
  // Variables with score > kScoreEpsilon.
  const IndexedSet& positive_vars() const { return positive_; }

  // Flips v and updates every derived field; cost proportional to the
  // total length of the clauses containing v.
  void flip(Var v);

  // w_h(c) += delta for hard clause c.
  void add_hard_weight(ClauseId c, double delta);
  void set_spb_weight(double weight);
  void set_spb_bound(Cost bound) { spb_.bound = bound; }
  // Every dynamic weight w := max(floor, w * factor); scores rebuilt.
  void rescale_weights(double factor, double floor);

  // First field on which two states over the same formula disagree, if
  // any. Counters and sets compare exactly, hscore within `tolerance`.
  static std::optional<std::string> first_difference(const SearchState& a, const SearchState& b,
                                                     double tolerance);

 private:
  SearchState() = default;

  void init_counts();
  void rebuild_scores();
  void refresh_positive(Var v);
  void refresh_falsified_clause_vars();
  void add_contribution(ClauseId c, Var v, double hard_w, std::int64_t soft_w) {
    if (formula_->is_hard(c)) {
      hscore_[v] += hard_w;
    } else {
      softdelta_[v] += soft_w;
    }
  }

  const Formula* formula_ = nullptr;
  Assignment assignment_;
  std::uint64_t step_ = 0;
  std::vector<double> hard_weight_;
  double max_hard_weight_ = 1.0;
  SpbConstraint spb_;
  Weight current_obj_ = 0;
  std::vector<std::uint32_t> sat_count_;
  std::vector<Var> sat_xor_;
  IndexedSet falsified_hard_;
  IndexedSet falsified_soft_;
  std::vector<double> hscore_;
  std::vector<std::int64_t> softdelta_;
  IndexedSet positive_;
};

}  // namespace spbmaxsat
