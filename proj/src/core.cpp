#include "spbmaxsat/core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace spbmaxsat {

SearchState::SearchState(const Formula& formula, Assignment assignment, std::vector<double> hard_weights,
                         SpbConstraint spb)
    : formula_(&formula), assignment_(std::move(assignment)), hard_weight_(std::move(hard_weights)), spb_(spb) {
  if (assignment_.size() != formula.num_vars()) {
    throw std::invalid_argument("assignment size does not match the formula");
  }
  if (hard_weight_.empty()) hard_weight_.assign(formula.num_hard(), 1.0);
  if (hard_weight_.size() != formula.num_hard()) {
    throw std::invalid_argument("one dynamic weight per hard clause expected");
  }
  max_hard_weight_ = 1.0;
  for (double w : hard_weight_) max_hard_weight_ = std::max(max_hard_weight_, w);
  init_counts();
  rebuild_scores();
}

void SearchState::init_counts() {
  const Formula& f = *formula_;
  sat_count_.assign(f.num_clauses(), 0);
  sat_xor_.assign(f.num_clauses(), 0);
  falsified_hard_.reset(f.num_hard());
  falsified_soft_.reset(f.num_clauses());
  current_obj_ = f.constant_soft_weight();
  for (ClauseId c = 0; c < f.num_clauses(); ++c) {
    for (Literal l : f.literals(c)) {
      if (l.satisfied_by(assignment_[l.var])) {
        ++sat_count_[c];
        sat_xor_[c] ^= l.var;
      }
    }
    if (sat_count_[c] == 0) {
      if (f.is_hard(c)) {
        falsified_hard_.insert(c);
      } else {
        falsified_soft_.insert(c);
        current_obj_ += f.soft_weight(c);
      }
    }
  }
}

void SearchState::rebuild_scores() {
  const Formula& f = *formula_;
  hscore_.assign(f.num_vars() + 1, 0.0);
  softdelta_.assign(f.num_vars() + 1, 0);
  for (ClauseId c = 0; c < f.num_clauses(); ++c) {
    const double hw = f.is_hard(c) ? hard_weight_[c] : 0.0;
    const auto sw = static_cast<std::int64_t>(f.soft_weight(c));
    if (sat_count_[c] == 0) {
      for (Literal l : f.literals(c)) add_contribution(c, l.var, hw, sw);
    } else if (sat_count_[c] == 1) {
      add_contribution(c, sat_xor_[c], -hw, -sw);
    }
  }
  positive_.reset(f.num_vars() + 1);
  for (Var v = 1; v <= f.num_vars(); ++v) refresh_positive(v);
}

void SearchState::refresh_positive(Var v) {
  if (score(v) > kScoreEpsilon) {
    positive_.insert(v);
  } else {
    positive_.erase(v);
  }
}

void SearchState::refresh_falsified_clause_vars() {
  for (std::size_t i = positive_.size(); i-- > 0;) refresh_positive(positive_[i]);
  for (const IndexedSet* set : {&falsified_hard_, &falsified_soft_}) {
    for (ClauseId c : set->items()) {
      for (Literal l : formula_->literals(c)) refresh_positive(l.var);
    }
  }
}

void SearchState::flip(Var v) {
  const Formula& f = *formula_;
  ++step_;
  assignment_.flip(v, step_);
  const bool value = assignment_[v];
  const Literal made_true{v, value};
  const Literal made_false{v, !value};

  for (ClauseId c : f.occurrences(made_true)) {
    const bool hard = f.is_hard(c);
    const double hw = hard ? hard_weight_[c] : 0.0;
    const auto sw = static_cast<std::int64_t>(f.soft_weight(c));
    if (sat_count_[c] == 0) {
      // Falsified -> satisfied only by v: nobody makes it any more, v breaks it.
      for (Literal l : f.literals(c)) {
        add_contribution(c, l.var, -hw, -sw);
        refresh_positive(l.var);
      }
      add_contribution(c, v, -hw, -sw);
      if (hard) {
        falsified_hard_.erase(c);
      } else {
        falsified_soft_.erase(c);
        current_obj_ -= f.soft_weight(c);
      }
    } else if (sat_count_[c] == 1) {
      // The former unique satisfier no longer breaks c.
      const Var s = sat_xor_[c];
      add_contribution(c, s, hw, sw);
      refresh_positive(s);
    }
    ++sat_count_[c];
    sat_xor_[c] ^= v;
  }

  for (ClauseId c : f.occurrences(made_false)) {
    const bool hard = f.is_hard(c);
    const double hw = hard ? hard_weight_[c] : 0.0;
    const auto sw = static_cast<std::int64_t>(f.soft_weight(c));
    --sat_count_[c];
    sat_xor_[c] ^= v;
    if (sat_count_[c] == 0) {
      // v was the unique satisfier: it no longer breaks c, everyone makes it.
      add_contribution(c, v, hw, sw);
      for (Literal l : f.literals(c)) {
        add_contribution(c, l.var, hw, sw);
        refresh_positive(l.var);
      }
      if (hard) {
        falsified_hard_.insert(c);
      } else {
        falsified_soft_.insert(c);
        current_obj_ += f.soft_weight(c);
      }
    } else if (sat_count_[c] == 1) {
      const Var s = sat_xor_[c];
      add_contribution(c, s, -hw, -sw);
      refresh_positive(s);
    }
  }
  refresh_positive(v);
}

void SearchState::add_hard_weight(ClauseId c, double delta) {
  hard_weight_[c] += delta;
  max_hard_weight_ = std::max(max_hard_weight_, hard_weight_[c]);
  if (sat_count_[c] == 0) {
    for (Literal l : formula_->literals(c)) {
      hscore_[l.var] += delta;
      refresh_positive(l.var);
    }
  } else if (sat_count_[c] == 1) {
    const Var s = sat_xor_[c];
    hscore_[s] -= delta;
    refresh_positive(s);
  }
}

void SearchState::set_spb_weight(double weight) {
  if (weight == spb_.weight) return;
  spb_.weight = weight;
  refresh_falsified_clause_vars();
}

void SearchState::rescale_weights(double factor, double floor) {
  max_hard_weight_ = floor;
  for (double& w : hard_weight_) {
    w = std::max(floor, w * factor);
    max_hard_weight_ = std::max(max_hard_weight_, w);
  }
  spb_.weight = std::max(floor, spb_.weight * factor);
  rebuild_scores();
}

SearchState SearchState::recompute_from_scratch(const Formula& formula, const Assignment& assignment,
                                                std::span<const double> hard_weights,
                                                const SpbConstraint& spb) {
  const Formula& f = formula;
  SearchState s;
  s.formula_ = &formula;
  s.assignment_ = assignment;
  s.hard_weight_.assign(hard_weights.begin(), hard_weights.end());
  if (s.hard_weight_.empty()) s.hard_weight_.assign(f.num_hard(), 1.0);
  s.max_hard_weight_ = 1.0;
  for (double w : s.hard_weight_) s.max_hard_weight_ = std::max(s.max_hard_weight_, w);
  s.spb_ = spb;
  s.current_obj_ = obj(f, assignment);

  std::vector<std::uint8_t> values(assignment.values().begin(), assignment.values().end());
  s.sat_count_.assign(f.num_clauses(), 0);
  s.sat_xor_.assign(f.num_clauses(), 0);
  s.falsified_hard_.reset(f.num_hard());
  s.falsified_soft_.reset(f.num_clauses());
  s.hscore_.assign(f.num_vars() + 1, 0.0);
  s.softdelta_.assign(f.num_vars() + 1, 0);

  for (ClauseId c = 0; c < f.num_clauses(); ++c) {
    const ClauseView clause = f.clause(c);
    for (Literal l : clause.literals) {
      if (l.satisfied_by(values[l.var] != 0)) {
        ++s.sat_count_[c];
        s.sat_xor_[c] ^= l.var;
      }
    }
    const bool sat_now = clause.satisfied_by(values);
    if (!sat_now) {
      if (f.is_hard(c)) {
        s.falsified_hard_.insert(c);
      } else {
        s.falsified_soft_.insert(c);
      }
    }
    // hscore / softdelta by definition: decrease in falsified weight when v flips.
    for (Literal l : clause.literals) {
      values[l.var] ^= 1;
      const bool sat_after = clause.satisfied_by(values);
      values[l.var] ^= 1;
      const int change = static_cast<int>(sat_after) - static_cast<int>(sat_now);
      if (f.is_hard(c)) {
        s.hscore_[l.var] += change * s.hard_weight_[c];
      } else {
        s.softdelta_[l.var] += change * static_cast<std::int64_t>(clause.weight);
      }
    }
  }
  s.positive_.reset(f.num_vars() + 1);
  for (Var v = 1; v <= f.num_vars(); ++v) {
    if (s.score(v) > kScoreEpsilon) s.positive_.insert(v);
  }
  return s;
}

namespace {

std::vector<std::uint32_t> sorted_items(const IndexedSet& set) {
  std::vector<std::uint32_t> items(set.items().begin(), set.items().end());
  std::sort(items.begin(), items.end());
  return items;
}

}  // namespace

std::optional<std::string> SearchState::first_difference(const SearchState& a, const SearchState& b,
                                                          double tolerance) {
  std::ostringstream msg;
  if (!a.assignment_.same_values(b.assignment_)) return "assignment";
  if (a.current_obj_ != b.current_obj_) {
    msg << "current_obj " << a.current_obj_ << " vs " << b.current_obj_;
    return msg.str();
  }
  if (a.spb_ != b.spb_) return "spb constraint";
  if (a.hard_weight_ != b.hard_weight_) return "hard weights";
  for (ClauseId c = 0; c < a.sat_count_.size(); ++c) {
    if (a.sat_count_[c] != b.sat_count_[c]) {
      msg << "sat_count[" << c << "] " << a.sat_count_[c] << " vs " << b.sat_count_[c];
      return msg.str();
    }
    if (a.sat_count_[c] == 1 && a.sat_xor_[c] != b.sat_xor_[c]) {
      msg << "unique satisfier of clause " << c;
      return msg.str();
    }
  }
  if (sorted_items(a.falsified_hard_) != sorted_items(b.falsified_hard_)) return "falsified_hard";
  if (sorted_items(a.falsified_soft_) != sorted_items(b.falsified_soft_)) return "falsified_soft";
  for (Var v = 1; v < a.hscore_.size(); ++v) {
    if (std::abs(a.hscore_[v] - b.hscore_[v]) > tolerance) {
      msg << "hscore[" << v << "] " << a.hscore_[v] << " vs " << b.hscore_[v];
      return msg.str();
    }
    if (a.softdelta_[v] != b.softdelta_[v]) {
      msg << "softdelta[" << v << "] " << a.softdelta_[v] << " vs " << b.softdelta_[v];
      return msg.str();
    }
  }
  if (sorted_items(a.positive_) != sorted_items(b.positive_)) return "positive-score set";
  return std::nullopt;
}

}  // namespace spbmaxsat
