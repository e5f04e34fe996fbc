#include "spbmaxsat/init.hpp"

#include <deque>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "spbmaxsat/indexed_set.hpp"

namespace spbmaxsat {

std::string_view to_string(InitMode mode) {
  return mode == InitMode::decimation ? "decimation" : "random";
}

InitMode parse_init_mode(std::string_view name) {
  if (name == "decimation") return InitMode::decimation;
  if (name == "random") return InitMode::random;
  throw std::invalid_argument("unknown init mode '" + std::string(name) + "'");
}

namespace {

class Decimation {
 public:
  Decimation(const Formula& f, Rng& rng)
      : f_(f),
        rng_(rng),
        result_(f.num_vars()),
        assigned_(f.num_vars() + 1, 0),
        satisfied_(f.num_clauses(), 0),
        free_lits_(f.num_clauses(), 0),
        soft_units_(f.num_clauses()),
        free_vars_(f.num_vars() + 1) {
    for (Var v = 1; v <= f.num_vars(); ++v) free_vars_.insert(v);
    for (ClauseId c = 0; c < f.num_clauses(); ++c) {
      free_lits_[c] = static_cast<std::uint32_t>(f.literals(c).size());
      if (free_lits_[c] == 1) became_unit(c);
    }
  }

  Assignment run() {
    while (!free_vars_.empty()) {
      if (auto c = next_hard_unit()) {
        assign(unit_literal(*c));
      } else if (!soft_units_.empty()) {
        const ClauseId c = soft_units_[rng_.below(soft_units_.size())];
        assign(unit_literal(c));
      } else {
        const Var v = free_vars_[rng_.below(free_vars_.size())];
        assign(Literal{v, rng_.coin()});
      }
    }
    return std::move(result_);
  }

 private:
  void became_unit(ClauseId c) {
    if (f_.is_hard(c)) {
      hard_units_.push_back(c);
    } else {
      soft_units_.insert(c);
    }
  }

  // Queue entries go stale once the clause is satisfied or fully falsified.
  std::optional<ClauseId> next_hard_unit() {
    while (!hard_units_.empty()) {
      const ClauseId c = hard_units_.front();
      hard_units_.pop_front();
      if (!satisfied_[c] && free_lits_[c] == 1) return c;
    }
    return std::nullopt;
  }

  Literal unit_literal(ClauseId c) const {
    for (Literal l : f_.literals(c)) {
      if (!assigned_[l.var]) return l;
    }
    throw std::logic_error("unit clause without a free literal");
  }

  // Makes `lit` true.
  void assign(Literal lit) {
    const Var v = lit.var;
    assigned_[v] = 1;
    free_vars_.erase(v);
    result_.set(v, lit.positive);
    for (ClauseId c : f_.occurrences(lit)) {
      if (satisfied_[c]) continue;
      satisfied_[c] = 1;
      soft_units_.erase(c);
    }
    for (ClauseId c : f_.occurrences(lit.negated())) {
      --free_lits_[c];
      if (satisfied_[c]) continue;
      if (free_lits_[c] == 1) {
        became_unit(c);
      } else if (free_lits_[c] == 0) {
        soft_units_.erase(c);
      }
    }
  }

  const Formula& f_;
  Rng& rng_;
  Assignment result_;
  std::vector<std::uint8_t> assigned_;
  std::vector<std::uint8_t> satisfied_;
  std::vector<std::uint32_t> free_lits_;
  std::deque<ClauseId> hard_units_;
  IndexedSet soft_units_;
  IndexedSet free_vars_;
};

}  // namespace

Assignment decimation_init(const Formula& f, Rng& rng) { return Decimation(f, rng).run(); }

Assignment random_init(const Formula& f, Rng& rng) {
  Assignment a(f.num_vars());
  for (Var v = 1; v <= f.num_vars(); ++v) a.set(v, rng.coin());
  return a;
}

Assignment initial_assignment(const Formula& f, InitMode mode, Rng& rng) {
  return mode == InitMode::decimation ? decimation_init(f, rng) : random_init(f, rng);
}

}  // namespace spbmaxsat
