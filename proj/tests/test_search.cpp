#include "doctest.h"
#include "spbmaxsat/oracle.hpp"
#include "spbmaxsat/search.hpp"
#include "support/random_instance.hpp"

using namespace spbmaxsat;

namespace {

const Formula& f1() {
  static const Formula f = parse_wcnf("h 1 2 0\n2 -1 0\n5 -2 0\n");
  return f;
}

SolverConfig flips(std::uint64_t n, std::uint64_t seed = 1) {
  SolverConfig cfg;
  cfg.max_flips = n;
  cfg.seed = seed;
  return cfg;
}

}  // namespace

TEST_CASE("F1 reaches its optimum for every seed") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const SolveResult r = solve(f1(), flips(10000, seed));
    CHECK(r.best_cost == Cost{2});
    REQUIRE(r.best_assignment);
    CHECK(r.best_assignment->to_bitstring() == "10");
  }
}

TEST_CASE("contradictory hard units never yield a feasible assignment") {
  const Formula f = parse_wcnf("h 1 0\nh -1 0\n3 1 2 0\n");
  const SolveResult r = solve(f, flips(5000));
  CHECK(r.best_cost.is_infinite());
  CHECK_FALSE(r.best_assignment);
  CHECK(r.trace.empty());
  CHECK(r.flips == 5000);
}

TEST_CASE("an empty hard clause stops the search at once") {
  const Formula f = parse_wcnf("h 0\n3 1 0\n");
  const SolveResult r = solve(f, flips(5000));
  CHECK(r.termination == Termination::infeasible_instance);
  CHECK(r.flips == 0);
}

TEST_CASE("satisfiable hard part without soft clauses gives cost 0") {
  const Formula f = parse_wcnf("h 1 2 0\nh -1 3 0\nh -3 -2 0\n");
  const SolveResult r = solve(f, flips(5000));
  CHECK(r.best_cost == Cost{0});
  CHECK(r.termination == Termination::optimum);
}

TEST_CASE("empty soft clauses bound the optimum from below") {
  const Formula f = parse_wcnf("4 0\nh 1 0\n");
  const SolveResult r = solve(f, flips(5000));
  CHECK(r.best_cost == Cost{4});
  CHECK(r.termination == Termination::optimum);
}

TEST_CASE("bms_pick") {
  SUBCASE("single candidate") {
    const Formula f = parse_wcnf("5 1 0\n2 -2 0\n");
    const SearchState s(f, Assignment::from_bitstring("00"));
    REQUIRE(s.positive_vars().size() == 1);
    for (std::uint32_t k : {1u, 2u, 97u}) {
      Rng rng(k);
      CHECK(bms_pick(s, k, rng) == 1);
    }
  }
  SUBCASE("k = 64 always finds the better of two") {
    const Formula f = parse_wcnf("5 1 0\n2 2 0\n");
    const SearchState s(f, Assignment::from_bitstring("00"));
    REQUIRE(s.score(1) == 5.0);
    REQUIRE(s.score(2) == 2.0);
    Rng rng(8);
    for (int i = 0; i < 1000; ++i) CHECK(bms_pick(s, 64, rng) == 1);
  }
  SUBCASE("k = 1 samples uniformly") {
    const Formula f = parse_wcnf("5 1 0\n2 2 0\n");
    const SearchState s(f, Assignment::from_bitstring("00"));
    Rng rng(9);
    int first = 0;
    for (int i = 0; i < 4000; ++i) first += bms_pick(s, 1, rng) == 1;
    CHECK(first > 1800);
    CHECK(first < 2200);
  }
  SUBCASE("equal scores prefer the older flip, then the lower id") {
    const Formula f = parse_wcnf("3 1 0\n3 2 0\n3 3 0\n");
    SearchState s(f, Assignment::from_bitstring("000"));
    Rng rng(10);
    CHECK(bms_pick(s, 200, rng) == 1);
    s.flip(1);
    s.flip(1);
    CHECK(bms_pick(s, 200, rng) == 2);
  }
  SUBCASE("empty candidate set is a caller error") {
    const Formula f = parse_wcnf("5 -1 0\n");
    const SearchState s(f, Assignment::from_bitstring("0"));
    Rng rng(1);
    CHECK_THROWS_AS(bms_pick(s, 4, rng), std::logic_error);
  }
}

TEST_CASE("pick_from_falsified") {
  SUBCASE("hard clause first, best-scoring variable") {
    // hscore 1 each; soft (x1,2) gains, soft (-x2,2) loses.
    const Formula f = parse_wcnf("h 1 2 0\n2 -2 0\n2 1 0\n");
    const SearchState s(f, Assignment::from_bitstring("00"));
    REQUIRE(s.score(1) == 3.0);
    REQUIRE(s.score(2) == -1.0);
    Rng rng(1);
    CHECK(pick_from_falsified(s, rng) == Var{1});
  }
  SUBCASE("soft clause when every hard clause holds") {
    const Formula f = parse_wcnf("h 1 2 0\n3 -7 0\n");
    const SearchState s(f, Assignment::from_bitstring("1000001"));
    Rng rng(1);
    CHECK(pick_from_falsified(s, rng) == Var{7});
  }
  SUBCASE("nothing falsified") {
    const Formula f = parse_wcnf("h 1 2 0\n3 -2 0\n");
    const SearchState s(f, Assignment::from_bitstring("10"));
    Rng rng(1);
    CHECK_FALSE(pick_from_falsified(s, rng));
  }
}

TEST_CASE("preset resolution") {
  const Formula pms = parse_wcnf("h 1 2 0\n1 -1 0\n1 -2 0\n");
  const ResolvedConfig rp = resolve_config(flips(1), pms);
  CHECK(rp.preset == Preset::pms);
  CHECK(rp.k == 53);
  CHECK(rp.weighting.h_inc == 1.0);
  CHECK(rp.weighting.delta == 1.00072);

  const ResolvedConfig rw = resolve_config(flips(1), f1());
  CHECK(rw.preset == Preset::wpms);
  CHECK(rw.k == 97);
  CHECK(rw.weighting.h_inc == 28.0);
  CHECK(rw.weighting.delta == 1.001);

  SolverConfig cfg = flips(1);
  cfg.preset = Preset::pms;
  cfg.k = 7;
  const ResolvedConfig forced = resolve_config(cfg, f1());
  CHECK(forced.preset == Preset::pms);
  CHECK(forced.k == 7);
  CHECK(forced.weighting.delta == 1.00072);
}

TEST_CASE("config validation") {
  SolverConfig cfg;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.cutoff_seconds = 0.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.cutoff_seconds = 1.0;
  CHECK_NOTHROW(cfg.validate());
  cfg.k = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("SPB lifecycle under stepping") {
  Rng gen(101);
  for (int round = 0; round < 20; ++round) {
    const Formula f = testing::random_instance(gen);
    LocalSearch ls(f, flips(3000, static_cast<std::uint64_t>(round) + 1));
    std::size_t seen = ls.trace().size();
    for (int i = 0; i < 3000; ++i) {
      const auto kind = ls.step();
      if (ls.best_cost().is_infinite()) {
        CHECK(ls.state().spb().weight == 1.0);
        CHECK(ls.state().spb().bound.is_infinite());
      } else {
        CHECK(ls.state().spb().bound == ls.best_cost());
      }
      if (kind == LocalSearch::StepKind::greedy) CHECK(ls.last_greedy_score() > kScoreEpsilon);
      if (kind == LocalSearch::StepKind::optimal) break;
      if (ls.trace().size() != seen) {
        REQUIRE(ls.best_assignment());
        CHECK(cost(f, *ls.best_assignment()) == ls.best_cost());
        seen = ls.trace().size();
      }
    }
    for (std::size_t i = 1; i < ls.trace().size(); ++i) {
      CHECK(ls.trace()[i].cost < ls.trace()[i - 1].cost);
      CHECK(ls.trace()[i].step > ls.trace()[i - 1].step);
    }
  }
}

TEST_CASE("the improvement callback replays the whole trace") {
  Rng gen(5);
  const Formula f = testing::random_instance(gen);
  std::vector<Improvement> got;
  const SolveResult r = solve(f, flips(2000), [&](const Improvement& imp) { got.push_back(imp); });
  CHECK(got == r.trace);
  if (!r.trace.empty()) CHECK(Cost{r.trace.back().cost} == r.best_cost);
}

TEST_CASE("same seed, same flips, same trajectory") {
  Rng gen(6);
  for (int round = 0; round < 10; ++round) {
    const Formula f = testing::random_instance(gen);
    const SolveResult a = solve(f, flips(5000, 42));
    const SolveResult b = solve(f, flips(5000, 42));
    CHECK(a.best_cost == b.best_cost);
    CHECK(a.flips == b.flips);
    CHECK(a.weighting_events == b.weighting_events);
    REQUIRE(a.trace.size() == b.trace.size());
    for (std::size_t i = 0; i < a.trace.size(); ++i) {
      CHECK(a.trace[i].step == b.trace[i].step);
      CHECK(a.trace[i].cost == b.trace[i].cost);
    }
  }
}

TEST_CASE("time-limited runs stop") {
  Rng gen(7);
  const Formula f = testing::random_instance(gen);
  SolverConfig cfg;
  cfg.cutoff_seconds = 0.05;
  const SolveResult r = solve(f, cfg);
  CHECK((r.termination == Termination::time || r.termination == Termination::optimum));
  CHECK(r.seconds < 5.0);
}

TEST_CASE("best cost never beats the exact optimum") {
  Rng gen(8);
  for (int round = 0; round < 30; ++round) {
    const Formula f = testing::random_instance(gen);
    const SolveResult r = solve(f, flips(2000));
    CHECK_FALSE(r.best_cost < brute_force_opt(f).optimum);
  }
}
