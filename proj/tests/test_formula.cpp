#include <string>

#include "doctest.h"
#include "spbmaxsat/formula.hpp"
#include "support/random_instance.hpp"

using namespace spbmaxsat;

namespace {

constexpr const char* kF1Old = "p wcnf 2 3 10\n10 1 2 0\n2 -1 0\n5 -2 0\n";
constexpr const char* kF1New = "h 1 2 0\n2 -1 0\n5 -2 0\n";

Assignment bits(const char* s) { return Assignment::from_bitstring(s); }

ParseError::Kind parse_error_kind(const std::string& text) {
  try {
    parse_wcnf(text);
  } catch (const ParseError& e) {
    return e.kind();
  }
  FAIL("expected a parse error for: " << text);
  return ParseError::Kind::invalid_token;
}

}  // namespace

TEST_CASE("old-format WCNF with top weight") {
  const Formula f = parse_wcnf(kF1Old);
  CHECK(f.num_vars() == 2);
  REQUIRE(f.num_hard() == 1);
  REQUIRE(f.num_soft() == 2);
  CHECK(f.hard_clause(0).literals.size() == 2);
  CHECK(f.hard_clause(0).literals[0] == Literal{1, true});
  CHECK(f.hard_clause(0).literals[1] == Literal{2, true});
  CHECK(f.soft_clause(0).weight == 2);
  CHECK(f.soft_clause(0).literals[0] == Literal{1, false});
  CHECK(f.soft_clause(1).weight == 5);
  CHECK(f.soft_clause(1).literals[0] == Literal{2, false});
  CHECK(f.total_soft_weight() == 7);
  CHECK_FALSE(f.is_partial_unweighted());
}

TEST_CASE("new-format WCNF parses to the same formula") {
  CHECK(parse_wcnf(kF1New) == parse_wcnf(kF1Old));
}

TEST_CASE("comments and blank lines are ignored") {
  const Formula f = parse_wcnf("c hello\n\nc p wcnf 9 9 9\nh 1 0\n  \n1 -1 0\n");
  CHECK(f.num_vars() == 1);
  CHECK(f.num_hard() == 1);
  CHECK(f.num_soft() == 1);
  CHECK(f.is_partial_unweighted());
}

TEST_CASE("occurrence index lists every clause per literal") {
  const Formula f = parse_wcnf(kF1Old);
  auto pos1 = f.occurrences({1, true});
  REQUIRE(pos1.size() == 1);
  CHECK(pos1[0] == 0);
  auto neg1 = f.occurrences({1, false});
  REQUIRE(neg1.size() == 1);
  CHECK(neg1[0] == 1);
  auto neg2 = f.occurrences({2, false});
  REQUIRE(neg2.size() == 1);
  CHECK(neg2[0] == 2);
}

TEST_CASE("duplicate literals are merged and tautologies dropped") {
  const Formula f = parse_wcnf("p wcnf 3 4 100\n100 1 1 2 0\n100 1 -1 0\n7 3 -3 0\n4 -2 -2 0\n");
  REQUIRE(f.num_hard() == 1);
  CHECK(f.hard_clause(0).literals.size() == 2);
  REQUIRE(f.num_soft() == 1);
  CHECK(f.soft_clause(0).literals.size() == 1);
  CHECK(f.soft_clause(0).weight == 4);
  // The tautological soft clause's weight is not counted.
  CHECK(f.total_soft_weight() == 4);
}

TEST_CASE("empty clauses") {
  SUBCASE("empty hard clause makes the instance infeasible") {
    const Formula f = parse_wcnf("h 0\n3 1 0\n");
    CHECK(f.trivially_infeasible());
    CHECK(cost(f, bits("1")).is_infinite());
    CHECK(cost(f, bits("0")).is_infinite());
  }
  SUBCASE("empty soft clause is a constant falsified weight") {
    const Formula f = parse_wcnf("4 0\n3 1 0\n");
    CHECK(f.num_soft() == 1);
    CHECK(f.constant_soft_weight() == 4);
    CHECK(f.total_soft_weight() == 7);
    CHECK(obj(f, bits("1")) == 4);
    CHECK(obj(f, bits("0")) == 7);
  }
}

TEST_CASE("header without top reads every clause as soft") {
  const Formula f = parse_wcnf("p wcnf 2 2\n3 1 2 0\n1 -1 0\n");
  CHECK(f.num_hard() == 0);
  CHECK(f.num_soft() == 2);
}

TEST_CASE("malformed inputs raise their designated errors") {
  CHECK(parse_error_kind("p wcnf 1 1 5\n0 1 0\n") == ParseError::Kind::zero_weight);
  CHECK(parse_error_kind("p cnf 1 1\n1 0\n") == ParseError::Kind::malformed_header);
  CHECK(parse_error_kind("p wcnf x 1 5\n") == ParseError::Kind::malformed_header);
  CHECK(parse_error_kind("p wcnf 1 1 5\n5 1 0\np wcnf 1 1 5\n") == ParseError::Kind::malformed_header);
  CHECK(parse_error_kind("p wcnf 2 1 5\n5 1 2\n") == ParseError::Kind::missing_terminator);
  CHECK(parse_error_kind("h 1 2\n") == ParseError::Kind::missing_terminator);
  CHECK(parse_error_kind("p wcnf 2 1 5\n3 1 3 0\n") == ParseError::Kind::variable_out_of_range);
  CHECK(parse_error_kind("3 1 9999999999 0\n") == ParseError::Kind::variable_out_of_range);
  CHECK(parse_error_kind("99999999999999999999 1 0\n") == ParseError::Kind::weight_overflow);
  CHECK(parse_error_kind("9223372036854775807 1 0\n1 2 0\n") == ParseError::Kind::weight_overflow);
  CHECK(parse_error_kind("3 1 a 0\n") == ParseError::Kind::invalid_token);
  CHECK(parse_error_kind("p wcnf 2 1 5\nh 1 0\n") == ParseError::Kind::invalid_token);
  CHECK(parse_error_kind("3 1 0 2\n") == ParseError::Kind::invalid_token);
}

TEST_CASE("parse errors carry the line number") {
  try {
    parse_wcnf("c comment\nh 1 2 0\n2 -1 0\n0 -2 0\n");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 4);
    CHECK(e.kind() == ParseError::Kind::zero_weight);
    CHECK(std::string(e.what()).find("line 4") != std::string::npos);
  }
}

TEST_CASE("obj and cost on the two-variable example") {
  const Formula f = parse_wcnf(kF1Old);
  CHECK(obj(f, bits("10")) == 2);
  CHECK(obj(f, bits("01")) == 5);
  CHECK(cost(f, bits("10")) == Cost{2});
  CHECK(cost(f, bits("00")).is_infinite());
  CHECK(cost(f, bits("11")) == Cost{7});
}

TEST_CASE("obj without soft clauses is 0; cost without hard clauses is obj") {
  const Formula hard_only = parse_wcnf("h 1 2 0\nh -1 0\n");
  CHECK(obj(hard_only, bits("01")) == 0);
  CHECK(obj(hard_only, bits("10")) == 0);
  const Formula soft_only = parse_wcnf("3 1 0\n4 -2 0\n");
  for (const char* a : {"00", "01", "10", "11"}) {
    CHECK(cost(soft_only, bits(a)) == Cost{obj(soft_only, bits(a))});
  }
}

TEST_CASE("Cost ordering treats infinity as the largest value") {
  CHECK(Cost{3} < Cost::infinite());
  CHECK(Cost{3} < Cost{4});
  CHECK(Cost::infinite() == Cost{});
  CHECK_FALSE(Cost::infinite() < Cost::infinite());
  CHECK(Cost{0} != Cost::infinite());
}

TEST_CASE("property: obj plus satisfied soft weight equals the total") {
  Rng rng(7);
  for (int round = 0; round < 100; ++round) {
    const Formula f = testing::random_instance(rng);
    const Assignment a = testing::random_assignment(rng, f.num_vars());
    Weight satisfied = 0;
    bool hard_falsified = false;
    for (ClauseId c = 0; c < f.num_clauses(); ++c) {
      const bool sat = f.clause(c).satisfied_by(a.values());
      if (f.is_hard(c)) {
        hard_falsified |= !sat;
      } else if (sat) {
        satisfied += f.soft_weight(c);
      }
    }
    CHECK(obj(f, a) + satisfied == f.total_soft_weight());
    CHECK(cost(f, a).is_infinite() == hard_falsified);
  }
}

TEST_CASE("property: old and new encodings parse to identical formulas") {
  Rng rng(11);
  for (int round = 0; round < 50; ++round) {
    const Formula f = testing::random_instance(rng);
    const Formula from_old = parse_wcnf(write_wcnf(f, WcnfFormat::old_format));
    const Formula from_new = parse_wcnf(write_wcnf(f, WcnfFormat::new_format));
    CHECK(from_old == f);
    CHECK(from_new == f);
  }
}

TEST_CASE("bitstrings round-trip") {
  const Assignment a = bits("0110");
  CHECK(a.size() == 4);
  CHECK_FALSE(a[1]);
  CHECK(a[2]);
  CHECK(a.to_bitstring() == "0110");
  CHECK_THROWS_AS(Assignment::from_bitstring("01x"), std::invalid_argument);
}
