#include "spbmaxsat/oracle.hpp"

#include <algorithm>
#include <cstdint>
#include <thread>
#include <vector>

namespace spbmaxsat {

namespace {

struct MaskClause {
  std::uint32_t pos = 0;  // variables appearing positively
  std::uint32_t neg = 0;  // variables appearing negatively
  Weight weight = 0;
  bool satisfied(std::uint32_t bits) const { return ((bits & pos) | (~bits & neg)) != 0; }
};

struct Best {
  Weight cost = 0;
  std::uint64_t bits = 0;
  bool found = false;
};

Best scan(const std::vector<MaskClause>& hard, const std::vector<MaskClause>& soft, Weight base,
          std::uint64_t begin, std::uint64_t end) {
  Best best;
  for (std::uint64_t bits = begin; bits < end; ++bits) {
    const auto b = static_cast<std::uint32_t>(bits);
    bool feasible = true;
    for (const auto& c : hard) {
      if (!c.satisfied(b)) {
        feasible = false;
        break;
      }
    }
    if (!feasible) continue;
    Weight cost = base;
    for (const auto& c : soft) {
      if (!c.satisfied(b)) cost += c.weight;
    }
    if (!best.found || cost < best.cost) best = {cost, bits, true};
  }
  return best;
}

MaskClause to_mask(const ClauseView& c) {
  MaskClause m;
  m.weight = c.weight;
  for (Literal l : c.literals) {
    const std::uint32_t bit = std::uint32_t{1} << (l.var - 1);
    (l.positive ? m.pos : m.neg) |= bit;
  }
  return m;
}

}  // namespace

OracleResult brute_force_opt(const Formula& f) {
  const std::size_t n = f.num_vars();
  if (n > kOracleMaxVars) {
    throw OracleLimitError("brute force limited to " + std::to_string(kOracleMaxVars) + " variables, got " +
                           std::to_string(n));
  }
  OracleResult result;
  if (f.trivially_infeasible()) return result;

  std::vector<MaskClause> hard, soft;
  for (std::size_t i = 0; i < f.num_hard(); ++i) hard.push_back(to_mask(f.hard_clause(i)));
  for (std::size_t i = 0; i < f.num_soft(); ++i) soft.push_back(to_mask(f.soft_clause(i)));

  const std::uint64_t total = std::uint64_t{1} << n;
  const unsigned workers =
      n >= 18 ? std::max(1u, std::min(8u, std::thread::hardware_concurrency())) : 1u;
  std::vector<Best> partial(workers);
  if (workers == 1) {
    partial[0] = scan(hard, soft, f.constant_soft_weight(), 0, total);
  } else {
    std::vector<std::thread> threads;
    const std::uint64_t chunk = (total + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::uint64_t begin = std::min(total, w * chunk);
      const std::uint64_t end = std::min(total, begin + chunk);
      threads.emplace_back([&, w, begin, end] { partial[w] = scan(hard, soft, f.constant_soft_weight(), begin, end); });
    }
    for (auto& t : threads) t.join();
  }

  // Chunks are ordered, so the first strict minimum is the lowest index.
  Best best;
  for (const Best& b : partial) {
    if (b.found && (!best.found || b.cost < best.cost)) best = b;
  }
  if (!best.found) return result;
  result.optimum = Cost{best.cost};
  Assignment a(n);
  for (std::size_t v = 1; v <= n; ++v) a.set(static_cast<Var>(v), ((best.bits >> (v - 1)) & 1) != 0);
  result.witness = std::move(a);
  return result;
}

}  // namespace spbmaxsat
