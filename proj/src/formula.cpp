#include "spbmaxsat/formula.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>

namespace spbmaxsat {

namespace {

// code = 2*var + 1 must stay representable in 32 bits.
constexpr std::uint64_t kMaxVarIndex = (std::uint64_t{1} << 31) - 2;

}  // namespace

bool ClauseView::satisfied_by(std::span<const std::uint8_t> values) const {
  return std::any_of(literals.begin(), literals.end(),
                     [&](Literal l) { return l.satisfied_by(values[l.var] != 0); });
}

ClauseView Formula::clause(ClauseId c) const {
  return {literals(c), is_hard(c) ? ClauseKind::hard : ClauseKind::soft, clauses_[c].weight};
}

// ---------------------------------------------------------------------------
// Builder

bool FormulaBuilder::normalize(std::span<const Literal> lits, std::vector<Literal>& out) {
  out.clear();
  for (Literal l : lits) {
    if (l.var == 0 || l.var > kMaxVarIndex) {
      throw FormulaError(FormulaError::Kind::variable_out_of_range,
                         "variable index " + std::to_string(l.var) + " out of range");
    }
    if (l.var > num_vars_) {
      if (!grow_vars_) {
        throw FormulaError(FormulaError::Kind::variable_out_of_range,
                           "variable index " + std::to_string(l.var) + " exceeds declared " +
                               std::to_string(num_vars_));
      }
      num_vars_ = l.var;
    }
  }
  if (seen_.size() <= num_vars_) seen_.resize(num_vars_ + 1, 0);
  bool tautology = false;
  for (Literal l : lits) {
    const std::int8_t sign = l.positive ? 1 : -1;
    if (seen_[l.var] == 0) {
      seen_[l.var] = sign;
      out.push_back(l);
    } else if (seen_[l.var] != sign) {
      tautology = true;
    }
  }
  for (Literal l : lits) seen_[l.var] = 0;
  return !tautology;
}

void FormulaBuilder::add_hard(std::span<const Literal> lits) {
  std::vector<Literal> clause;
  if (!normalize(lits, clause)) return;
  if (clause.empty()) {
    trivially_infeasible_ = true;
    return;
  }
  hard_.push_back(std::move(clause));
}

void FormulaBuilder::add_soft(Weight weight, std::span<const Literal> lits) {
  if (weight == 0) {
    throw FormulaError(FormulaError::Kind::zero_weight, "soft clause weight must be positive");
  }
  std::vector<Literal> clause;
  if (!normalize(lits, clause)) return;
  if (weight > kMaxTotalSoftWeight - total_soft_weight_) {
    throw FormulaError(FormulaError::Kind::weight_overflow,
                       "total soft weight exceeds 2^63-1");
  }
  total_soft_weight_ += weight;
  if (weight != 1) unit_weights_ = false;
  if (clause.empty()) {
    constant_soft_weight_ += weight;
    return;
  }
  soft_.emplace_back(weight, std::move(clause));
}

Formula FormulaBuilder::build() const {
  Formula f;
  f.num_vars_ = num_vars_;
  f.num_hard_ = hard_.size();
  f.total_soft_weight_ = total_soft_weight_;
  f.constant_soft_weight_ = constant_soft_weight_;
  f.trivially_infeasible_ = trivially_infeasible_;
  f.unit_weights_ = unit_weights_;

  std::size_t pool_size = 0;
  for (const auto& c : hard_) pool_size += c.size();
  for (const auto& [w, c] : soft_) pool_size += c.size();
  f.literal_pool_.reserve(pool_size);
  f.clauses_.reserve(hard_.size() + soft_.size());

  auto append = [&](const std::vector<Literal>& lits, Weight w) {
    f.clauses_.push_back({static_cast<std::uint32_t>(f.literal_pool_.size()),
                          static_cast<std::uint32_t>(lits.size()), w});
    f.literal_pool_.insert(f.literal_pool_.end(), lits.begin(), lits.end());
  };
  for (const auto& c : hard_) append(c, 0);
  for (const auto& [w, c] : soft_) append(c, w);

  const std::size_t num_codes = 2 * (num_vars_ + 1);
  f.occurrence_offset_.assign(num_codes + 1, 0);
  for (Literal l : f.literal_pool_) ++f.occurrence_offset_[l.code() + 1];
  for (std::size_t i = 1; i <= num_codes; ++i) f.occurrence_offset_[i] += f.occurrence_offset_[i - 1];
  f.occurrence_pool_.resize(f.literal_pool_.size());
  std::vector<std::uint32_t> fill(f.occurrence_offset_.begin(), f.occurrence_offset_.end() - 1);
  for (ClauseId c = 0; c < f.clauses_.size(); ++c) {
    for (Literal l : f.literals(c)) f.occurrence_pool_[fill[l.code()]++] = c;
  }
  return f;
}

// ---------------------------------------------------------------------------
// Parsing

std::string_view to_string(ParseError::Kind kind) {
  switch (kind) {
    case ParseError::Kind::malformed_header: return "malformed header";
    case ParseError::Kind::invalid_token: return "invalid token";
    case ParseError::Kind::missing_terminator: return "missing 0 terminator";
    case ParseError::Kind::variable_out_of_range: return "variable index out of range";
    case ParseError::Kind::zero_weight: return "soft weight is 0";
    case ParseError::Kind::weight_overflow: return "weight overflow";
  }
  return "unknown";
}

ParseError::ParseError(Kind kind, std::size_t line, const std::string& detail)
    : std::runtime_error("line " + std::to_string(line) + ": " + std::string(to_string(kind)) +
                         (detail.empty() ? "" : " (" + detail + ")")),
      kind_(kind),
      line_(line) {}

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) tokens.push_back(line.substr(i, j - i));
    i = j;
  }
  return tokens;
}

enum class NumStatus { ok, invalid, overflow };

template <typename T>
NumStatus parse_number(std::string_view tok, T& out) {
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  if (ec == std::errc::result_out_of_range) return NumStatus::overflow;
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) return NumStatus::invalid;
  return NumStatus::ok;
}

class WcnfReader {
 public:
  Formula read(std::istream& in) {
    std::string line;
    while (std::getline(in, line)) {
      ++lineno_;
      handle_line(line);
    }
    if (!builder_) builder_.emplace(0, true);  // no clauses at all
    return builder_->build();
  }

 private:
  [[noreturn]] void fail(ParseError::Kind kind, const std::string& detail = {}) const {
    throw ParseError(kind, lineno_, detail);
  }

  void handle_line(std::string_view line) {
    auto tokens = split_ws(line);
    if (tokens.empty() || tokens[0][0] == 'c') return;
    if (tokens[0] == "p") {
      handle_header(tokens);
      return;
    }
    if (!builder_) {
      builder_.emplace(0, true);  // new format: no header before the first clause
      old_format_ = false;
    }
    handle_clause(tokens);
  }

  void handle_header(const std::vector<std::string_view>& tokens) {
    if (builder_) fail(ParseError::Kind::malformed_header, "header after clauses or repeated");
    if (tokens.size() < 4 || tokens.size() > 5 || tokens[1] != "wcnf") {
      fail(ParseError::Kind::malformed_header, "expected 'p wcnf <vars> <clauses> [<top>]'");
    }
    std::uint64_t nv = 0, nc = 0;
    if (parse_number(tokens[2], nv) != NumStatus::ok || parse_number(tokens[3], nc) != NumStatus::ok ||
        nv > kMaxVarIndex) {
      fail(ParseError::Kind::malformed_header, "bad variable or clause count");
    }
    if (tokens.size() == 5) {
      Weight top = 0;
      if (parse_number(tokens[4], top) != NumStatus::ok || top == 0) {
        fail(ParseError::Kind::malformed_header, "bad top weight");
      }
      top_ = top;
    }
    builder_.emplace(static_cast<std::size_t>(nv), false);
    old_format_ = true;
  }

  void handle_clause(const std::vector<std::string_view>& tokens) {
    bool hard = false;
    Weight weight = 0;
    if (tokens[0] == "h" && !old_format_) {
      hard = true;
    } else {
      switch (parse_number(tokens[0], weight)) {
        case NumStatus::ok: break;
        case NumStatus::overflow: fail(ParseError::Kind::weight_overflow, std::string(tokens[0]));
        case NumStatus::invalid: fail(ParseError::Kind::invalid_token, std::string(tokens[0]));
      }
      if (weight == 0) fail(ParseError::Kind::zero_weight);
      if (old_format_ && top_ && weight >= *top_) hard = true;
    }

    lits_.clear();
    bool terminated = false;
    for (std::size_t i = 1; i < tokens.size(); ++i) {
      if (terminated) fail(ParseError::Kind::invalid_token, "data after 0 terminator");
      std::int64_t lit = 0;
      switch (parse_number(tokens[i], lit)) {
        case NumStatus::ok: break;
        case NumStatus::overflow: fail(ParseError::Kind::variable_out_of_range, std::string(tokens[i]));
        case NumStatus::invalid: fail(ParseError::Kind::invalid_token, std::string(tokens[i]));
      }
      if (lit == 0) {
        terminated = true;
        continue;
      }
      if (lit == std::numeric_limits<std::int64_t>::min() || static_cast<std::uint64_t>(std::abs(lit)) > kMaxVarIndex) {
        fail(ParseError::Kind::variable_out_of_range, std::string(tokens[i]));
      }
      lits_.push_back(Literal::from_dimacs(lit));
    }
    if (!terminated) fail(ParseError::Kind::missing_terminator);

    try {
      if (hard) {
        builder_->add_hard(lits_);
      } else {
        builder_->add_soft(weight, lits_);
      }
    } catch (const FormulaError& e) {
      switch (e.kind()) {
        case FormulaError::Kind::variable_out_of_range:
          fail(ParseError::Kind::variable_out_of_range, e.what());
        case FormulaError::Kind::zero_weight: fail(ParseError::Kind::zero_weight, e.what());
        case FormulaError::Kind::weight_overflow: fail(ParseError::Kind::weight_overflow, e.what());
      }
    }
  }

  std::size_t lineno_ = 0;
  bool old_format_ = false;
  std::optional<Weight> top_;
  std::optional<FormulaBuilder> builder_;
  std::vector<Literal> lits_;
};

}  // namespace

Formula parse_wcnf(std::istream& in) { return WcnfReader{}.read(in); }

Formula parse_wcnf(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_wcnf(in);
}

Formula parse_wcnf_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return parse_wcnf(in);
}

std::string write_wcnf(const Formula& f, WcnfFormat format) {
  std::ostringstream out;
  const bool old_fmt = format == WcnfFormat::old_format;
  const Weight top = f.total_soft_weight() + 1;
  auto write_lits = [&](std::span<const Literal> lits) {
    for (Literal l : lits) out << ' ' << l.to_dimacs();
    out << " 0\n";
  };
  if (old_fmt) {
    const std::size_t nc = f.num_clauses() + (f.trivially_infeasible() ? 1 : 0) +
                           (f.constant_soft_weight() > 0 ? 1 : 0);
    out << "p wcnf " << f.num_vars() << ' ' << nc << ' ' << top << '\n';
  }
  const std::string hard_tag = old_fmt ? std::to_string(top) : "h";
  for (std::size_t i = 0; i < f.num_hard(); ++i) {
    out << hard_tag;
    write_lits(f.hard_clause(i).literals);
  }
  if (f.trivially_infeasible()) out << hard_tag << " 0\n";
  for (std::size_t i = 0; i < f.num_soft(); ++i) {
    const auto c = f.soft_clause(i);
    out << c.weight;
    write_lits(c.literals);
  }
  if (f.constant_soft_weight() > 0) out << f.constant_soft_weight() << " 0\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// Assignments and evaluation

std::string Assignment::to_bitstring() const {
  std::string bits(size(), '0');
  for (std::size_t v = 1; v < values_.size(); ++v) bits[v - 1] = values_[v] ? '1' : '0';
  return bits;
}

Assignment Assignment::from_bitstring(std::string_view bits) {
  Assignment a(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] != '0' && bits[i] != '1') throw std::invalid_argument("bitstring must contain only 0/1");
    a.set(static_cast<Var>(i + 1), bits[i] == '1');
  }
  return a;
}

Weight obj(const Formula& f, const Assignment& a) {
  Weight total = f.constant_soft_weight();
  for (std::size_t i = 0; i < f.num_soft(); ++i) {
    const auto c = f.soft_clause(i);
    if (!c.satisfied_by(a.values())) total += c.weight;
  }
  return total;
}

bool is_feasible(const Formula& f, const Assignment& a) {
  if (f.trivially_infeasible()) return false;
  for (std::size_t i = 0; i < f.num_hard(); ++i) {
    if (!f.hard_clause(i).satisfied_by(a.values())) return false;
  }
  return true;
}

Cost cost(const Formula& f, const Assignment& a) {
  return is_feasible(f, a) ? Cost{obj(f, a)} : Cost::infinite();
}

}  // namespace spbmaxsat
