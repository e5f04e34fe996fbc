#include "spbmaxsat/analysis.hpp"

#include <iomanip>
#include <limits>
#include <stdexcept>

namespace spbmaxsat {

std::vector<DynamicsRow> weight_dynamics(double delta, std::uint64_t steps) {
  if (!(delta >= 1.0)) throw std::invalid_argument("delta must be >= 1");
  if (steps < 1) throw std::invalid_argument("steps must be >= 1");
  std::vector<DynamicsRow> rows;
  rows.reserve(steps);
  double w = 1.0;
  double hard = 1.0;
  for (std::uint64_t n = 1; n <= steps; ++n) {
    const double next = delta * (w + 1.0);
    rows.push_back({n, w, (next - w) / w, (next - w) / (w + hard)});
    w = next;
    hard += 1.0;
  }
  return rows;
}

void write_dynamics_csv(std::ostream& out, const std::vector<DynamicsRow>& rows) {
  out << "step,w_spb,r_inc,i_inc\n";
  const auto old_precision = out.precision(std::numeric_limits<double>::max_digits10);
  for (const auto& r : rows) out << r.step << ',' << r.w_spb << ',' << r.r_inc << ',' << r.i_inc << '\n';
  out.precision(old_precision);
}

}  // namespace spbmaxsat
