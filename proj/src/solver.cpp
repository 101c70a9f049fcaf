#include "l0spike/solver.hpp"

namespace l0spike {

Algorithm parse_algorithm(std::string_view name) {
  if (name == "op") return Algorithm::op;
  if (name == "pelt") return Algorithm::pelt;
  if (name == "auto") return Algorithm::auto_select;
  throw UnknownAlgorithmError(std::string(name));
}

ChangepointSolution solve(const FluorescenceTrace& trace, const CostModel& model,
                          Penalty penalty, Algorithm algorithm) {
  return std::visit(
      [&](const auto& m) {
        if (algorithm == Algorithm::op) return solve_op(trace, m, penalty);
        return solve_pelt(trace, m, penalty);
      },
      model);
}

}  // namespace l0spike
