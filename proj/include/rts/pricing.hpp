#pragma once

#include <optional>
#include <unordered_map>
#include <vector>

#include "rts/domain.hpp"
#include "rts/objective.hpp"

namespace rts {

// Packs (machine, day, window) into one key; indices stay below 10^3 each.
inline long long cell_key(MachineId m, Day d, WindowId w) {
  return (static_cast<long long>(m) * 1000 + d) * 1000 + w;
}

/// Row prices of the master LP, under the convention y = c_B^T B^{-1} for the
/// minimization problem: lambda free, gamma <= 0, eta <= 0 at optimality.
/// Missing gamma cells and missing dominance neighbours read as zero.
struct DualPrices {
  std::vector<double> lambda;                    // by patient index
  std::unordered_map<long long, double> gamma;   // by cell_key
  std::vector<double> eta;                       // by dominance-pair index

  double gamma_at(MachineId m, Day d, WindowId w) const {
    auto it = gamma.find(cell_key(m, d, w));
    return it == gamma.end() ? 0.0 : it->second;
  }
};

/// Per-patient links into the dominance pair list: the pair where the patient
/// is the earlier-target side (as_pred) and where it is the later one
/// (as_succ); -1 when there is no such neighbour.
struct DominanceIndex {
  std::vector<DominancePair> pairs;
  std::vector<int> as_pred;
  std::vector<int> as_succ;

  static DominanceIndex build(const Instance& inst);
  // eta difference entering the reduced cost of patient pidx per start day.
  double start_day_price(const DualPrices& duals, int pidx) const;
};

struct PricedColumn {
  PatientSchedule schedule;
  double cost = 0.0;          // composite objective cost
  double reduced_cost = 0.0;  // at generation time
};

/// Reduced cost of a given feasible-in-isolation schedule:
///   cost - lambda_p - sum(gamma * billed minutes) - (eta_pred - eta_succ) * start_day.
/// Throws RtsError when the schedule is not feasible in isolation.
double reduced_cost(const PatientSchedule& schedule, const DualPrices& duals,
                    const DominanceIndex& dom, const ObjectiveWeights& weights,
                    const Instance& inst);

/// Exact subproblem: minimum-reduced-cost feasible schedule for one patient,
/// via a shortest-path DP over (machine, window) states per day inside each
/// beam-group trajectory. Returns nothing when no feasible schedule exists.
std::optional<PricedColumn> solve_pricing(int patient_index, const Instance& inst,
                                          const DualPrices& duals,
                                          const DominanceIndex& dom,
                                          const ObjectiveWeights& weights);

/// Every feasible schedule for the patient in isolation, deduplicated and in
/// canonical order. Test oracle for the DP; refuses (throws) beyond the cap.
std::vector<PatientSchedule> enumerate_all_schedules(int patient_index,
                                                     const Instance& inst,
                                                     long long cap = 1000000);

DualPrices zero_duals(const Instance& inst);

}  // namespace rts
