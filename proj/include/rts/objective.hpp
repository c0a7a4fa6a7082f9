#pragma once

#include <array>
#include <string>

#include "rts/domain.hpp"

namespace rts {

/// Weights for the six objective components. All bundled presets are
/// integral, which keeps composite costs exact in double arithmetic.
struct ObjectiveWeights {
  std::array<double, 6> alpha{0, 0, 0, 0, 0, 0};

  double operator[](int k) const { return alpha[static_cast<std::size_t>(k)]; }
  void check() const;  // at least one positive, none negative
};

// Bundled presets 1..4.
ObjectiveWeights objective_preset(int number);
// "#2", "2", or "a1,a2,a3,a4,a5,a6".
ObjectiveWeights parse_objective(const std::string& text);

// Per-patient components. Schedules are assumed structurally sound
// (consecutive days, fraction count matching the protocol); the validator
// owns flagging everything else.
long long f1_waiting(const Instance& inst, const PatientSchedule& s);
long long f2_target_violation(const Instance& inst, const PatientSchedule& s);
long long f3_window_switches(const PatientSchedule& s);
long long f4_pref_violation(const PatientSchedule& s, const Patient& p);
long long f5_nonpreferred_machine(const PatientSchedule& s, const Protocol& proto);
long long f6_partial_switches(const PatientSchedule& s, const MachinePark& park);

struct CostBreakdown {
  std::array<long long, 6> f{0, 0, 0, 0, 0, 0};
  double composite = 0.0;
};

CostBreakdown cost_breakdown(const Instance& inst, const PatientSchedule& s,
                             const ObjectiveWeights& w);
double composite_cost(const Instance& inst, const PatientSchedule& s,
                      const ObjectiveWeights& w);

// 1 + sum of composite costs; also fills breakdown sums when asked.
double total_objective(const Instance& inst, const Solution& sol, const ObjectiveWeights& w);
SolutionBreakdown solution_breakdown(const Instance& inst, const Solution& sol);

}  // namespace rts
