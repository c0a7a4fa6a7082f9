#include "rts/objective.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>

namespace rts {

void ObjectiveWeights::check() const {
  bool any = false;
  for (double a : alpha) {
    if (a < 0) throw RtsError("objective weights must be non-negative");
    if (!std::isfinite(a)) throw RtsError("objective weights must be finite");
    any |= a > 0;
  }
  if (!any) throw RtsError("at least one objective weight must be positive");
}

ObjectiveWeights objective_preset(int number) {
  switch (number) {
    case 1: return {{50, 100, 1, 0, 10, 10}};
    case 2: return {{50, 100, 1, 1, 0, 0}};
    case 3: return {{100, 0, 1, 0, 10, 0}};
    case 4: return {{100, 0, 1, 5, 10, 10}};
  }
  throw RtsError("unknown objective preset #" + std::to_string(number));
}

ObjectiveWeights parse_objective(const std::string& text) {
  std::string t = text;
  if (!t.empty() && t[0] == '#') t = t.substr(1);
  if (t.find(',') == std::string::npos) {
    std::size_t pos = 0;
    int number = std::stoi(t, &pos);
    if (pos != t.size()) throw RtsError("bad objective spec: " + text);
    return objective_preset(number);
  }
  ObjectiveWeights w;
  std::stringstream ss(t);
  std::string item;
  std::size_t k = 0;
  while (std::getline(ss, item, ',')) {
    if (k >= 6) throw RtsError("objective weights: expected 6 values");
    w.alpha[k++] = std::stod(item);
  }
  if (k != 6) throw RtsError("objective weights: expected 6 values");
  w.check();
  return w;
}

long long f1_waiting(const Instance& inst, const PatientSchedule& s) {
  int idx = inst.patient_index(s.patient_id);
  if (idx < 0) throw RtsError("f1: unknown patient");
  const Patient& p = inst.patients[static_cast<std::size_t>(idx)];
  return static_cast<long long>(inst.priority_weight_of(p)) * (s.start_day - p.d_min);
}

long long f2_target_violation(const Instance& inst, const PatientSchedule& s) {
  int idx = inst.patient_index(s.patient_id);
  if (idx < 0) throw RtsError("f2: unknown patient");
  const Patient& p = inst.patients[static_cast<std::size_t>(idx)];
  long long late = std::max(0, s.start_day - p.d_target);
  return static_cast<long long>(inst.priority_weight_of(p)) * late;
}

long long f3_window_switches(const PatientSchedule& s) {
  long long switches = 0;
  for (std::size_t i = 1; i < s.fractions.size(); ++i)
    if (s.fractions[i].window != s.fractions[i - 1].window) ++switches;
  return switches;
}

long long f4_pref_violation(const PatientSchedule& s, const Patient& p) {
  if (!p.window_pref) return 0;
  long long total = 0;
  for (const auto& f : s.fractions) total += std::abs(f.window - *p.window_pref);
  return total;
}

long long f5_nonpreferred_machine(const PatientSchedule& s, const Protocol& proto) {
  long long count = 0;
  for (const auto& f : s.fractions)
    if (!proto.machine_preferred(f.machine)) ++count;
  return count;
}

long long f6_partial_switches(const PatientSchedule& s, const MachinePark& park) {
  long long count = 0;
  for (std::size_t i = 1; i < s.fractions.size(); ++i)
    if (park.switch_kind(s.fractions[i - 1].machine, s.fractions[i].machine) == SwitchKind::Partial)
      ++count;
  return count;
}

CostBreakdown cost_breakdown(const Instance& inst, const PatientSchedule& s,
                             const ObjectiveWeights& w) {
  int idx = inst.patient_index(s.patient_id);
  if (idx < 0) throw RtsError("cost_breakdown: unknown patient");
  const Patient& p = inst.patients[static_cast<std::size_t>(idx)];
  const Protocol& proto = inst.protocol_of(p);
  CostBreakdown b;
  b.f[0] = f1_waiting(inst, s);
  b.f[1] = f2_target_violation(inst, s);
  b.f[2] = f3_window_switches(s);
  b.f[3] = f4_pref_violation(s, p);
  b.f[4] = f5_nonpreferred_machine(s, proto);
  b.f[5] = f6_partial_switches(s, inst.park);
  for (int k = 0; k < 6; ++k) b.composite += w[k] * static_cast<double>(b.f[static_cast<std::size_t>(k)]);
  return b;
}

double composite_cost(const Instance& inst, const PatientSchedule& s,
                      const ObjectiveWeights& w) {
  return cost_breakdown(inst, s, w).composite;
}

double total_objective(const Instance& inst, const Solution& sol, const ObjectiveWeights& w) {
  double total = 1.0;
  for (const auto& s : sol.schedules) total += composite_cost(inst, s, w);
  return total;
}

SolutionBreakdown solution_breakdown(const Instance& inst, const Solution& sol) {
  SolutionBreakdown sum;
  ObjectiveWeights unit{{1, 1, 1, 1, 1, 1}};
  for (const auto& s : sol.schedules) {
    CostBreakdown b = cost_breakdown(inst, s, unit);
    for (std::size_t k = 0; k < 6; ++k) sum.f[k] += b.f[k];
  }
  return sum;
}

}  // namespace rts
