#include "rts/pricing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "rts/validate.hpp"

namespace rts {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

DominanceIndex DominanceIndex::build(const Instance& inst) {
  DominanceIndex idx;
  idx.pairs = dominance_pairs(inst);
  idx.as_pred.assign(inst.patients.size(), -1);
  idx.as_succ.assign(inst.patients.size(), -1);
  for (std::size_t k = 0; k < idx.pairs.size(); ++k) {
    idx.as_pred[static_cast<std::size_t>(idx.pairs[k].pred)] = static_cast<int>(k);
    idx.as_succ[static_cast<std::size_t>(idx.pairs[k].succ)] = static_cast<int>(k);
  }
  return idx;
}

double DominanceIndex::start_day_price(const DualPrices& duals, int pidx) const {
  double price = 0.0;
  int kp = as_pred[static_cast<std::size_t>(pidx)];
  int ks = as_succ[static_cast<std::size_t>(pidx)];
  if (kp >= 0) price += duals.eta[static_cast<std::size_t>(kp)];
  if (ks >= 0) price -= duals.eta[static_cast<std::size_t>(ks)];
  return price;
}

DualPrices zero_duals(const Instance& inst) {
  DualPrices d;
  d.lambda.assign(inst.patients.size(), 0.0);
  d.eta.assign(dominance_pairs(inst).size(), 0.0);
  return d;
}

double reduced_cost(const PatientSchedule& schedule, const DualPrices& duals,
                    const DominanceIndex& dom, const ObjectiveWeights& weights,
                    const Instance& inst) {
  std::string reason = isolation_infeasibility(inst, schedule);
  if (!reason.empty())
    throw RtsError("reduced_cost: infeasible schedule: " + reason);
  int pidx = inst.patient_index(schedule.patient_id);
  const Patient& p = inst.patients[static_cast<std::size_t>(pidx)];
  const Protocol& proto = inst.protocol_of(p);

  double value = composite_cost(inst, schedule, weights);
  value -= duals.lambda[static_cast<std::size_t>(pidx)];
  for (std::size_t f = 0; f < schedule.fractions.size(); ++f) {
    const auto& a = schedule.fractions[f];
    value -= duals.gamma_at(a.machine, a.day, a.window) *
             static_cast<double>(proto.billed_duration(static_cast<int>(f)));
  }
  value -= dom.start_day_price(duals, pidx) * static_cast<double>(schedule.start_day);
  return value;
}

namespace {

struct State {
  MachineId machine;
  WindowId window;
};

// DP workspace for one (patient, trajectory group) pair.
struct GroupDp {
  const Instance& inst;
  const Patient& patient;
  const Protocol& proto;
  const DualPrices& duals;
  const ObjectiveWeights& weights;
  std::vector<State> states;  // ordered by (machine, window)
  int days;

  std::vector<double> node_first;  // [day][state], billed at dur_first
  std::vector<double> node_other;  // [day][state], billed at dur_other
  std::vector<double> tail;        // [j-1][day][state], j = remaining fractions

  std::size_t ns() const { return states.size(); }
  std::size_t at(int d, std::size_t s) const {
    return static_cast<std::size_t>(d - 1) * ns() + s;
  }
  std::size_t tail_at(int j, int d, std::size_t s) const {
    return (static_cast<std::size_t>(j - 1) * days + (d - 1)) * ns() + s;
  }

  double edge(const State& a, const State& b) const {
    double cost = 0.0;
    if (a.window != b.window) cost += weights[2];
    if (inst.park.switch_kind(a.machine, b.machine) == SwitchKind::Partial) cost += weights[5];
    return cost;
  }

  void build(const std::vector<MachineId>& machines) {
    days = inst.time.weekday_count;
    for (MachineId m : machines)
      for (WindowId w = 1; w <= inst.time.window_count; ++w) states.push_back({m, w});

    node_first.assign(static_cast<std::size_t>(days) * ns(), kInf);
    node_other.assign(static_cast<std::size_t>(days) * ns(), kInf);
    for (int d = 1; d <= days; ++d) {
      for (std::size_t s = 0; s < ns(); ++s) {
        const State& st = states[s];
        double base = 0.0;
        if (patient.window_pref)
          base += weights[3] * std::abs(st.window - *patient.window_pref);
        if (!proto.machine_preferred(st.machine)) base += weights[4];
        Minutes residual = residual_capacity(inst.occupancy, inst.time, st.machine, d, st.window);
        double gamma = duals.gamma_at(st.machine, d, st.window);
        if (residual >= proto.dur_other)
          node_other[at(d, s)] = base - gamma * static_cast<double>(proto.dur_other);
        if (residual >= proto.dur_first)
          node_first[at(d, s)] = base - gamma * static_cast<double>(proto.dur_first);
      }
    }

    int tail_len = proto.fraction_count - 1;
    if (tail_len == 0) return;
    tail.assign(static_cast<std::size_t>(tail_len) * days * ns(), kInf);
    for (int d = 1; d <= days; ++d)
      for (std::size_t s = 0; s < ns(); ++s)
        tail[tail_at(1, d, s)] = node_other[at(d, s)];
    for (int j = 2; j <= tail_len; ++j) {
      for (int d = 1; d + j - 1 <= days; ++d) {
        for (std::size_t s = 0; s < ns(); ++s) {
          if (node_other[at(d, s)] == kInf) continue;
          double best = kInf;
          for (std::size_t s2 = 0; s2 < ns(); ++s2) {
            double t = tail[tail_at(j - 1, d + 1, s2)];
            if (t == kInf) continue;
            double v = edge(states[s], states[s2]) + t;
            if (v < best) best = v;
          }
          if (best != kInf) tail[tail_at(j, d, s)] = node_other[at(d, s)] + best;
        }
      }
    }
  }

  // Minimum trajectory cost for a start day, excluding the start-day terms.
  double start_value(Day t, std::size_t* out_state) const {
    int f = proto.fraction_count;
    double best = kInf;
    std::size_t best_s = 0;
    for (std::size_t s = 0; s < ns(); ++s) {
      double v = node_first[at(t, s)];
      if (v == kInf) continue;
      if (f > 1) {
        double tail_best = kInf;
        for (std::size_t s2 = 0; s2 < ns(); ++s2) {
          double tl = tail[tail_at(f - 1, t + 1, s2)];
          if (tl == kInf) continue;
          double e = edge(states[s], states[s2]) + tl;
          if (e < tail_best) tail_best = e;
        }
        if (tail_best == kInf) continue;
        v += tail_best;
      }
      if (v < best) {
        best = v;
        best_s = s;
      }
    }
    if (out_state) *out_state = best_s;
    return best;
  }

  PatientSchedule reconstruct(Day t, std::size_t s0) const {
    PatientSchedule sched;
    sched.patient_id = patient.id;
    sched.start_day = t;
    sched.fractions.push_back({t, states[s0].machine, states[s0].window});
    std::size_t cur = s0;
    for (int k = 1; k < proto.fraction_count; ++k) {
      int d = t + k;
      int remaining = proto.fraction_count - k;
      double best = kInf;
      std::size_t best_s = 0;
      for (std::size_t s2 = 0; s2 < ns(); ++s2) {
        double tl = tail[tail_at(remaining, d, s2)];
        if (tl == kInf) continue;
        double v = edge(states[cur], states[s2]) + tl;
        if (v < best) {
          best = v;
          best_s = s2;
        }
      }
      cur = best_s;
      sched.fractions.push_back({d, states[cur].machine, states[cur].window});
    }
    return sched;
  }
};

std::vector<MachineId> group_machines(const std::vector<MachineId>& group,
                                      const Protocol& proto) {
  std::vector<MachineId> out;
  for (MachineId m : group)
    if (proto.machine_allowed(m)) out.push_back(m);
  return out;
}

}  // namespace

std::optional<PricedColumn> solve_pricing(int patient_index, const Instance& inst,
                                          const DualPrices& duals,
                                          const DominanceIndex& dom,
                                          const ObjectiveWeights& weights) {
  const Patient& patient = inst.patients[static_cast<std::size_t>(patient_index)];
  const Protocol& proto = inst.protocol_of(patient);
  const int cp = inst.priority_weight_of(patient);
  const double lambda = duals.lambda[static_cast<std::size_t>(patient_index)];
  const double sd_price = dom.start_day_price(duals, patient_index);

  auto start_terms = [&](Day t) {
    double v = weights[0] * cp * static_cast<double>(t - patient.d_min);
    v += weights[1] * cp * static_cast<double>(std::max(0, t - patient.d_target));
    return v - lambda - sd_price * static_cast<double>(t);
  };

  struct Candidate {
    double value;
    PatientSchedule schedule;
    std::vector<int> key;
  };
  std::optional<Candidate> best;

  for (const auto& group : inst.park.trajectory_groups()) {
    std::vector<MachineId> machines = group_machines(group, proto);
    if (machines.empty()) continue;
    GroupDp dp{inst, patient, proto, duals, weights, {}, 0, {}, {}, {}};
    dp.build(machines);

    double group_best = kInf;
    Day group_t = 0;
    std::size_t group_s = 0;
    for (Day t = patient.d_min; t <= inst.last_start_day(patient); ++t) {
      if (!inst.start_day_allowed(patient, t)) continue;
      std::size_t s0 = 0;
      double v = dp.start_value(t, &s0);
      if (v == kInf) continue;
      v += start_terms(t);
      if (v < group_best) {
        group_best = v;
        group_t = t;
        group_s = s0;
      }
    }
    if (group_best == kInf) continue;

    PatientSchedule sched = dp.reconstruct(group_t, group_s);
    std::vector<int> key = sched.assignment_key();
    bool take = false;
    if (!best || group_best < best->value) {
      take = true;
    } else if (group_best == best->value) {
      take = key < best->key;
    }
    if (take) best = Candidate{group_best, std::move(sched), std::move(key)};
  }

  if (!best) return std::nullopt;
  PricedColumn col;
  col.schedule = std::move(best->schedule);
  col.cost = composite_cost(inst, col.schedule, weights);
  col.reduced_cost = best->value;
  return col;
}

std::vector<PatientSchedule> enumerate_all_schedules(int patient_index,
                                                     const Instance& inst,
                                                     long long cap) {
  const Patient& patient = inst.patients[static_cast<std::size_t>(patient_index)];
  const Protocol& proto = inst.protocol_of(patient);

  auto groups = inst.park.trajectory_groups();
  double estimate = 0.0;
  std::vector<std::vector<MachineId>> usable;
  for (const auto& g : groups) {
    std::vector<MachineId> machines = group_machines(g, proto);
    if (machines.empty()) continue;
    int starts = 0;
    for (Day t = patient.d_min; t <= inst.last_start_day(patient); ++t)
      if (inst.start_day_allowed(patient, t)) ++starts;
    estimate += starts * std::pow(static_cast<double>(machines.size()) * inst.time.window_count,
                                  static_cast<double>(proto.fraction_count));
    usable.push_back(std::move(machines));
  }
  if (estimate > static_cast<double>(cap))
    throw RtsError("enumerate_all_schedules: size estimate exceeds cap");

  std::set<std::vector<int>> keys;
  std::vector<PatientSchedule> out;
  std::vector<FractionAssignment> partial;

  for (const auto& machines : usable) {
    for (Day t = patient.d_min; t <= inst.last_start_day(patient); ++t) {
      if (!inst.start_day_allowed(patient, t)) continue;
      partial.clear();
      // Iterative DFS over per-day (machine, window) choices.
      auto rec = [&](auto&& self, int f) -> void {
        if (f == proto.fraction_count) {
          PatientSchedule s{patient.id, t, partial};
          auto key = s.assignment_key();
          if (keys.insert(key).second) out.push_back(std::move(s));
          return;
        }
        Day d = t + f;
        Minutes billed = proto.billed_duration(f);
        for (MachineId m : machines) {
          for (WindowId w = 1; w <= inst.time.window_count; ++w) {
            if (residual_capacity(inst.occupancy, inst.time, m, d, w) < billed) continue;
            partial.push_back({d, m, w});
            self(self, f + 1);
            partial.pop_back();
          }
        }
      };
      rec(rec, 0);
    }
  }

  std::sort(out.begin(), out.end(), [](const PatientSchedule& a, const PatientSchedule& b) {
    return a.assignment_key() < b.assignment_key();
  });
  return out;
}

}  // namespace rts
