#include "rts/domain.hpp"

#include <algorithm>
#include <set>

namespace rts {

int priority_weight(Priority p) {
  switch (p) {
    case Priority::A: return 10;
    case Priority::B: return 3;
    case Priority::C: return 1;
  }
  throw RtsError("unknown priority");
}

char priority_letter(Priority p) {
  switch (p) {
    case Priority::A: return 'A';
    case Priority::B: return 'B';
    case Priority::C: return 'C';
  }
  throw RtsError("unknown priority");
}

Priority priority_from_letter(char c) {
  switch (c) {
    case 'A': return Priority::A;
    case 'B': return Priority::B;
    case 'C': return Priority::C;
  }
  throw RtsError(std::string("unknown priority letter: ") + c);
}

const char* to_string(SwitchKind k) {
  switch (k) {
    case SwitchKind::Same: return "same";
    case SwitchKind::Complete: return "complete";
    case SwitchKind::Partial: return "partial";
    case SwitchKind::Forbidden: return "forbidden";
  }
  return "?";
}

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Feasible: return "feasible";
    case SolveStatus::TimeoutIncumbent: return "timeout_incumbent";
    case SolveStatus::NoIncumbent: return "no_incumbent";
    case SolveStatus::Infeasible: return "infeasible";
  }
  return "?";
}

void MachinePark::finalize() {
  if (machine_count <= 0) throw RtsError("machine park: machine_count must be positive");
  complete_group_of.assign(static_cast<std::size_t>(machine_count), -1);
  partial_group_of.assign(static_cast<std::size_t>(machine_count), -1);
  auto fill = [&](const std::vector<std::vector<MachineId>>& groups,
                  std::vector<int>& of, const char* kind) {
    for (std::size_t g = 0; g < groups.size(); ++g) {
      if (groups[g].size() < 2)
        throw RtsError(std::string("machine park: ") + kind + " group needs at least two machines");
      for (MachineId m : groups[g]) {
        if (m < 1 || m > machine_count) throw RtsError("machine park: machine id out of range");
        int& slot = of[static_cast<std::size_t>(m - 1)];
        if (slot != -1)
          throw RtsError(std::string("machine park: machine in two ") + kind + " groups");
        slot = static_cast<int>(g);
      }
    }
  };
  fill(complete_groups, complete_group_of, "complete");
  fill(partial_groups, partial_group_of, "partial");
}

SwitchKind MachinePark::switch_kind(MachineId a, MachineId b) const {
  if (a < 1 || a > machine_count || b < 1 || b > machine_count)
    throw RtsError("switch_kind: machine id out of range");
  if (a == b) return SwitchKind::Same;
  int ca = complete_group_of[static_cast<std::size_t>(a - 1)];
  int cb = complete_group_of[static_cast<std::size_t>(b - 1)];
  if (ca != -1 && ca == cb) return SwitchKind::Complete;
  int pa = partial_group_of[static_cast<std::size_t>(a - 1)];
  int pb = partial_group_of[static_cast<std::size_t>(b - 1)];
  if (pa != -1 && pa == pb) return SwitchKind::Partial;
  return SwitchKind::Forbidden;
}

std::vector<std::vector<MachineId>> MachinePark::trajectory_groups() const {
  std::vector<std::vector<MachineId>> out;
  std::set<std::vector<MachineId>> seen;
  auto push = [&](std::vector<MachineId> g) {
    std::sort(g.begin(), g.end());
    if (seen.insert(g).second) out.push_back(std::move(g));
  };
  for (const auto& g : complete_groups) push(g);
  for (const auto& g : partial_groups) push(g);
  for (MachineId m = 1; m <= machine_count; ++m) {
    if (complete_group_of[static_cast<std::size_t>(m - 1)] == -1 &&
        partial_group_of[static_cast<std::size_t>(m - 1)] == -1)
      push({m});
  }
  return out;
}

bool Protocol::machine_allowed(MachineId m) const {
  return std::binary_search(allowed_machines.begin(), allowed_machines.end(), m);
}

bool Protocol::machine_preferred(MachineId m) const {
  return std::binary_search(preferred_machines.begin(), preferred_machines.end(), m);
}

void OccupancyGrid::ensure_days(Day d) {
  if (d <= days) return;
  OccupancyGrid grown(machines, d, windows);
  for (MachineId m = 1; m <= machines; ++m)
    for (Day dd = 1; dd <= days; ++dd)
      for (WindowId w = 1; w <= windows; ++w)
        grown.booked[grown.index(m, dd, w)] = booked[index(m, dd, w)];
  *this = std::move(grown);
}

std::vector<int> PatientSchedule::assignment_key() const {
  std::vector<int> key;
  key.reserve(1 + fractions.size() * 3);
  key.push_back(start_day);
  for (const auto& f : fractions) {
    key.push_back(f.day);
    key.push_back(f.machine);
    key.push_back(f.window);
  }
  return key;
}

bool Instance::start_day_allowed(const Patient& p, Day d) const {
  const Protocol& proto = protocol_of(p);
  if (d < p.d_min || d > last_start_day(p)) return false;
  return proto.allowed_start_weekdays[static_cast<std::size_t>(weekday_of(d) - 1)];
}

int Instance::patient_index(int patient_id) const {
  for (std::size_t i = 0; i < patients.size(); ++i)
    if (patients[i].id == patient_id) return static_cast<int>(i);
  return -1;
}

Minutes residual_capacity(const OccupancyGrid& grid, const TimeGrid& time,
                          MachineId m, Day d, WindowId w) {
  if (m < 1 || m > grid.machines || d < 1 || w < 1 || w > time.window_count)
    throw RtsError("residual_capacity: index out of range");
  return time.window_length(w) - grid.at(m, d, w);
}

std::vector<DominancePair> dominance_pairs(const Instance& inst) {
  // Bucket patient indexes by protocol, order each bucket by (d_target, id).
  std::vector<std::vector<int>> by_protocol(inst.protocols.size());
  for (std::size_t i = 0; i < inst.patients.size(); ++i)
    by_protocol[static_cast<std::size_t>(inst.patients[i].protocol)].push_back(static_cast<int>(i));
  std::vector<DominancePair> pairs;
  for (auto& bucket : by_protocol) {
    std::sort(bucket.begin(), bucket.end(), [&](int a, int b) {
      const Patient& pa = inst.patients[static_cast<std::size_t>(a)];
      const Patient& pb = inst.patients[static_cast<std::size_t>(b)];
      if (pa.d_target != pb.d_target) return pa.d_target < pb.d_target;
      return pa.id < pb.id;
    });
    for (std::size_t k = 0; k + 1 < bucket.size(); ++k)
      pairs.push_back({bucket[k], bucket[k + 1]});
  }
  return pairs;
}

void Instance::check() const {
  if (time.weekday_count < 1) throw RtsError("instance: weekday_count must be positive");
  if (time.window_count < 1) throw RtsError("instance: window_count must be positive");
  if (static_cast<int>(time.window_lengths.size()) != time.window_count)
    throw RtsError("instance: window_lengths size mismatch");
  for (Minutes l : time.window_lengths)
    if (l <= 0) throw RtsError("instance: window length must be positive");
  if (park.complete_group_of.empty() && park.machine_count > 0)
    throw RtsError("instance: machine park not finalized");
  if (occupancy.machines != park.machine_count || occupancy.windows != time.window_count)
    throw RtsError("instance: occupancy grid shape mismatch");
  for (MachineId m = 1; m <= park.machine_count; ++m)
    for (Day d = 1; d <= occupancy.days; ++d)
      for (WindowId w = 1; w <= time.window_count; ++w) {
        Minutes s = occupancy.at(m, d, w);
        if (s < 0 || s > time.window_length(w))
          throw RtsError("instance: occupied minutes outside [0, window length]");
      }
  for (const Protocol& proto : protocols) {
    if (proto.dur_other <= 0 || proto.dur_first < proto.dur_other)
      throw RtsError("protocol " + proto.name + ": need dur_first >= dur_other > 0");
    if (proto.fraction_count < 1)
      throw RtsError("protocol " + proto.name + ": need at least one fraction");
    if (proto.allowed_machines.empty())
      throw RtsError("protocol " + proto.name + ": no allowed machines");
    if (!std::is_sorted(proto.allowed_machines.begin(), proto.allowed_machines.end()) ||
        !std::is_sorted(proto.preferred_machines.begin(), proto.preferred_machines.end()))
      throw RtsError("protocol " + proto.name + ": machine lists must be sorted");
    for (MachineId m : proto.allowed_machines)
      if (m < 1 || m > park.machine_count)
        throw RtsError("protocol " + proto.name + ": machine id out of range");
    for (MachineId m : proto.preferred_machines)
      if (!proto.machine_allowed(m))
        throw RtsError("protocol " + proto.name + ": preferred machine not allowed");
    bool any_weekday = false;
    for (bool b : proto.allowed_start_weekdays) any_weekday |= b;
    if (!any_weekday) throw RtsError("protocol " + proto.name + ": no allowed start weekday");
  }
  std::set<int> ids;
  for (const Patient& p : patients) {
    if (p.id <= 0) throw RtsError("patient: id must be positive");
    if (!ids.insert(p.id).second)
      throw RtsError("patient " + std::to_string(p.id) + ": duplicate id");
    if (p.protocol < 0 || p.protocol >= static_cast<int>(protocols.size()))
      throw RtsError("patient " + std::to_string(p.id) + ": unknown protocol");
    if (p.d_min < 1 || p.d_min > p.d_target || p.d_target > time.weekday_count)
      throw RtsError("patient " + std::to_string(p.id) + ": need 1 <= d_min <= d_target <= horizon");
    if (p.window_pref && (*p.window_pref < 1 || *p.window_pref > time.window_count))
      throw RtsError("patient " + std::to_string(p.id) + ": window preference out of range");
    const Protocol& proto = protocol_of(p);
    // At least one allowed machine must have some residual capacity somewhere.
    bool usable = false;
    for (MachineId m : proto.allowed_machines) {
      for (Day d = 1; d <= time.weekday_count && !usable; ++d)
        for (WindowId w = 1; w <= time.window_count && !usable; ++w)
          usable = residual_capacity(occupancy, time, m, d, w) >= proto.dur_other;
      if (usable) break;
    }
    if (!usable)
      throw RtsError("patient " + std::to_string(p.id) + ": no allowed machine has residual capacity");
  }
}

const PatientSchedule* Solution::schedule_for(int patient_id) const {
  for (const auto& s : schedules)
    if (s.patient_id == patient_id) return &s;
  return nullptr;
}

void Solution::sort_by_patient() {
  std::sort(schedules.begin(), schedules.end(),
            [](const PatientSchedule& a, const PatientSchedule& b) {
              return a.patient_id < b.patient_id;
            });
}

}  // namespace rts
