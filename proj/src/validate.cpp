#include "rts/validate.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace rts {

const char* to_string(ViolationCode c) {
  switch (c) {
    case ViolationCode::UnknownPatient: return "unknown_patient";
    case ViolationCode::DuplicatePatient: return "duplicate_patient";
    case ViolationCode::MissingPatient: return "missing_patient";
    case ViolationCode::FractionCount: return "fraction_count";
    case ViolationCode::Consecutiveness: return "consecutiveness";
    case ViolationCode::MachineNotAllowed: return "machine_not_allowed";
    case ViolationCode::BeamGroup: return "beam_group";
    case ViolationCode::StartDayBounds: return "start_day_bounds";
    case ViolationCode::WeekdayNotAllowed: return "weekday_not_allowed";
    case ViolationCode::Capacity: return "capacity";
    case ViolationCode::Dominance: return "dominance";
  }
  return "?";
}

bool ValidationReport::has(ViolationCode c) const {
  for (const auto& v : violations)
    if (v.code == c) return true;
  return false;
}

std::string ValidationReport::summary() const {
  std::ostringstream os;
  for (const auto& v : violations) {
    os << to_string(v.code);
    if (v.patient_id > 0) os << " patient " << v.patient_id;
    if (!v.detail.empty()) os << ": " << v.detail;
    os << '\n';
  }
  return os.str();
}

namespace {

struct Checker {
  const Instance& inst;
  ValidationReport& report;

  void add(ViolationCode code, int patient_id, std::string detail) {
    report.violations.push_back({code, patient_id, std::move(detail)});
  }

  // Index checks double as guards: a schedule with out-of-range fields is
  // reported once and skipped by the capacity accounting.
  bool indices_ok(const PatientSchedule& s) {
    for (const auto& f : s.fractions) {
      if (f.day < 1 || f.day > inst.time.weekday_count ||
          f.machine < 1 || f.machine > inst.park.machine_count ||
          f.window < 1 || f.window > inst.time.window_count) {
        add(ViolationCode::StartDayBounds, s.patient_id,
            "assignment indices out of range on day " + std::to_string(f.day));
        return false;
      }
    }
    return true;
  }

  void check_schedule(const Patient& p, const PatientSchedule& s) {
    const Protocol& proto = inst.protocol_of(p);
    if (static_cast<int>(s.fractions.size()) != proto.fraction_count) {
      add(ViolationCode::FractionCount, p.id,
          "expected " + std::to_string(proto.fraction_count) + " fractions, got " +
              std::to_string(s.fractions.size()));
      return;
    }
    if (!indices_ok(s)) return;

    for (std::size_t f = 0; f < s.fractions.size(); ++f) {
      if (s.fractions[f].day != s.start_day + static_cast<int>(f)) {
        add(ViolationCode::Consecutiveness, p.id,
            "fraction " + std::to_string(f + 1) + " on day " +
                std::to_string(s.fractions[f].day) + ", expected " +
                std::to_string(s.start_day + static_cast<int>(f)));
        break;
      }
    }

    for (const auto& f : s.fractions) {
      if (!proto.machine_allowed(f.machine)) {
        add(ViolationCode::MachineNotAllowed, p.id,
            "machine M" + std::to_string(f.machine));
        break;
      }
    }

    std::set<MachineId> used;
    for (const auto& f : s.fractions) used.insert(f.machine);
    if (used.size() > 1) {
      bool contained = false;
      for (const auto& g : inst.park.trajectory_groups()) {
        if (std::includes(g.begin(), g.end(), used.begin(), used.end())) {
          contained = true;
          break;
        }
      }
      if (!contained)
        add(ViolationCode::BeamGroup, p.id, "machines not within one beam group");
    }

    if (s.start_day < p.d_min || s.start_day > inst.last_start_day(p)) {
      add(ViolationCode::StartDayBounds, p.id,
          "start day " + std::to_string(s.start_day) + " outside [" +
              std::to_string(p.d_min) + ", " + std::to_string(inst.last_start_day(p)) + "]");
    } else if (!proto.allowed_start_weekdays[static_cast<std::size_t>(weekday_of(s.start_day) - 1)]) {
      add(ViolationCode::WeekdayNotAllowed, p.id,
          "start weekday " + std::to_string(weekday_of(s.start_day)));
    }
  }
};

}  // namespace

ValidationReport validate_solution(const Instance& inst, const Solution& sol) {
  ValidationReport report;
  Checker checker{inst, report};

  std::set<int> seen;
  std::vector<std::pair<const Patient*, const PatientSchedule*>> matched;
  for (const auto& s : sol.schedules) {
    int idx = inst.patient_index(s.patient_id);
    if (idx < 0) {
      checker.add(ViolationCode::UnknownPatient, s.patient_id, "");
      continue;
    }
    if (!seen.insert(s.patient_id).second) {
      checker.add(ViolationCode::DuplicatePatient, s.patient_id, "");
      continue;
    }
    matched.emplace_back(&inst.patients[static_cast<std::size_t>(idx)], &s);
  }
  for (const Patient& p : inst.patients)
    if (!seen.count(p.id))
      checker.add(ViolationCode::MissingPatient, p.id, "");

  for (auto [p, s] : matched) checker.check_schedule(*p, *s);

  // Joint capacity: billed minutes on top of the pre-occupied grid, first
  // fraction billed at dur_first.
  std::map<std::tuple<MachineId, Day, WindowId>, Minutes> load;
  for (auto [p, s] : matched) {
    const Protocol& proto = inst.protocol_of(*p);
    for (std::size_t f = 0; f < s->fractions.size(); ++f) {
      const auto& a = s->fractions[f];
      if (a.day < 1 || a.day > inst.time.weekday_count || a.machine < 1 ||
          a.machine > inst.park.machine_count || a.window < 1 ||
          a.window > inst.time.window_count)
        continue;
      load[{a.machine, a.day, a.window}] += proto.billed_duration(static_cast<int>(f));
    }
  }
  for (const auto& [cell, minutes] : load) {
    auto [m, d, w] = cell;
    Minutes total = minutes + inst.occupancy.at(m, d, w);
    if (total > inst.time.window_length(w)) {
      checker.add(ViolationCode::Capacity, 0,
                  "machine M" + std::to_string(m) + " day " + std::to_string(d) +
                      " window " + std::to_string(w) + ": " + std::to_string(total) +
                      " > " + std::to_string(inst.time.window_length(w)) + " minutes");
    }
  }

  for (const DominancePair& pair : dominance_pairs(inst)) {
    const Patient& a = inst.patients[static_cast<std::size_t>(pair.pred)];
    const Patient& b = inst.patients[static_cast<std::size_t>(pair.succ)];
    const PatientSchedule* sa = sol.schedule_for(a.id);
    const PatientSchedule* sb = sol.schedule_for(b.id);
    if (!sa || !sb) continue;
    if (sa->start_day > sb->start_day) {
      checker.add(ViolationCode::Dominance, a.id,
                  "starts day " + std::to_string(sa->start_day) + " after patient " +
                      std::to_string(b.id) + " (day " + std::to_string(sb->start_day) +
                      ") with later target");
    }
  }

  return report;
}

std::string isolation_infeasibility(const Instance& inst, const PatientSchedule& s) {
  int idx = inst.patient_index(s.patient_id);
  if (idx < 0) return "unknown patient";
  const Patient& p = inst.patients[static_cast<std::size_t>(idx)];
  const Protocol& proto = inst.protocol_of(p);
  if (static_cast<int>(s.fractions.size()) != proto.fraction_count)
    return "fraction count mismatch";
  for (std::size_t f = 0; f < s.fractions.size(); ++f) {
    const auto& a = s.fractions[f];
    if (a.day < 1 || a.day > inst.time.weekday_count) return "day out of range";
    if (a.machine < 1 || a.machine > inst.park.machine_count) return "machine out of range";
    if (a.window < 1 || a.window > inst.time.window_count) return "window out of range";
    if (a.day != s.start_day + static_cast<int>(f)) return "fractions not consecutive";
    if (!proto.machine_allowed(a.machine)) return "machine not allowed";
    Minutes billed = proto.billed_duration(static_cast<int>(f));
    if (residual_capacity(inst.occupancy, inst.time, a.machine, a.day, a.window) < billed)
      return "insufficient residual capacity on day " + std::to_string(a.day);
  }
  if (!inst.start_day_allowed(p, s.start_day)) return "start day not allowed";
  std::set<MachineId> used;
  for (const auto& f : s.fractions) used.insert(f.machine);
  if (used.size() > 1) {
    bool contained = false;
    for (const auto& g : inst.park.trajectory_groups())
      if (std::includes(g.begin(), g.end(), used.begin(), used.end())) {
        contained = true;
        break;
      }
    if (!contained) return "machines not within one beam group";
  }
  return "";
}

}  // namespace rts
