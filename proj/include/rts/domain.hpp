#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rts {

using Minutes = int;   // durations and capacities are whole minutes
using MachineId = int; // 1-based
using Day = int;       // 1-based weekday ordinal; weekends are compressed away
using WindowId = int;  // 1-based

class RtsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Priority { A, B, C };

int priority_weight(Priority p);  // A=10, B=3, C=1
char priority_letter(Priority p);
Priority priority_from_letter(char c);

// Day 1 is a Monday; returns 1..5.
inline int weekday_of(Day d) { return (d - 1) % 5 + 1; }

enum class SwitchKind { Same, Complete, Partial, Forbidden };
const char* to_string(SwitchKind k);

/// Linac park with beam-match structure. Switching inside a complete group is
/// free; a switch between machines that only share a partial group is priced
/// by objective component f6; machines sharing no group cannot be switched
/// between mid-course.
struct MachinePark {
  int machine_count = 0;
  std::vector<std::vector<MachineId>> complete_groups;
  std::vector<std::vector<MachineId>> partial_groups;

  // Filled by finalize(); -1 where a machine belongs to no group of the kind.
  std::vector<int> complete_group_of;
  std::vector<int> partial_group_of;

  // Validates group membership (a machine may appear in at most one group of
  // each kind) and builds the lookup tables. Must be called after edits.
  void finalize();

  SwitchKind switch_kind(MachineId a, MachineId b) const;

  // Candidate machine sets a single course may stay within: every beam group
  // plus a singleton for each machine that belongs to no group. A course that
  // never switches machines is always representable.
  std::vector<std::vector<MachineId>> trajectory_groups() const;
};

struct Protocol {
  std::string name;
  Priority priority = Priority::C;
  Minutes dur_first = 0;  // first fraction includes setup time
  Minutes dur_other = 0;
  int fraction_count = 0;
  std::vector<MachineId> allowed_machines;    // sorted ascending
  std::vector<MachineId> preferred_machines;  // sorted, subset of allowed
  std::array<bool, 5> allowed_start_weekdays{true, true, true, true, true};

  bool machine_allowed(MachineId m) const;
  bool machine_preferred(MachineId m) const;
  Minutes billed_duration(int fraction_index) const {  // 0-based
    return fraction_index == 0 ? dur_first : dur_other;
  }
};

struct Patient {
  int id = 0;        // unique, positive
  int protocol = 0;  // index into Instance::protocols
  Day d_min = 1;     // earliest start day
  Day d_target = 1;  // latest start day before the waiting-time target is violated
  std::optional<WindowId> window_pref;
  bool placeholder = false;
};

struct TimeGrid {
  int weekday_count = 0;
  int window_count = 0;
  std::vector<Minutes> window_lengths;

  Minutes window_length(WindowId w) const { return window_lengths[static_cast<std::size_t>(w - 1)]; }
};

/// Minutes already booked per (machine, day, window). Cells outside the
/// stored day range read as empty.
struct OccupancyGrid {
  int machines = 0;
  int days = 0;
  int windows = 0;
  std::vector<Minutes> booked;

  OccupancyGrid() = default;
  OccupancyGrid(int machines_, int days_, int windows_)
      : machines(machines_), days(days_), windows(windows_),
        booked(static_cast<std::size_t>(machines_) * days_ * windows_, 0) {}

  Minutes at(MachineId m, Day d, WindowId w) const {
    if (d > days) return 0;
    return booked[index(m, d, w)];
  }
  void add(MachineId m, Day d, WindowId w, Minutes v) {
    ensure_days(d);
    booked[index(m, d, w)] += v;
  }
  void set(MachineId m, Day d, WindowId w, Minutes v) {
    ensure_days(d);
    booked[index(m, d, w)] = v;
  }
  void ensure_days(Day d);

 private:
  std::size_t index(MachineId m, Day d, WindowId w) const {
    return (static_cast<std::size_t>(m - 1) * days + (d - 1)) * windows + (w - 1);
  }
};

struct FractionAssignment {
  Day day = 0;
  MachineId machine = 0;
  WindowId window = 0;
  bool operator==(const FractionAssignment&) const = default;
};

/// One patient's complete course: the unit selected by the master problem.
struct PatientSchedule {
  int patient_id = 0;
  Day start_day = 0;
  std::vector<FractionAssignment> fractions;

  bool operator==(const PatientSchedule&) const = default;

  // Dedup / ordering key: (start_day, day, machine, window, ...) flattened.
  std::vector<int> assignment_key() const;
};

struct Instance {
  MachinePark park;
  TimeGrid time;
  std::vector<Protocol> protocols;
  std::vector<Patient> patients;
  OccupancyGrid occupancy;

  const Protocol& protocol_of(const Patient& p) const {
    return protocols[static_cast<std::size_t>(p.protocol)];
  }
  int priority_weight_of(const Patient& p) const {
    return priority_weight(protocol_of(p).priority);
  }
  // Last day on which the whole course still fits into the horizon.
  Day last_start_day(const Patient& p) const {
    return time.weekday_count - protocol_of(p).fraction_count + 1;
  }
  bool start_day_allowed(const Patient& p, Day d) const;

  int patient_index(int patient_id) const;  // -1 when unknown

  // Structural sanity of the instance itself (cross-references, grid bounds,
  // at least one machine with residual capacity per patient). Throws RtsError
  // with a description of the first defect.
  void check() const;
};

Minutes residual_capacity(const OccupancyGrid& grid, const TimeGrid& time,
                          MachineId m, Day d, WindowId w);

/// Consecutive same-protocol pairs ordered by (d_target, patient id): the
/// first patient of each pair must not start later than the second.
struct DominancePair {
  int pred = 0;  // patient index
  int succ = 0;
};
std::vector<DominancePair> dominance_pairs(const Instance& inst);

enum class SolveStatus { Optimal, Feasible, TimeoutIncumbent, NoIncumbent, Infeasible };
const char* to_string(SolveStatus s);

struct SolutionBreakdown {
  std::array<long long, 6> f{0, 0, 0, 0, 0, 0};
  bool operator==(const SolutionBreakdown&) const = default;
};

struct Solution {
  std::vector<PatientSchedule> schedules;  // sorted by patient id
  double objective = 0.0;                  // offset-inclusive (1 + weighted sum)
  double bound = 0.0;
  double relative_gap = 0.0;
  SolutionBreakdown breakdown;
  SolveStatus status = SolveStatus::Feasible;

  const PatientSchedule* schedule_for(int patient_id) const;
  void sort_by_patient();
};

}  // namespace rts
