#pragma once

#include <string>
#include <vector>

#include "rts/domain.hpp"

namespace rts {

enum class ViolationCode {
  UnknownPatient,    // schedule for a patient not in the instance
  DuplicatePatient,  // two schedules for the same patient
  MissingPatient,    // instance patient without a schedule
  FractionCount,     // number of assignments != protocol fraction count
  Consecutiveness,   // fraction f not on start_day + f - 1
  MachineNotAllowed,
  BeamGroup,         // course not contained in one beam group with the start machine
  StartDayBounds,    // outside [d_min, D_w - F + 1] or day/window index out of range
  WeekdayNotAllowed,
  Capacity,          // cell over window length, first fraction billed at dur_first
  Dominance,         // same-protocol patient with earlier target starts later
};

const char* to_string(ViolationCode c);

struct Violation {
  ViolationCode code;
  int patient_id = 0;  // 0 when not tied to a single patient
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool valid() const { return violations.empty(); }
  bool has(ViolationCode c) const;
  std::string summary() const;
};

// Never throws for bad solutions: every broken rule becomes a report entry.
ValidationReport validate_solution(const Instance& inst, const Solution& sol);

// Single-schedule feasibility against the pre-occupied grid only (the check
// the pricing subproblem is allowed to rely on). Empty string means feasible.
std::string isolation_infeasibility(const Instance& inst, const PatientSchedule& s);

}  // namespace rts
