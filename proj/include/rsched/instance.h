#ifndef RSCHED_INSTANCE_H_
#define RSCHED_INSTANCE_H_

// Problem data for minimizing total weighted completion time on unrelated
// machines with release times, and evaluation of the two schedule kinds the
// toolkit produces.
//
// Sizes, releases and times are exact 64-bit integers; weights are doubles.
// A job may be forbidden on a machine, which is represented by an explicit
// sentinel rather than a huge size so that horizons stay small.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "rsched/chain.h"

namespace rsched {

inline constexpr int64_t kForbidden = -1;

struct JobData {
  // One entry per machine; kForbidden where the job cannot run.
  std::vector<int64_t> sizes;
  // Either a single release for all machines or one per machine.
  std::vector<int64_t> releases;
  double weight = 1.0;
};

class Instance {
 public:
  // Validates and builds an instance. Every job needs at least one allowed
  // machine, sizes must be positive, releases and weights non-negative.
  static absl::StatusOr<Instance> Create(int num_machines,
                                         std::vector<JobData> jobs);

  int num_machines() const { return num_machines_; }
  int num_jobs() const { return static_cast<int>(weights_.size()); }

  bool Allowed(int job, int machine) const {
    return sizes_[Index(job, machine)] != kForbidden;
  }
  // kForbidden when the job cannot run on the machine.
  int64_t Size(int job, int machine) const {
    return sizes_[Index(job, machine)];
  }
  int64_t Release(int job, int machine) const {
    return releases_[Index(job, machine)];
  }
  // Smallest release of the job over its allowed machines.
  int64_t Release(int job) const;
  double Weight(int job) const { return weights_[job]; }

  // True when some job was given per-machine releases.
  bool HasMachineReleases() const { return machine_releases_; }

  // Allowed machine with the smallest size; ties go to the lower index.
  int FastestMachine(int job) const;

  // T = sum of all allowed sizes + max release.
  int64_t Horizon() const;

 private:
  Instance() = default;
  size_t Index(int job, int machine) const {
    return static_cast<size_t>(job) * num_machines_ + machine;
  }

  int num_machines_ = 0;
  std::vector<int64_t> sizes_;
  std::vector<int64_t> releases_;
  std::vector<double> weights_;
  bool machine_releases_ = false;
};

// Parses the JSON instance document:
//   {"machines": m,
//    "jobs": [{"release": r | [r per machine], "weight": w,
//              "sizes": [p or null per machine]}, ...]}
// null marks a forbidden machine. Other top-level fields are ignored.
absl::StatusOr<Instance> ParseInstance(std::string_view text);
absl::StatusOr<Instance> ReadInstanceFile(const std::string& path);

// Serializes in the format accepted by ParseInstance; the generator seed is
// embedded as a top-level "seed" field when given.
std::string InstanceToJson(const Instance& instance,
                           std::optional<uint64_t> seed = std::nullopt);

struct NonPreemptiveSchedule {
  std::vector<int> machine;     // per job
  std::vector<int64_t> start;   // per job; runs during (start, start + p]
};

struct PreemptiveSchedule {
  std::vector<int> machine;     // per job
  std::vector<Chain> chains;    // per job, on machine[j]
};

struct ScheduleValue {
  double objective = 0.0;
  std::vector<int64_t> completion;
};

// Validates the schedule and returns sum_j w_j C_j. Errors name the offending
// job, machine and time.
absl::StatusOr<ScheduleValue> EvaluateSchedule(
    const Instance& instance, const NonPreemptiveSchedule& schedule);
absl::StatusOr<ScheduleValue> EvaluateSchedule(
    const Instance& instance, const PreemptiveSchedule& schedule);

struct GeneratorOptions {
  int num_jobs = 5;
  int num_machines = 2;
  int64_t p_max = 6;
  int64_t r_max = 8;
  int64_t w_max = 5;
  double forbidden_prob = 0.0;
};

// Random instance: p uniform in [1, p_max], r in [0, r_max], integer w in
// [1, w_max], each (job, machine) forbidden with probability forbidden_prob
// (a job never ends up with every machine forbidden).
Instance GenerateInstance(const GeneratorOptions& options, uint64_t seed);

}  // namespace rsched

#endif  // RSCHED_INSTANCE_H_
