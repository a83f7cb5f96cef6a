#include "rsched/instance.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "json.hpp"
#include "rsched/random.h"

namespace rsched {

using json = nlohmann::json;

absl::StatusOr<Instance> Instance::Create(int num_machines,
                                          std::vector<JobData> jobs) {
  if (num_machines <= 0) {
    return absl::InvalidArgumentError("number of machines must be positive");
  }
  if (jobs.empty()) {
    return absl::InvalidArgumentError("instance has no jobs");
  }
  Instance inst;
  inst.num_machines_ = num_machines;
  const size_t m = static_cast<size_t>(num_machines);
  for (size_t j = 0; j < jobs.size(); ++j) {
    const JobData& job = jobs[j];
    if (job.sizes.size() != m) {
      return absl::InvalidArgumentError(absl::StrCat(
          "job ", j, " has ", job.sizes.size(), " sizes, expected ", m));
    }
    if (job.releases.size() != 1 && job.releases.size() != m) {
      return absl::InvalidArgumentError(absl::StrCat(
          "job ", j, " needs 1 or ", m, " releases, got ",
          job.releases.size()));
    }
    if (!std::isfinite(job.weight) || job.weight < 0.0) {
      return absl::InvalidArgumentError(
          absl::StrCat("job ", j, " has invalid weight ", job.weight));
    }
    bool any_allowed = false;
    for (size_t i = 0; i < m; ++i) {
      const int64_t p = job.sizes[i];
      if (p == kForbidden) continue;
      if (p <= 0) {
        return absl::InvalidArgumentError(absl::StrCat(
            "job ", j, " has non-positive size ", p, " on machine ", i));
      }
      any_allowed = true;
    }
    if (!any_allowed) {
      return absl::InvalidArgumentError(
          absl::StrCat("job ", j, " is forbidden on every machine"));
    }
    for (int64_t r : job.releases) {
      if (r < 0) {
        return absl::InvalidArgumentError(
            absl::StrCat("job ", j, " has negative release ", r));
      }
    }
    if (job.releases.size() == m && m > 1) inst.machine_releases_ = true;
    for (size_t i = 0; i < m; ++i) {
      inst.sizes_.push_back(job.sizes[i]);
      inst.releases_.push_back(job.releases.size() == 1 ? job.releases[0]
                                                        : job.releases[i]);
    }
    inst.weights_.push_back(job.weight);
  }
  return inst;
}

int64_t Instance::Release(int job) const {
  int64_t best = -1;
  for (int i = 0; i < num_machines_; ++i) {
    if (!Allowed(job, i)) continue;
    if (best < 0 || Release(job, i) < best) best = Release(job, i);
  }
  return best;
}

int Instance::FastestMachine(int job) const {
  int best = -1;
  for (int i = 0; i < num_machines_; ++i) {
    if (!Allowed(job, i)) continue;
    if (best < 0 || Size(job, i) < Size(job, best)) best = i;
  }
  return best;
}

int64_t Instance::Horizon() const {
  int64_t total = 0;
  int64_t max_release = 0;
  for (int j = 0; j < num_jobs(); ++j) {
    for (int i = 0; i < num_machines_; ++i) {
      if (!Allowed(j, i)) continue;
      total += Size(j, i);
      max_release = std::max(max_release, Release(j, i));
    }
  }
  return total + max_release;
}

namespace {

absl::StatusOr<int64_t> ReadInteger(const json& value, std::string_view what) {
  if (value.is_number_integer()) return value.get<int64_t>();
  if (value.is_number_float()) {
    const double d = value.get<double>();
    if (std::floor(d) == d && std::abs(d) < 9e15) {
      return static_cast<int64_t>(d);
    }
  }
  return absl::InvalidArgumentError(
      absl::StrCat(std::string(what), " must be an integer, got ", value.dump()));
}

}  // namespace

absl::StatusOr<Instance> ParseInstance(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    return absl::InvalidArgumentError(
        absl::StrCat("malformed instance document: ", e.what()));
  }
  if (!doc.is_object()) {
    return absl::InvalidArgumentError("instance document must be an object");
  }
  if (!doc.contains("machines")) {
    return absl::InvalidArgumentError("missing field 'machines'");
  }
  if (!doc.contains("jobs") || !doc["jobs"].is_array()) {
    return absl::InvalidArgumentError("missing or non-array field 'jobs'");
  }
  auto machines = ReadInteger(doc["machines"], "machines");
  if (!machines.ok()) return machines.status();
  if (*machines <= 0 || *machines > 1'000'000) {
    return absl::InvalidArgumentError("'machines' must be positive");
  }
  std::vector<JobData> jobs;
  int index = 0;
  for (const json& entry : doc["jobs"]) {
    const std::string where = absl::StrCat("jobs[", index++, "]");
    if (!entry.is_object()) {
      return absl::InvalidArgumentError(where + " must be an object");
    }
    for (const char* field : {"release", "weight", "sizes"}) {
      if (!entry.contains(field)) {
        return absl::InvalidArgumentError(
            absl::StrCat(where, " is missing field '", field, "'"));
      }
    }
    JobData job;
    const json& release = entry["release"];
    if (release.is_array()) {
      for (const json& r : release) {
        auto value = ReadInteger(r, where + ".release");
        if (!value.ok()) return value.status();
        job.releases.push_back(*value);
      }
    } else {
      auto value = ReadInteger(release, where + ".release");
      if (!value.ok()) return value.status();
      job.releases.push_back(*value);
    }
    if (!entry["weight"].is_number()) {
      return absl::InvalidArgumentError(where + ".weight must be a number");
    }
    job.weight = entry["weight"].get<double>();
    if (!entry["sizes"].is_array()) {
      return absl::InvalidArgumentError(where + ".sizes must be an array");
    }
    for (const json& p : entry["sizes"]) {
      if (p.is_null()) {
        job.sizes.push_back(kForbidden);
        continue;
      }
      auto value = ReadInteger(p, where + ".sizes");
      if (!value.ok()) return value.status();
      if (*value <= 0) {
        return absl::InvalidArgumentError(
            absl::StrCat(where, " has non-positive size ", *value));
      }
      job.sizes.push_back(*value);
    }
    jobs.push_back(std::move(job));
  }
  return Instance::Create(static_cast<int>(*machines), std::move(jobs));
}

absl::StatusOr<Instance> ReadInstanceFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  std::stringstream buffer;
  buffer << in.rdbuf();
  auto inst = ParseInstance(buffer.str());
  if (!inst.ok()) {
    return absl::Status(inst.status().code(),
                        absl::StrCat(path, ": ", inst.status().message()));
  }
  return inst;
}

std::string InstanceToJson(const Instance& instance,
                           std::optional<uint64_t> seed) {
  json doc;
  doc["machines"] = instance.num_machines();
  if (seed.has_value()) doc["seed"] = *seed;
  json jobs = json::array();
  for (int j = 0; j < instance.num_jobs(); ++j) {
    json job;
    if (instance.HasMachineReleases()) {
      json releases = json::array();
      for (int i = 0; i < instance.num_machines(); ++i) {
        releases.push_back(instance.Release(j, i));
      }
      job["release"] = releases;
    } else {
      job["release"] = instance.Release(j, 0);
    }
    job["weight"] = instance.Weight(j);
    json sizes = json::array();
    for (int i = 0; i < instance.num_machines(); ++i) {
      if (instance.Allowed(j, i)) {
        sizes.push_back(instance.Size(j, i));
      } else {
        sizes.push_back(nullptr);
      }
    }
    job["sizes"] = sizes;
    jobs.push_back(job);
  }
  doc["jobs"] = jobs;
  return doc.dump(2) + "\n";
}

absl::StatusOr<ScheduleValue> EvaluateSchedule(
    const Instance& instance, const NonPreemptiveSchedule& schedule) {
  const int n = instance.num_jobs();
  if (static_cast<int>(schedule.machine.size()) != n ||
      static_cast<int>(schedule.start.size()) != n) {
    return absl::InvalidArgumentError("schedule does not cover every job");
  }
  ScheduleValue value;
  value.completion.resize(n);
  std::vector<std::vector<int>> per_machine(instance.num_machines());
  for (int j = 0; j < n; ++j) {
    const int i = schedule.machine[j];
    if (i < 0 || i >= instance.num_machines()) {
      return absl::InvalidArgumentError(
          absl::StrCat("job ", j, " assigned to unknown machine ", i));
    }
    if (!instance.Allowed(j, i)) {
      return absl::FailedPreconditionError(absl::StrCat(
          "job ", j, " assigned to forbidden machine ", i));
    }
    if (schedule.start[j] < instance.Release(j, i)) {
      return absl::FailedPreconditionError(absl::StrCat(
          "job ", j, " starts at ", schedule.start[j], " on machine ", i,
          " before its release ", instance.Release(j, i)));
    }
    value.completion[j] = schedule.start[j] + instance.Size(j, i);
    value.objective +=
        instance.Weight(j) * static_cast<double>(value.completion[j]);
    per_machine[i].push_back(j);
  }
  for (int i = 0; i < instance.num_machines(); ++i) {
    auto& jobs = per_machine[i];
    std::sort(jobs.begin(), jobs.end(), [&](int a, int b) {
      return schedule.start[a] < schedule.start[b] ||
             (schedule.start[a] == schedule.start[b] && a < b);
    });
    for (size_t k = 1; k < jobs.size(); ++k) {
      const int prev = jobs[k - 1];
      const int cur = jobs[k];
      if (schedule.start[cur] < value.completion[prev]) {
        return absl::FailedPreconditionError(absl::StrCat(
            "jobs ", prev, " and ", cur, " overlap on machine ", i,
            " at time ", schedule.start[cur] + 1));
      }
    }
  }
  return value;
}

absl::StatusOr<ScheduleValue> EvaluateSchedule(
    const Instance& instance, const PreemptiveSchedule& schedule) {
  const int n = instance.num_jobs();
  if (static_cast<int>(schedule.machine.size()) != n ||
      static_cast<int>(schedule.chains.size()) != n) {
    return absl::InvalidArgumentError("schedule does not cover every job");
  }
  ScheduleValue value;
  value.completion.resize(n);
  std::vector<std::vector<std::pair<int64_t, int>>> used(
      instance.num_machines());
  for (int j = 0; j < n; ++j) {
    const int i = schedule.machine[j];
    if (i < 0 || i >= instance.num_machines()) {
      return absl::InvalidArgumentError(
          absl::StrCat("job ", j, " assigned to unknown machine ", i));
    }
    if (!instance.Allowed(j, i)) {
      return absl::FailedPreconditionError(absl::StrCat(
          "job ", j, " assigned to forbidden machine ", i));
    }
    const Chain& chain = schedule.chains[j];
    if (chain.Length() != instance.Size(j, i)) {
      return absl::FailedPreconditionError(absl::StrCat(
          "job ", j, " chain has ", chain.Length(), " slots, size is ",
          instance.Size(j, i), " on machine ", i));
    }
    for (size_t k = 0; k < chain.slots.size(); ++k) {
      const int64_t t = chain.slots[k];
      if (k == 0 && t <= instance.Release(j, i)) {
        return absl::FailedPreconditionError(absl::StrCat(
            "job ", j, " runs in slot ", t, " on machine ", i,
            " before its release ", instance.Release(j, i)));
      }
      if (k > 0 && t <= chain.slots[k - 1]) {
        return absl::InvalidArgumentError(absl::StrCat(
            "job ", j, " chain is not strictly increasing at slot ", t));
      }
      used[i].emplace_back(t, j);
    }
    value.completion[j] = chain.Completion();
    value.objective +=
        instance.Weight(j) * static_cast<double>(value.completion[j]);
  }
  for (int i = 0; i < instance.num_machines(); ++i) {
    auto& slots = used[i];
    std::sort(slots.begin(), slots.end());
    for (size_t k = 1; k < slots.size(); ++k) {
      if (slots[k].first == slots[k - 1].first) {
        return absl::FailedPreconditionError(absl::StrCat(
            "jobs ", slots[k - 1].second, " and ", slots[k].second,
            " overlap on machine ", i, " at time ", slots[k].first));
      }
    }
  }
  return value;
}

Instance GenerateInstance(const GeneratorOptions& options, uint64_t seed) {
  Rng rng(seed);
  std::vector<JobData> jobs(options.num_jobs);
  for (JobData& job : jobs) {
    job.sizes.resize(options.num_machines);
    bool any_allowed = false;
    for (int64_t& p : job.sizes) {
      p = rng.UniformInt(1, std::max<int64_t>(1, options.p_max));
      if (options.forbidden_prob > 0.0 && rng.Bernoulli(options.forbidden_prob)) {
        p = kForbidden;
      } else {
        any_allowed = true;
      }
    }
    if (!any_allowed) {
      const auto i = rng.UniformInt(0, options.num_machines - 1);
      job.sizes[i] = rng.UniformInt(1, std::max<int64_t>(1, options.p_max));
    }
    job.releases = {rng.UniformInt(0, std::max<int64_t>(0, options.r_max))};
    job.weight =
        static_cast<double>(rng.UniformInt(1, std::max<int64_t>(1, options.w_max)));
  }
  auto inst = Instance::Create(options.num_machines, std::move(jobs));
  return *std::move(inst);
}

}  // namespace rsched
