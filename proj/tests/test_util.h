#ifndef RSCHED_TESTS_TEST_UTIL_H_
#define RSCHED_TESTS_TEST_UTIL_H_

#include <cstdint>
#include <vector>

#include "gtest/gtest.h"
#include "rsched/instance.h"

namespace rsched {

// Same release on every machine.
inline Instance MakeInstance(int machines,
                             const std::vector<std::vector<int64_t>>& sizes,
                             const std::vector<int64_t>& releases,
                             const std::vector<double>& weights) {
  std::vector<JobData> jobs;
  for (size_t j = 0; j < sizes.size(); ++j) {
    jobs.push_back({sizes[j], {releases[j]}, weights[j]});
  }
  auto inst = Instance::Create(machines, std::move(jobs));
  EXPECT_TRUE(inst.ok()) << inst.status();
  return *std::move(inst);
}

}  // namespace rsched

#endif  // RSCHED_TESTS_TEST_UTIL_H_
