#include "rsched/instance.h"

#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "rsched/random.h"
#include "test_util.h"

namespace rsched {
namespace {

TEST(ParseInstanceTest, MinimalDocument) {
  auto inst = ParseInstance(
      R"({"machines": 1, "jobs": [{"release": 0, "weight": 1, "sizes": [3]}]})");
  ASSERT_TRUE(inst.ok()) << inst.status();
  EXPECT_EQ(inst->num_machines(), 1);
  EXPECT_EQ(inst->num_jobs(), 1);
  EXPECT_EQ(inst->Size(0, 0), 3);
  EXPECT_EQ(inst->Release(0), 0);
  EXPECT_DOUBLE_EQ(inst->Weight(0), 1.0);
  EXPECT_FALSE(inst->HasMachineReleases());
}

TEST(ParseInstanceTest, NullMarksForbiddenMachine) {
  auto inst = ParseInstance(R"({"machines": 2,
      "jobs": [{"release": 0, "weight": 1, "sizes": [3, null]}]})");
  ASSERT_TRUE(inst.ok()) << inst.status();
  EXPECT_TRUE(inst->Allowed(0, 0));
  EXPECT_FALSE(inst->Allowed(0, 1));
  EXPECT_EQ(inst->Size(0, 1), kForbidden);
  EXPECT_EQ(inst->Horizon(), 3);

  NonPreemptiveSchedule s{{1}, {0}};
  auto v = EvaluateSchedule(*inst, s);
  ASSERT_FALSE(v.ok());
  EXPECT_NE(v.status().message().find("forbidden"), std::string::npos);
}

TEST(ParseInstanceTest, PerMachineReleases) {
  auto inst = ParseInstance(R"({"machines": 2,
      "jobs": [{"release": [4, 1], "weight": 2.5, "sizes": [1, 2]}]})");
  ASSERT_TRUE(inst.ok()) << inst.status();
  EXPECT_TRUE(inst->HasMachineReleases());
  EXPECT_EQ(inst->Release(0, 0), 4);
  EXPECT_EQ(inst->Release(0, 1), 1);
  EXPECT_EQ(inst->Release(0), 1);
}

TEST(ParseInstanceTest, SchemaViolations) {
  const std::vector<std::string> bad = {
      "not json",
      "[]",
      R"({"jobs": []})",
      R"({"machines": 1})",
      R"({"machines": 0, "jobs": [{"release": 0, "weight": 1, "sizes": [1]}]})",
      R"({"machines": 1, "jobs": []})",
      // missing weight
      R"({"machines": 1, "jobs": [{"release": 0, "sizes": [3]}]})",
      R"({"machines": 1, "jobs": [{"weight": 1, "sizes": [3]}]})",
      R"({"machines": 1, "jobs": [{"release": 0, "weight": 1}]})",
      R"({"machines": 1, "jobs": [{"release": 0, "weight": -1, "sizes": [3]}]})",
      R"({"machines": 1, "jobs": [{"release": 0, "weight": 1, "sizes": [-3]}]})",
      R"({"machines": 1, "jobs": [{"release": 0, "weight": 1, "sizes": [0]}]})",
      R"({"machines": 1, "jobs": [{"release": -2, "weight": 1, "sizes": [3]}]})",
      R"({"machines": 1, "jobs": [{"release": 0, "weight": 1, "sizes": [1.5]}]})",
      R"({"machines": 2, "jobs": [{"release": 0, "weight": 1, "sizes": [3]}]})",
      R"({"machines": 2,
          "jobs": [{"release": 0, "weight": 1, "sizes": [null, null]}]})",
      R"({"machines": 2,
          "jobs": [{"release": [0, 1, 2], "weight": 1, "sizes": [1, 1]}]})",
  };
  for (const std::string& text : bad) {
    EXPECT_FALSE(ParseInstance(text).ok()) << text;
  }
}

TEST(ParseInstanceTest, RoundTripsThroughJson) {
  GeneratorOptions opts;
  opts.num_jobs = 6;
  opts.num_machines = 3;
  opts.forbidden_prob = 0.3;
  const Instance inst = GenerateInstance(opts, 12);
  const std::string text = InstanceToJson(inst, 12);
  EXPECT_NE(text.find("\"seed\""), std::string::npos);
  auto back = ParseInstance(text);
  ASSERT_TRUE(back.ok()) << back.status();
  ASSERT_EQ(back->num_jobs(), inst.num_jobs());
  for (int j = 0; j < inst.num_jobs(); ++j) {
    EXPECT_EQ(back->Weight(j), inst.Weight(j));
    for (int i = 0; i < inst.num_machines(); ++i) {
      EXPECT_EQ(back->Size(j, i), inst.Size(j, i));
      EXPECT_EQ(back->Release(j, i), inst.Release(j, i));
    }
  }
  EXPECT_EQ(InstanceToJson(*back, 12), text);
}

TEST(HorizonTest, DirectFormula) {
  EXPECT_EQ(MakeInstance(2, {{3, 5}}, {2}, {1}).Horizon(), 10);
  EXPECT_EQ(MakeInstance(1, {{1}, {4}}, {0, 0}, {1, 1}).Horizon(), 5);
  EXPECT_EQ(MakeInstance(1, {{1}}, {100}, {1}).Horizon(), 101);
  EXPECT_EQ(MakeInstance(2, {{3, kForbidden}, {2, 2}}, {1, 4}, {1, 1})
                .Horizon(),
            11);
}

TEST(HorizonTest, AddingAJobNeverShrinks) {
  GeneratorOptions opts;
  opts.num_machines = 2;
  for (uint64_t seed = 0; seed < 20; ++seed) {
    opts.num_jobs = 5;
    const Instance a = GenerateInstance(opts, seed);
    std::vector<std::vector<int64_t>> sizes;
    std::vector<int64_t> releases;
    std::vector<double> weights;
    for (int j = 0; j < a.num_jobs(); ++j) {
      sizes.push_back({a.Size(j, 0), a.Size(j, 1)});
      releases.push_back(a.Release(j));
      weights.push_back(a.Weight(j));
    }
    sizes.push_back({1, kForbidden});
    releases.push_back(0);
    weights.push_back(1);
    EXPECT_GE(MakeInstance(2, sizes, releases, weights).Horizon(),
              a.Horizon());
  }
}

TEST(EvaluateTest, NonPreemptiveExamples) {
  const Instance one = MakeInstance(1, {{3}}, {0}, {2});
  auto v = EvaluateSchedule(one, NonPreemptiveSchedule{{0}, {0}});
  ASSERT_TRUE(v.ok());
  EXPECT_DOUBLE_EQ(v->objective, 6.0);

  const Instance two = MakeInstance(1, {{1}, {2}}, {0, 0}, {1, 1});
  auto w = EvaluateSchedule(two, NonPreemptiveSchedule{{0, 0}, {0, 1}});
  ASSERT_TRUE(w.ok());
  EXPECT_EQ(w->completion, (std::vector<int64_t>{1, 3}));
  EXPECT_DOUBLE_EQ(w->objective, 4.0);
  // The other order costs 2 + 3.
  auto x = EvaluateSchedule(two, NonPreemptiveSchedule{{0, 0}, {2, 0}});
  ASSERT_TRUE(x.ok());
  EXPECT_DOUBLE_EQ(x->objective, 5.0);
}

TEST(EvaluateTest, PreemptiveChain) {
  const Instance inst = MakeInstance(1, {{2}}, {0}, {1});
  PreemptiveSchedule s;
  s.machine = {0};
  s.chains = {Chain{0, 0, {1, 3}}};
  auto v = EvaluateSchedule(inst, s);
  ASSERT_TRUE(v.ok()) << v.status();
  EXPECT_EQ(v->completion[0], 3);
  EXPECT_DOUBLE_EQ(v->objective, 3.0);
}

TEST(EvaluateTest, NonPreemptiveErrorsNameTheCulprit) {
  const Instance inst =
      MakeInstance(2, {{2, 2}, {3, kForbidden}}, {0, 4}, {1, 1});
  auto overlap = EvaluateSchedule(inst, NonPreemptiveSchedule{{0, 0}, {4, 5}});
  ASSERT_FALSE(overlap.ok());
  EXPECT_NE(overlap.status().message().find("overlap on machine 0 at time 6"),
            std::string::npos)
      << overlap.status();

  auto early = EvaluateSchedule(inst, NonPreemptiveSchedule{{0, 0}, {0, 3}});
  ASSERT_FALSE(early.ok());
  EXPECT_NE(early.status().message().find("job 1 starts at 3"),
            std::string::npos)
      << early.status();

  auto forbidden =
      EvaluateSchedule(inst, NonPreemptiveSchedule{{0, 1}, {0, 4}});
  ASSERT_FALSE(forbidden.ok());
  EXPECT_NE(forbidden.status().message().find("forbidden machine 1"),
            std::string::npos);

  EXPECT_FALSE(EvaluateSchedule(inst, NonPreemptiveSchedule{{0}, {0}}).ok());
  // Touching intervals are fine.
  EXPECT_TRUE(
      EvaluateSchedule(inst, NonPreemptiveSchedule{{0, 0}, {2, 4}}).ok());
}

TEST(EvaluateTest, PreemptiveErrors) {
  const Instance inst = MakeInstance(1, {{2}, {1}}, {0, 1}, {1, 1});
  PreemptiveSchedule s;
  s.machine = {0, 0};
  s.chains = {Chain{0, 0, {1, 2}}, Chain{0, 1, {2}}};
  auto overlap = EvaluateSchedule(inst, s);
  ASSERT_FALSE(overlap.ok());
  EXPECT_NE(overlap.status().message().find("at time 2"), std::string::npos);

  s.chains = {Chain{0, 0, {2, 3}}, Chain{0, 1, {1}}};
  auto early = EvaluateSchedule(inst, s);
  ASSERT_FALSE(early.ok());
  EXPECT_NE(early.status().message().find("before its release"),
            std::string::npos);

  s.chains = {Chain{0, 0, {1, 3, 4}}, Chain{0, 1, {2}}};
  EXPECT_FALSE(EvaluateSchedule(inst, s).ok());
  s.chains = {Chain{0, 0, {3, 1}}, Chain{0, 1, {2}}};
  EXPECT_FALSE(EvaluateSchedule(inst, s).ok());
  s.chains = {Chain{0, 0, {1, 3}}, Chain{0, 1, {2}}};
  auto ok = EvaluateSchedule(inst, s);
  ASSERT_TRUE(ok.ok()) << ok.status();
  EXPECT_DOUBLE_EQ(ok->objective, 5.0);
}

// Accepted schedules never put two jobs on a machine in the same slot.
TEST(EvaluateTest, AcceptedSchedulesPassSlotSweep) {
  GeneratorOptions opts;
  opts.num_jobs = 4;
  opts.num_machines = 2;
  opts.p_max = 3;
  opts.r_max = 3;
  Rng rng(3);
  int accepted = 0;
  for (int rep = 0; rep < 400; ++rep) {
    const Instance inst = GenerateInstance(opts, rep);
    NonPreemptiveSchedule s;
    for (int j = 0; j < inst.num_jobs(); ++j) {
      s.machine.push_back(static_cast<int>(rng.UniformInt(0, 1)));
      s.start.push_back(rng.UniformInt(0, 8));
    }
    auto v = EvaluateSchedule(inst, s);
    if (!v.ok()) continue;
    ++accepted;
    const int64_t T = 8 + 3;
    for (int i = 0; i < 2; ++i) {
      for (int64_t t = 1; t <= T; ++t) {
        int active = 0;
        for (int j = 0; j < inst.num_jobs(); ++j) {
          if (s.machine[j] == i && s.start[j] < t && t <= v->completion[j]) {
            ++active;
          }
        }
        EXPECT_LE(active, 1);
      }
    }
  }
  EXPECT_GT(accepted, 10);
}

}  // namespace
}  // namespace rsched
