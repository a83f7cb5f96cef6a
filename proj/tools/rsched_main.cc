// rsched: command-line front end.
//
// Exit status: 0 on success, 2 on usage errors, 1 when a computation fails
// (bad instance file, infeasible LP, oracle guard exceeded, ...).
//
// CSV reports start with "# key=value" lines for scalar results, followed by
// a header row and data rows. JSON reports hold the same data in one object.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "json.hpp"
#include "rsched/chain_lp.h"
#include "rsched/exact_oracle.h"
#include "rsched/instance.h"
#include "rsched/interval_lp.h"
#include "rsched/lowerbound_bench.h"
#include "rsched/lp_solver.h"
#include "rsched/nonpreemptive_rounding.h"
#include "rsched/offset_distribution.h"
#include "rsched/preemptive_rounding.h"
#include "rsched/random.h"
#include "rsched/trials.h"

namespace rsched {
namespace {

using Json = nlohmann::ordered_json;

struct Globals {
  uint64_t seed = 1;
  std::string format = "csv";
  std::string out;
  int threads = 1;
  bool seed_given = false;
  bool Json() const { return format == "json"; }
};

std::string Num(double v) { return absl::StrFormat("%.12g", v); }

absl::Status Emit(const Globals& g, const std::string& text) {
  if (g.out.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
    std::fflush(stdout);
    return absl::OkStatus();
  }
  std::ofstream file(g.out, std::ios::binary);
  if (!file) return absl::NotFoundError(absl::StrCat("cannot write ", g.out));
  file << text;
  return file ? absl::OkStatus()
              : absl::DataLossError(absl::StrCat("write failed: ", g.out));
}

absl::StatusOr<IntervalMode> ParseMode(const std::string& mode) {
  if (mode == "auto") return IntervalMode::kAuto;
  if (mode == "full") return IntervalMode::kFull;
  if (mode == "compressed") return IntervalMode::kCompressed;
  return absl::InvalidArgumentError(absl::StrCat("unknown mode ", mode));
}

// ---------------------------------------------------------------------------

struct GenArgs {
  GeneratorOptions options;
};

absl::Status RunGen(const Globals& g, const GenArgs& a) {
  const Instance inst = GenerateInstance(a.options, g.seed);
  return Emit(g, InstanceToJson(inst, g.seed));
}

struct IntervalArgs {
  std::string instance;
  std::string mode = "auto";
  double epsilon = 0.5;
  std::string dump_lp;
};

absl::StatusOr<FractionalIntervalSolution> SolveInterval(
    const Instance& inst, const IntervalArgs& a) {
  auto mode = ParseMode(a.mode);
  if (!mode.ok()) return mode.status();
  return SolveIntervalLp(inst, *mode, a.epsilon);
}

absl::Status RunSolveInterval(const Globals& g, const IntervalArgs& a) {
  auto inst = ReadInstanceFile(a.instance);
  if (!inst.ok()) return inst.status();
  if (!a.dump_lp.empty()) {
    auto mode = ParseMode(a.mode);
    if (!mode.ok()) return mode.status();
    const bool full = *mode == IntervalMode::kFull ||
                      (*mode == IntervalMode::kAuto && inst->Horizon() <= 1000);
    absl::StatusOr<IntervalLp> lp;
    if (full) {
      lp = BuildIntervalLp(*inst, nullptr);
    } else {
      auto starts = CompressStartTimes(*inst, a.epsilon);
      if (!starts.ok()) return starts.status();
      lp = BuildIntervalLp(*inst, &*starts);
    }
    if (!lp.ok()) return lp.status();
    std::ofstream file(a.dump_lp, std::ios::binary);
    if (!file) return absl::NotFoundError("cannot write LP dump");
    file << ToLpFormat(lp->lp);
  }
  auto sol = SolveInterval(*inst, a);
  if (!sol.ok()) return sol.status();
  if (g.Json()) {
    Json j;
    j["objective"] = sol->objective;
    j["horizon"] = sol->horizon;
    Json entries = Json::array();
    for (const IntervalEntry& e : sol->entries) {
      entries.push_back(
          {{"machine", e.machine}, {"job", e.job}, {"start", e.start},
           {"y", e.y}});
    }
    j["entries"] = std::move(entries);
    return Emit(g, j.dump(2) + "\n");
  }
  return Emit(g, absl::StrCat("# objective=", Num(sol->objective),
                              "\n# horizon=", sol->horizon, "\n",
                              FractionalSolutionToCsv(*sol)));
}

struct ChainArgs {
  std::string instance;
  bool compressed = false;
  double epsilon = 0.5;
};

absl::StatusOr<ChainSolution> SolveChain(const Instance& inst,
                                         const ChainArgs& a) {
  ChainLpOptions opts;
  opts.compressed = a.compressed;
  opts.epsilon = a.epsilon;
  return SolveChainLp(inst, opts);
}

absl::Status RunSolveChain(const Globals& g, const ChainArgs& a) {
  auto inst = ReadInstanceFile(a.instance);
  if (!inst.ok()) return inst.status();
  auto sol = SolveChain(*inst, a);
  if (!sol.ok()) return sol.status();
  if (g.Json()) {
    Json j;
    j["objective"] = sol->objective;
    j["pricing_gap"] = sol->pricing_gap;
    j["rounds"] = sol->rounds;
    j["stalled"] = sol->stalled;
    Json cols = Json::array();
    for (const ChainColumn& c : sol->columns) {
      cols.push_back({{"machine", c.chain.machine},
                      {"job", c.chain.job},
                      {"z", c.z},
                      {"slots", c.chain.slots}});
    }
    j["columns"] = std::move(cols);
    return Emit(g, j.dump(2) + "\n");
  }
  return Emit(g, absl::StrCat("# objective=", Num(sol->objective),
                              "\n# pricing_gap=", Num(sol->pricing_gap),
                              "\n# rounds=", sol->rounds, "\n# stalled=",
                              sol->stalled ? 1 : 0, "\n",
                              ChainSolutionToCsv(*sol)));
}

// Shared by both rounding subcommands.
struct TrialRecord {
  double objective = 0.0;
  std::vector<int64_t> completion;
};

template <typename Rounder>
absl::Status EmitRounding(const Globals& g, const Rounder& rounder,
                          const std::string& dist_name, double lp_objective,
                          int num_jobs, int64_t trials, bool per_job) {
  if (trials < 1) return absl::InvalidArgumentError("--trials must be >= 1");
  if (!(lp_objective > 0.0)) {
    return absl::InvalidArgumentError("relaxation objective is zero");
  }
  std::vector<TrialRecord> records(static_cast<size_t>(trials));
  ForEachTrial(trials, g.threads, [&](int64_t t) {
    Rng rng = Rng::ForTrial(g.seed, static_cast<uint64_t>(t));
    RoundingOutcome out = rounder.RoundOnce(rng);
    records[t].objective = out.objective;
    records[t].completion = std::move(out.completion);
  });
  std::vector<double> ratios;
  for (const TrialRecord& r : records) {
    ratios.push_back(r.objective / lp_objective);
  }
  const MeanEstimate ratio = EstimateMean(ratios);
  std::vector<MeanEstimate> job_mean;
  for (int j = 0; j < num_jobs; ++j) {
    std::vector<double> c;
    for (const TrialRecord& r : records) {
      c.push_back(static_cast<double>(r.completion[j]));
    }
    job_mean.push_back(EstimateMean(c));
  }

  if (g.Json()) {
    Json j;
    j["dist"] = dist_name;
    j["lp_objective"] = lp_objective;
    j["trials"] = trials;
    j["mean_ratio"] = ratio.mean;
    j["stderr"] = ratio.std_error;
    Json rows = Json::array();
    for (size_t t = 0; t < records.size(); ++t) {
      Json row = {{"trial", t},
                  {"objective", records[t].objective},
                  {"ratio", ratios[t]}};
      if (per_job) row["completion"] = records[t].completion;
      rows.push_back(std::move(row));
    }
    j["rows"] = std::move(rows);
    if (per_job) {
      Json jobs = Json::array();
      for (int k = 0; k < num_jobs; ++k) {
        jobs.push_back({{"job", k},
                        {"lp_cost", rounder.job_lp_cost()[k]},
                        {"mean_completion", job_mean[k].mean},
                        {"stderr", job_mean[k].std_error}});
      }
      j["jobs"] = std::move(jobs);
    }
    return Emit(g, j.dump(2) + "\n");
  }

  std::string out = absl::StrCat(
      "# dist=", dist_name, "\n# lp_objective=", Num(lp_objective),
      "\n# trials=", trials, "\n# mean_ratio=", Num(ratio.mean),
      "\n# stderr=", Num(ratio.std_error), "\n");
  if (per_job) {
    for (int k = 0; k < num_jobs; ++k) {
      absl::StrAppend(&out, "# job", k, "=lp_cost:",
                      Num(rounder.job_lp_cost()[k]), ";mean_completion:",
                      Num(job_mean[k].mean), ";stderr:",
                      Num(job_mean[k].std_error), "\n");
    }
  }
  out += "trial,objective,ratio";
  if (per_job) {
    for (int k = 0; k < num_jobs; ++k) absl::StrAppend(&out, ",C", k);
  }
  out += "\n";
  for (size_t t = 0; t < records.size(); ++t) {
    absl::StrAppend(&out, t, ",", Num(records[t].objective), ",",
                    Num(ratios[t]));
    if (per_job) {
      for (int64_t c : records[t].completion) absl::StrAppend(&out, ",", c);
    }
    out += "\n";
  }
  return Emit(g, out);
}

struct RoundArgs {
  IntervalArgs lp;
  std::string dist = "quadratic";
  int64_t trials = 1000;
  bool per_job = false;
};

absl::Status RunRound(const Globals& g, const RoundArgs& a) {
  auto dist = OffsetDistribution::Parse(a.dist);
  if (!dist.ok()) return dist.status();
  auto inst = ReadInstanceFile(a.lp.instance);
  if (!inst.ok()) return inst.status();
  auto sol = SolveInterval(*inst, a.lp);
  if (!sol.ok()) return sol.status();
  auto rounder = IntervalRounder::Create(*inst, *sol, *dist);
  if (!rounder.ok()) return rounder.status();
  return EmitRounding(g, *rounder, dist->name(), sol->objective,
                      inst->num_jobs(), a.trials, a.per_job);
}

struct RoundPreemptiveArgs {
  ChainArgs lp;
  double lambda = kDefaultClipping;
  std::string dist;
  int64_t trials = 1000;
  bool per_job = false;
};

absl::Status RunRoundPreemptive(const Globals& g,
                                const RoundPreemptiveArgs& a) {
  auto dist = a.dist.empty() ? OffsetDistribution::ClippedUniform(a.lambda)
                             : OffsetDistribution::Parse(a.dist);
  if (!dist.ok()) return dist.status();
  auto inst = ReadInstanceFile(a.lp.instance);
  if (!inst.ok()) return inst.status();
  auto sol = SolveChain(*inst, a.lp);
  if (!sol.ok()) return sol.status();
  auto rounder = ChainRounder::Create(*inst, *sol, *dist);
  if (!rounder.ok()) return rounder.status();
  return EmitRounding(g, *rounder, dist->name(), sol->objective,
                      inst->num_jobs(), a.trials, a.per_job);
}

struct OracleArgs {
  std::string instance;
  std::string mode = "np";
  int64_t guard = kDefaultOracleGuard;
};

absl::Status RunOracle(const Globals& g, const OracleArgs& a) {
  auto inst = ReadInstanceFile(a.instance);
  if (!inst.ok()) return inst.status();
  const int n = inst->num_jobs();
  if (a.mode == "np") {
    auto opt = BruteForceNonPreemptive(*inst, a.guard);
    if (!opt.ok()) return opt.status();
    const NonPreemptiveSchedule& s = opt->schedule;
    if (g.Json()) {
      Json j;
      j["mode"] = "np";
      j["objective"] = opt->objective;
      Json jobs = Json::array();
      for (int k = 0; k < n; ++k) {
        jobs.push_back({{"job", k},
                        {"machine", s.machine[k]},
                        {"start", s.start[k]},
                        {"completion",
                         s.start[k] + inst->Size(k, s.machine[k])}});
      }
      j["schedule"] = std::move(jobs);
      return Emit(g, j.dump(2) + "\n");
    }
    std::string out = absl::StrCat("# objective=", Num(opt->objective),
                                   "\njob,machine,start,completion\n");
    for (int k = 0; k < n; ++k) {
      absl::StrAppend(&out, k, ",", s.machine[k], ",", s.start[k], ",",
                      s.start[k] + inst->Size(k, s.machine[k]), "\n");
    }
    return Emit(g, out);
  }
  if (a.mode == "p") {
    auto opt = BruteForcePreemptive(*inst, a.guard);
    if (!opt.ok()) return opt.status();
    const PreemptiveSchedule& s = opt->schedule;
    if (g.Json()) {
      Json j;
      j["mode"] = "p";
      j["objective"] = opt->objective;
      Json jobs = Json::array();
      for (int k = 0; k < n; ++k) {
        jobs.push_back({{"job", k},
                        {"machine", s.machine[k]},
                        {"completion", s.chains[k].Completion()},
                        {"slots", s.chains[k].slots}});
      }
      j["schedule"] = std::move(jobs);
      return Emit(g, j.dump(2) + "\n");
    }
    std::string out = absl::StrCat("# objective=", Num(opt->objective),
                                   "\njob,machine,completion,slots\n");
    for (int k = 0; k < n; ++k) {
      absl::StrAppend(&out, k, ",", s.machine[k], ",",
                      s.chains[k].Completion());
      for (int64_t t : s.chains[k].slots) absl::StrAppend(&out, ",", t);
      out += "\n";
    }
    return Emit(g, out);
  }
  return absl::InvalidArgumentError(absl::StrCat("unknown mode ", a.mode));
}

absl::Status RunAnalyzeDist(const Globals& g, const std::string& spec) {
  auto dist = OffsetDistribution::Parse(spec);
  if (!dist.ok()) return dist.status();
  const DistributionStats s = ComputeDistributionStats(*dist);
  if (g.Json()) {
    Json j;
    j["dist"] = dist->name();
    j["beta"] = s.beta;
    j["rho"] = s.rho;
    j["phi_star"] = s.phi_star;
    j["alpha"] = s.alpha;
    j["attained"] = s.attained;
    j["raw_mass"] = s.raw_mass;
    j["rho_grid"] = s.rho_grid;
    return Emit(g, j.dump(2) + "\n");
  }
  return Emit(g, absl::StrFormat(
                     "dist,beta,rho,phi_star,alpha,attained,raw_mass,rho_grid\n"
                     "%s,%.15g,%.15g,%.15g,%.15g,%d,%.15g,%.15g\n",
                     dist->name(), s.beta, s.rho, s.phi_star, s.alpha,
                     s.attained ? 1 : 0, s.raw_mass, s.rho_grid));
}

struct LowerBoundArgs {
  double epsilon = 0.1;
  int64_t horizon = 1000;
  int64_t trials = 200;
};

absl::Status RunLowerBound(const Globals& g, const LowerBoundArgs& a) {
  auto report = RunLowerBoundExperiment(a.epsilon, a.horizon, a.trials,
                                        g.seed, g.threads);
  if (!report.ok()) return report.status();
  return Emit(g, g.Json() ? LowerBoundReportToJson(*report)
                          : LowerBoundReportToCsv(*report));
}

absl::Status RunBench(const Globals& g, const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  std::stringstream buf;
  buf << in.rdbuf();
  auto config = ParseBenchConfig(buf.str());
  if (!config.ok()) return config.status();
  // An explicit --seed overrides the document's.
  if (g.seed_given) config->seed = g.seed;
  auto rows = RunBenchSuite(*config, g.threads);
  if (!rows.ok()) return rows.status();
  return Emit(g, g.Json() ? BenchRowsToJson(*rows) : BenchRowsToCsv(*rows));
}

int Main(int argc, char** argv) {
  CLI::App app{"Scheduling relaxations, rounding and benchmarks."};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  auto* seed_opt = app.add_option("--seed", g.seed, "Random seed")
                       ->capture_default_str();
  app.add_option("--format", g.format, "Report format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app.add_option("--out", g.out, "Write the report here instead of stdout");
  app.add_option("--threads", g.threads, "Worker threads")
      ->check(CLI::Range(1, 1024))
      ->capture_default_str();

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Random instance as JSON");
  gen_cmd->add_option("--jobs", gen.options.num_jobs)
      ->check(CLI::Range(1, 100000))
      ->capture_default_str();
  gen_cmd->add_option("--machines", gen.options.num_machines)
      ->check(CLI::Range(1, 10000))
      ->capture_default_str();
  gen_cmd->add_option("--p-max", gen.options.p_max)
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  gen_cmd->add_option("--r-max", gen.options.r_max)
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  gen_cmd->add_option("--w-max", gen.options.w_max)
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  gen_cmd->add_option("--forbidden", gen.options.forbidden_prob,
                      "Probability that a (job, machine) pair is forbidden")
      ->check(CLI::Range(0.0, 0.99))
      ->capture_default_str();

  IntervalArgs interval;
  auto* interval_cmd =
      app.add_subcommand("solve-interval", "Time-indexed interval relaxation");
  interval_cmd->add_option("instance", interval.instance)->required();
  interval_cmd->add_option("--mode", interval.mode)
      ->check(CLI::IsMember({"auto", "full", "compressed"}))
      ->capture_default_str();
  interval_cmd->add_option("--epsilon", interval.epsilon)
      ->capture_default_str();
  interval_cmd->add_option("--dump-lp", interval.dump_lp,
                           "Also write the LP in CPLEX LP format");

  ChainArgs chain;
  auto* chain_cmd =
      app.add_subcommand("solve-chain", "Chain relaxation by column generation");
  chain_cmd->add_option("instance", chain.instance)->required();
  chain_cmd->add_flag("--compressed", chain.compressed,
                      "Geometric block timeline");
  chain_cmd->add_option("--epsilon", chain.epsilon)->capture_default_str();

  RoundArgs round;
  auto* round_cmd =
      app.add_subcommand("round", "Independent rounding of the interval LP");
  round_cmd->add_option("instance", round.lp.instance)->required();
  round_cmd->add_option("--dist", round.dist,
                        "uniform | quadratic | clipped:<lambda> | poly:<file>")
      ->capture_default_str();
  round_cmd->add_option("--trials", round.trials)
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  round_cmd->add_flag("--per-job", round.per_job, "Per-job completion columns");
  round_cmd->add_option("--mode", round.lp.mode)
      ->check(CLI::IsMember({"auto", "full", "compressed"}))
      ->capture_default_str();
  round_cmd->add_option("--epsilon", round.lp.epsilon)->capture_default_str();

  RoundPreemptiveArgs rp;
  auto* rp_cmd = app.add_subcommand("round-preemptive",
                                    "Independent rounding of the chain LP");
  rp_cmd->add_option("instance", rp.lp.instance)->required();
  auto* lambda_opt = rp_cmd->add_option("--lambda", rp.lambda,
                                        "Clipping of the uniform offset");
  auto* rp_dist_opt =
      rp_cmd->add_option("--dist", rp.dist, "Any offset distribution");
  lambda_opt->excludes(rp_dist_opt);
  rp_cmd->add_option("--trials", rp.trials)
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  rp_cmd->add_flag("--per-job", rp.per_job, "Per-job completion columns");
  rp_cmd->add_flag("--compressed", rp.lp.compressed);
  rp_cmd->add_option("--epsilon", rp.lp.epsilon)->capture_default_str();

  OracleArgs oracle;
  auto* oracle_cmd = app.add_subcommand("oracle", "Exact optimum, tiny inputs");
  oracle_cmd->add_option("instance", oracle.instance)->required();
  oracle_cmd->add_option("--mode", oracle.mode)
      ->check(CLI::IsMember({"np", "p"}))
      ->capture_default_str();
  oracle_cmd->add_option("--guard", oracle.guard, "State budget")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  std::string dist_spec = "quadratic";
  auto* dist_cmd = app.add_subcommand("analyze-dist",
                                      "Approximation constants of an offset");
  dist_cmd->add_option("--dist", dist_spec)->capture_default_str();

  LowerBoundArgs lb;
  auto* lb_cmd =
      app.add_subcommand("lowerbound", "Hard family for independent rounding");
  lb_cmd->add_option("--epsilon", lb.epsilon)->capture_default_str();
  lb_cmd->add_option("--horizon", lb.horizon)->capture_default_str();
  lb_cmd->add_option("--trials", lb.trials)
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  std::string bench_config;
  auto* bench_cmd = app.add_subcommand("bench", "Randomized benchmark suite");
  bench_cmd->add_option("--config", bench_config)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  g.seed_given = seed_opt->count() > 0;

  absl::Status status;
  if (*gen_cmd) {
    status = RunGen(g, gen);
  } else if (*interval_cmd) {
    status = RunSolveInterval(g, interval);
  } else if (*chain_cmd) {
    status = RunSolveChain(g, chain);
  } else if (*round_cmd) {
    status = RunRound(g, round);
  } else if (*rp_cmd) {
    status = RunRoundPreemptive(g, rp);
  } else if (*oracle_cmd) {
    status = RunOracle(g, oracle);
  } else if (*dist_cmd) {
    status = RunAnalyzeDist(g, dist_spec);
  } else if (*lb_cmd) {
    status = RunLowerBound(g, lb);
  } else if (*bench_cmd) {
    status = RunBench(g, bench_config);
  }
  if (!status.ok()) {
    std::cerr << "error: " << status.message() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace
}  // namespace rsched

int main(int argc, char** argv) { return rsched::Main(argc, argv); }
