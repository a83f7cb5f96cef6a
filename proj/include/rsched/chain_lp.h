#ifndef RSCHED_CHAIN_LP_H_
#define RSCHED_CHAIN_LP_H_

// Configuration relaxation over chains, solved by column generation.
//
//   min  sum_A w_j C_A z_A
//   s.t. sum_{A for j} z_A >= 1                 for every job j    (dual eta)
//        sum_A |A & block_k| z_A <= |block_k|   for every machine, block
//                                                                  (dual -xi)
//
// Time is cut into blocks (t_{k-1}, t_k]. With unit blocks this is the exact
// chain relaxation; with geometric blocks (BuildCompressedTimeline) C_A is the
// right end of the chain's last block, which overestimates the completion by
// at most a factor 1 + eps. Pricing a (machine, job) pair reduces to picking
// the cheapest slots for each possible completion.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "rsched/chain.h"
#include "rsched/instance.h"
#include "rsched/lp_solver.h"

namespace rsched {

struct ChainTimeline {
  std::vector<int64_t> points;  // 0 = t_0 < t_1 < ... < t_K

  int num_blocks() const { return static_cast<int>(points.size()) - 1; }
  // Block k in [1, K] is (t_{k-1}, t_k].
  int64_t Length(int k) const { return points[k] - points[k - 1]; }
  int64_t horizon() const { return points.back(); }
  bool IsUnit() const { return num_blocks() == horizon(); }
};

ChainTimeline UnitTimeline(int64_t horizon);

// {0} + every release + {ceil((1 + eps)^k)} up to the first value >= T.
// eps in (0, 1].
absl::StatusOr<ChainTimeline> BuildCompressedTimeline(const Instance& instance,
                                                      double epsilon);

struct PricedChain {
  Chain chain;
  double reduced_cost = 0.0;
};

// Cheapest chain of a job with size p and release r on one machine, over all
// completions C in [r + p, horizon]: w C + sum_{t in A} xi[t] - eta. For each
// C the chain is slot C plus the p - 1 cheapest slots in (r, C - 1], found by
// one increasing sweep over C. xi is indexed by slot (xi[0] unused). Ties go
// to the smaller C and then to earlier slots. nullopt when no chain fits.
std::optional<PricedChain> PriceChain(int machine, int job, int64_t p,
                                      int64_t release, double weight,
                                      double eta, std::span<const double> xi,
                                      int64_t horizon);

// One chain column on a block timeline.
struct BlockChain {
  int machine = 0;
  int job = 0;
  std::vector<std::pair<int, int64_t>> counts;  // (block, slots), block order
  int64_t completion = 0;                       // right end of last block

  // Concrete slots: the earliest `count` slots of each used block.
  Chain Materialize(const ChainTimeline& timeline) const;
  friend bool operator==(const BlockChain&, const BlockChain&) = default;
};

// Block version of PriceChain: xi[k] per block, the last used block holds at
// least one slot, blocks are eligible only when they start at or after the
// release.
std::optional<std::pair<BlockChain, double>> PriceBlockChain(
    const ChainTimeline& timeline, int machine, int job, int64_t p,
    int64_t release, double weight, double eta, std::span<const double> xi);

struct ChainColumn {
  BlockChain block_chain;
  Chain chain;  // materialized
  double z = 0.0;
};

struct ChainSolution {
  ChainTimeline timeline;
  std::vector<ChainColumn> columns;  // positive z only
  double objective = 0.0;
  std::vector<double> eta;               // per job
  std::vector<std::vector<double>> xi;   // [machine][block], xi[i][0] unused
  // Lower bound on the true optimum from the last pricing round:
  // objective - pricing_gap.
  double pricing_gap = 0.0;
  int rounds = 0;
  int num_generated = 0;
  // Pricing kept returning columns already in the master.
  bool stalled = false;
};

struct ChainLpOptions {
  bool compressed = false;
  double epsilon = 0.5;
  double tolerance = 1e-7;
  int max_rounds = 100000;
  LpOptions lp;
};

absl::StatusOr<ChainSolution> SolveChainLp(const Instance& instance,
                                           const ChainLpOptions& options = {});

// Chain validity against the instance, job mass >= 1 and block loads within
// capacity, each up to `tol`.
absl::Status CheckChainSolution(const Instance& instance,
                                const ChainSolution& solution,
                                double tol = 1e-6);

// Lines "machine,job,z,slot,slot,..." after the header "machine,job,z,slots".
std::string ChainSolutionToCsv(const ChainSolution& solution);

}  // namespace rsched

#endif  // RSCHED_CHAIN_LP_H_
