#pragma once
// Alpha-discounted random-walk simulation and the residue-weighted Monte
// Carlo estimator. Two randomness modes: fully independent per-walk streams
// (default), or per-step 2-independent hash families indexed by walk id.
// Either way a walk's trajectory is a pure function of (seed, mode, walk id)
// and the graph, so estimates replay exactly.

#include <cstdint>
#include <unordered_map>

#include "pprlab/graph.hpp"
#include "pprlab/push.hpp"
#include "pprlab/rng.hpp"

namespace pprlab {

enum class WalkMode { FullIndependent, Pairwise };

class WalkRandomness {
 public:
  explicit WalkRandomness(std::uint64_t seed, WalkMode mode = WalkMode::FullIndependent)
      : seed_(seed), mode_(mode) {}

  std::uint64_t seed() const { return seed_; }
  WalkMode mode() const { return mode_; }

  // Hash-family purposes for the pairwise mode.
  static constexpr std::uint32_t kTerm = 1;    // per-step termination test
  static constexpr std::uint32_t kEdge = 2;    // per-step edge choice
  static constexpr std::uint32_t kSource = 3;  // walk source (jump draws)

  // Parameters are derived statelessly from (seed, purpose, step, attempt),
  // so the same function is shared by all walks of a call and reused across
  // rounds.
  TwoIndependentHash family(std::uint32_t purpose, std::uint64_t step,
                            std::uint64_t attempt) const;

  // Independent per-walk streams for the fully-independent mode.
  SplitMix64 source_stream(std::uint64_t walk_id) const;
  SplitMix64 step_stream(std::uint64_t walk_id) const;

 private:
  std::uint64_t seed_;
  WalkMode mode_;
};

struct McEstimate {
  double value = 0.0;      // sum(p)/n + residue-weighted terminal frequencies
  std::uint64_t walks = 0;
  std::unordered_map<Vertex, std::uint64_t> terminal_counts;
  std::uint64_t cap_hits = 0;  // forced terminations; always 0 in practice
};

// Hard cap on walk length; termination is geometric so reaching this is a
// ~(1-alpha)^(100/alpha) event and is counted (asserted zero in tests).
std::uint64_t walk_step_cap(double alpha);

// One alpha-discounted walk from `start`; returns the terminal vertex.
Vertex sample_walk(GraphOracle& g, Vertex start, double alpha, const WalkRandomness& rng,
                   std::uint64_t walk_id, std::uint64_t* steps_out = nullptr,
                   bool* cap_hit = nullptr);

// q walks from jump-drawn uniform sources against a fixed push state:
//   X = sum_v p(v)/n + sum_walks r(terminal)/q.
McEstimate monte_carlo(GraphOracle& g, const PushState& state, std::uint64_t q,
                       const WalkRandomness& rng);

}  // namespace pprlab
