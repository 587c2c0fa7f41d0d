#pragma once
// Backward pushback machinery: the atomic pushback operation, the initial
// state (unit residue at the target), and the budgeted push loop that keeps
// lowering the push threshold as large residues are exhausted.
//
// Residues live in power-of-two buckets keyed by floor(log2 r(v)), so the
// next push candidate (max bucket, lowest qualifying id) is found in O(1)
// amortized and the candidate choice is deterministic.

#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <vector>

#include "pprlab/graph.hpp"

namespace pprlab {

enum class PushPhase {
  Active,          // candidate search and pushing proceed normally
  FloorExhausted,  // no residue >= threshold and the threshold hit its floor
  Complete,        // all residues are exactly zero; reserves are exact
};

class PushState {
 public:
  // Push-Init: r(t) = 1, everything else zero, threshold 1, budget 1.
  PushState(std::uint32_t n, Vertex t, double alpha);

  double alpha() const { return alpha_; }
  Vertex target() const { return target_; }
  std::uint32_t order() const { return static_cast<std::uint32_t>(r_.size()); }

  double residue(Vertex v) const { return r_[v]; }
  double reserve(Vertex v) const { return p_[v]; }
  const std::vector<double>& residues() const { return r_; }
  const std::vector<double>& reserves() const { return p_; }
  double sum_reserve() const;  // fresh summation, index order
  double sum_residue() const;
  double max_residue() const;

  double push_threshold() const { return r_push_; }
  double threshold_floor() const { return floor_; }
  Vertex push_candidate() const { return v_push_; }
  std::uint64_t budget() const { return b_push_; }
  std::uint64_t cost_spent() const { return cost_spent_; }
  std::uint64_t total_pushes() const { return total_pushes_; }
  PushPhase phase() const { return phase_; }

  // Residue and threshold recorded by the most recent pushback.
  Vertex last_push_vertex() const { return last_push_vertex_; }
  double last_push_residue() const { return last_push_residue_; }

  // Per-round push accounting; a round starts at each budget increase.
  std::uint32_t round_pushes(Vertex v) const { return round_pushes_[v]; }
  std::uint32_t max_round_pushes() const { return max_round_pushes_; }
  void begin_round();

  bool has_candidate(double threshold) const;
  // Lowest-id vertex of the maximum bucket whose residue meets `threshold`.
  // Only valid when has_candidate(threshold).
  Vertex pick_candidate(double threshold) const;

 private:
  friend void pushback(PushState&, GraphOracle&, Vertex);
  friend void increase_push_budget(PushState&, GraphOracle&, std::uint64_t,
                                   const std::function<void(const PushState&, Vertex)>&);
  friend class BidirectionalDriver;

  static constexpr int kNoBucket = std::numeric_limits<int>::min();

  void set_residue(Vertex v, double value);
  void apply_push(GraphOracle& g, Vertex v, std::uint64_t din);

  double alpha_;
  Vertex target_;
  std::vector<double> r_, p_;
  double r_push_ = 1.0;
  double floor_;
  Vertex v_push_;
  std::uint64_t b_push_ = 1;
  std::uint64_t cost_spent_ = 0;
  std::uint64_t total_pushes_ = 0;
  PushPhase phase_ = PushPhase::Active;

  std::map<int, std::set<Vertex>> buckets_;
  std::vector<int> bucket_of_;

  std::vector<std::uint32_t> round_pushes_;
  std::vector<Vertex> round_touched_;
  std::uint32_t max_round_pushes_ = 0;

  Vertex last_push_vertex_ = 0;
  double last_push_residue_ = 0.0;
};

PushState push_init(const Graph& g, Vertex t, double alpha);

// Atomic pushback on v: moves alpha*r(v) to the reserve, zeroes the residue,
// and hands each in-neighbor u a (1-alpha)*r(v)/outdeg(u) share. Rejects
// vertices with zero residue. Charges indeg(v)+1 to cost_spent.
void pushback(PushState& st, GraphOracle& g, Vertex v);

using PushObserver = std::function<void(const PushState&, Vertex)>;

// Adds b to the budget, then pushes the candidate while the budget exceeds
// its in-degree, halving the threshold whenever no residue reaches it.
// Exits when the budget is exhausted relative to the candidate's cost, when
// all residue is gone (Complete), or when the threshold cannot drop below
// its floor (FloorExhausted). `after_push` is invoked at each inter-push
// observation point.
void increase_push_budget(PushState& st, GraphOracle& g, std::uint64_t b,
                          const PushObserver& after_push = {});

}  // namespace pprlab
