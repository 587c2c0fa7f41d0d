#include "pprlab/walk.hpp"

#include <cmath>
#include <optional>
#include <stdexcept>

namespace pprlab {

namespace {

std::uint64_t alpha_threshold(double alpha) {
  // Terminate when a uniform 64-bit draw falls below alpha * 2^64.
  return static_cast<std::uint64_t>(
      static_cast<long double>(alpha) * 18446744073709551616.0L);
}

// Per-walk draw source hiding the mode split. In the fully-independent mode
// the source and the steps use separate substreams so that a walk simulated
// inside monte_carlo (source included) and one driven from a given start
// vertex see identical step randomness.
class WalkDraws {
 public:
  WalkDraws(const WalkRandomness& rng, std::uint64_t walk_id)
      : rng_(&rng), id_(walk_id) {
    if (rng.mode() == WalkMode::FullIndependent) {
      src_.emplace(rng.source_stream(walk_id));
      step_.emplace(rng.step_stream(walk_id));
    }
  }

  std::uint64_t source_draw() {
    if (src_) return src_->next();
    return rng_->family(WalkRandomness::kSource, 0, src_attempt_++)(id_);
  }

  std::uint64_t term_draw(std::uint64_t step) {
    if (step_) return step_->next();
    return rng_->family(WalkRandomness::kTerm, step, 0)(id_);
  }

  std::uint64_t edge_draw(std::uint64_t step) {
    if (step_) return step_->next();
    if (step != edge_step_) {
      edge_step_ = step;
      edge_attempt_ = 0;
    }
    return rng_->family(WalkRandomness::kEdge, step, edge_attempt_++)(id_);
  }

 private:
  const WalkRandomness* rng_;
  std::uint64_t id_;
  std::optional<SplitMix64> src_, step_;
  std::uint64_t src_attempt_ = 0;
  std::uint64_t edge_step_ = ~0ull;
  std::uint64_t edge_attempt_ = 0;
};

Vertex run_walk(GraphOracle& g, Vertex cur, double alpha, WalkDraws& draws,
                std::uint64_t* steps_out, bool* cap_hit) {
  const std::uint64_t term = alpha_threshold(alpha);
  const std::uint64_t cap = walk_step_cap(alpha);
  std::uint64_t step = 0;
  for (;; ++step) {
    if (step >= cap) {
      if (cap_hit) *cap_hit = true;
      break;
    }
    if (draws.term_draw(step) < term) break;
    const std::uint64_t d = g.outdeg(cur);
    if (d == 0) break;  // dangling vertex: the walk just terminates
    const std::uint64_t idx =
        uniform_below(d, [&] { return draws.edge_draw(step); });
    cur = g.out(cur, idx + 1);
  }
  if (steps_out) *steps_out = step;
  return cur;
}

}  // namespace

TwoIndependentHash WalkRandomness::family(std::uint32_t purpose, std::uint64_t step,
                                          std::uint64_t attempt) const {
  const std::uint64_t base =
      hash_combine(hash_combine(seed_, purpose), hash_combine(step, attempt));
  return TwoIndependentHash(mix64(base + 1), mix64(base + 2), mix64(base + 3),
                            mix64(base + 4));
}

SplitMix64 WalkRandomness::source_stream(std::uint64_t walk_id) const {
  return SplitMix64(hash_combine(seed_, hash_combine(0x736f75726365ULL, walk_id)));
}

SplitMix64 WalkRandomness::step_stream(std::uint64_t walk_id) const {
  return SplitMix64(hash_combine(seed_, hash_combine(0x7374657073ULL, walk_id)));
}

std::uint64_t walk_step_cap(double alpha) {
  return static_cast<std::uint64_t>(std::ceil(100.0 / alpha));
}

Vertex sample_walk(GraphOracle& g, Vertex start, double alpha, const WalkRandomness& rng,
                   std::uint64_t walk_id, std::uint64_t* steps_out, bool* cap_hit) {
  if (start >= g.graph().order())
    throw std::invalid_argument("sample_walk: start vertex out of range");
  WalkDraws draws(rng, walk_id);
  return run_walk(g, start, alpha, draws, steps_out, cap_hit);
}

McEstimate monte_carlo(GraphOracle& g, const PushState& state, std::uint64_t q,
                       const WalkRandomness& rng) {
  if (q < 1) throw std::invalid_argument("monte_carlo: need at least one walk");
  if (!g.graph().normalized())
    throw std::invalid_argument("monte_carlo: graph must be normalized");
  if (state.order() != g.graph().order())
    throw std::invalid_argument("monte_carlo: state/graph size mismatch");

  McEstimate est;
  est.walks = q;
  est.value = state.sum_reserve() / static_cast<double>(g.graph().order());

  const double alpha = state.alpha();
  for (std::uint64_t j = 0; j < q; ++j) {
    WalkDraws draws(rng, j);
    const Vertex src = g.jump([&] { return draws.source_draw(); });
    bool capped = false;
    const Vertex term = run_walk(g, src, alpha, draws, nullptr, &capped);
    if (capped) ++est.cap_hits;
    ++est.terminal_counts[term];
    est.value += state.residue(term) / static_cast<double>(q);
  }
  return est;
}

}  // namespace pprlab
