#include "pprlab/push.hpp"

#include <cmath>
#include <stdexcept>

namespace pprlab {

PushState::PushState(std::uint32_t n, Vertex t, double alpha)
    : alpha_(alpha), target_(t), r_(n, 0.0), p_(n, 0.0), v_push_(t),
      bucket_of_(n, kNoBucket), round_pushes_(n, 0) {
  if (n == 0) throw std::invalid_argument("push state: empty graph");
  if (t >= n) throw std::invalid_argument("push state: target out of range");
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("push state: alpha must be in (0,1)");
  const double l2n = std::max(1.0, std::log2(static_cast<double>(n)));
  floor_ = alpha * alpha / (2.0 * n * l2n);
  set_residue(t, 1.0);
}

PushState push_init(const Graph& g, Vertex t, double alpha) {
  return PushState(g.order(), t, alpha);
}

double PushState::sum_reserve() const {
  double s = 0.0;
  for (double v : p_) s += v;
  return s;
}

double PushState::sum_residue() const {
  double s = 0.0;
  for (double v : r_) s += v;
  return s;
}

double PushState::max_residue() const {
  if (buckets_.empty()) return 0.0;
  const auto& top = buckets_.rbegin()->second;
  double m = 0.0;
  for (Vertex v : top) m = std::max(m, r_[v]);
  return m;
}

void PushState::begin_round() {
  for (Vertex v : round_touched_) round_pushes_[v] = 0;
  round_touched_.clear();
  max_round_pushes_ = 0;
}

void PushState::set_residue(Vertex v, double value) {
  const int nb = value > 0.0 ? std::ilogb(value) : kNoBucket;
  const int ob = bucket_of_[v];
  if (nb != ob) {
    if (ob != kNoBucket) {
      auto it = buckets_.find(ob);
      it->second.erase(v);
      if (it->second.empty()) buckets_.erase(it);
    }
    if (nb != kNoBucket) buckets_[nb].insert(v);
    bucket_of_[v] = nb;
  }
  r_[v] = value;
}

bool PushState::has_candidate(double threshold) const {
  if (buckets_.empty()) return false;
  const auto& [k, top] = *buckets_.rbegin();
  if (threshold <= std::ldexp(1.0, k)) return true;
  if (threshold >= std::ldexp(1.0, k + 1)) return false;
  for (Vertex v : top)
    if (r_[v] >= threshold) return true;
  return false;
}

Vertex PushState::pick_candidate(double threshold) const {
  const auto& [k, top] = *buckets_.rbegin();
  if (threshold <= std::ldexp(1.0, k)) return *top.begin();
  for (Vertex v : top)
    if (r_[v] >= threshold) return v;
  throw std::logic_error("pick_candidate: no qualifying vertex");
}

void PushState::apply_push(GraphOracle& g, Vertex v, std::uint64_t din) {
  const double r = r_[v];
  last_push_vertex_ = v;
  last_push_residue_ = r;
  p_[v] += alpha_ * r;
  set_residue(v, 0.0);
  const double moved = (1.0 - alpha_) * r;
  for (std::uint64_t i = 1; i <= din; ++i) {
    Vertex u = g.in(v, i);
    std::uint64_t dout = g.outdeg(u);  // >= 1: u has the edge (u,v)
    set_residue(u, r_[u] + moved / static_cast<double>(dout));
  }
  cost_spent_ += din + 1;
  ++total_pushes_;
  if (round_pushes_[v]++ == 0) round_touched_.push_back(v);
  max_round_pushes_ = std::max(max_round_pushes_, round_pushes_[v]);
}

void pushback(PushState& st, GraphOracle& g, Vertex v) {
  if (v >= st.order()) throw std::invalid_argument("pushback: vertex out of range");
  if (!(st.r_[v] > 0.0))
    throw std::invalid_argument("pushback: zero residue at vertex " + std::to_string(v));
  st.apply_push(g, v, g.indeg(v));
}

void increase_push_budget(PushState& st, GraphOracle& g, std::uint64_t b,
                          const PushObserver& after_push) {
  st.b_push_ += b;
  st.begin_round();
  if (st.phase_ != PushPhase::Active) return;

  for (;;) {
    const std::uint64_t din = g.indeg(st.v_push_);
    if (st.b_push_ <= din) return;

    const Vertex pushed = st.v_push_;
    st.apply_push(g, pushed, din);
    st.b_push_ -= din + 1;
    if (after_push) after_push(st, pushed);

    while (!st.has_candidate(st.r_push_)) {
      if (st.buckets_.empty()) {
        st.phase_ = PushPhase::Complete;
        return;
      }
      if (st.r_push_ <= st.floor_) {
        st.phase_ = PushPhase::FloorExhausted;
        return;
      }
      st.r_push_ /= 2.0;
    }
    st.v_push_ = st.pick_candidate(st.r_push_);
  }
}

}  // namespace pprlab
