#include "surgecc/router.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <deque>

namespace surgecc {

namespace {

constexpr int kInf = std::numeric_limits<int>::max() / 4;

// Breadth-first distances toward a target set, over unoccupied ancilla slots.
// For the surface substrate the state is (vertex, direction mask still
// needed); dist[v][need] = shortest suffix length from v to a target that
// covers `need`. For the color substrate only mask 0 is populated.
struct PathFinder {
  const RoutingGraph* g = nullptr;
  bool masked = false;
  std::vector<int> dist;        // [v * 8 + mask]
  std::vector<int> queue;

  void attach(const RoutingGraph& graph) {
    g = &graph;
    masked = graph.substrate == SubstrateKind::Surface;
    dist.assign(static_cast<size_t>(graph.num_vertices()) * 8, kInf);
  }

  int& d(int v, int mask) { return dist[static_cast<size_t>(v) * 8 + mask]; }

  // endpoints(v) answers whether v may terminate the path (target side).
  // passable(v) answers whether v may be an interior hop.
  template <typename IsTarget, typename Passable>
  void run_backward(IsTarget is_target, Passable passable) {
    std::fill(dist.begin(), dist.end(), kInf);
    queue.clear();
    const int masks = masked ? 8 : 1;
    for (int v = 0; v < g->num_vertices(); ++v)
      if (is_target(v)) {
        d(v, 0) = 0;
        queue.push_back(v * 8 + 0);
      }
    // BFS over states; edges add their direction to the covered set, which
    // in backward form means the suffix starting at u covers dir(u->v) plus
    // whatever the suffix from v covers. The mask index here tracks covered
    // directions of the suffix.
    for (size_t head = 0; head < queue.size(); ++head) {
      const int state = queue[head];
      const int v = state / 8, mask = state % 8;
      const int dv = dist[state];
      for (const auto& nb : g->adj[v]) {
        const int u = nb.v;
        // u will be an interior vertex of some path (or the source, handled
        // by the caller); restrict to passable interiors plus all vertices,
        // sources are filtered later. We must allow u = any vertex here and
        // let the forward reconstruction enforce endpoint rules, so restrict
        // to passable(u) only.
        if (!passable(u)) continue;
        const int nmask = masked ? (mask | (1 << static_cast<int>(nb.dir))) : 0;
        if (d(u, nmask) <= dv + 1) continue;
        d(u, nmask) = dv + 1;
        queue.push_back(u * 8 + nmask);
      }
    }
    (void)masks;
  }
};

}  // namespace

std::optional<std::vector<int>> shortest_valid_path(const RoutingGraph& g, int src, int dst,
                                                    const std::vector<bool>& occupied) {
  if (src == dst) throw RoutingError("path endpoints must differ");
  const bool masked = g.substrate == SubstrateKind::Surface;
  const int nv = g.num_vertices();

  // Endpoint slot sets: a folded pair is enterable through either slot.
  auto endpoint_set = [&](int v) {
    std::vector<int> s{v};
    if (g.pair_mate[v] >= 0) s.push_back(g.pair_mate[v]);
    return s;
  };
  const std::vector<int> sources = endpoint_set(src);
  const std::vector<int> targets = endpoint_set(dst);
  auto is_target = [&](int v) {
    return std::find(targets.begin(), targets.end(), v) != targets.end() && !occupied[v];
  };
  auto passable = [&](int v) { return g.type[v] == VertexType::Ancilla && !occupied[v]; };

  // Backward BFS from the targets over ancilla interiors.
  static thread_local PathFinder pf;
  if (pf.g != &g || pf.dist.size() != static_cast<size_t>(nv) * 8) pf.attach(g);
  pf.run_backward(is_target, passable);

  // Shortest total length from any source slot.
  int best_len = kInf;
  for (int s : sources) {
    if (occupied[s]) continue;
    for (const auto& nb : g.adj[s]) {
      if (!passable(nb.v) && !is_target(nb.v)) continue;
      const int m0 = masked ? (1 << static_cast<int>(nb.dir)) : 0;
      if (is_target(nb.v)) continue;  // single-edge paths are never valid
      for (int m = 0; m < (masked ? 8 : 1); ++m) {
        if (masked && (m0 | m) != 7) continue;
        if (pf.d(nb.v, m) < kInf) best_len = std::min(best_len, 1 + pf.d(nb.v, m));
      }
    }
  }
  if (best_len >= kInf || best_len < 2) return std::nullopt;

  // Forward greedy reconstruction: at every step take the smallest-id next
  // vertex that still completes a path of the optimal length; this yields the
  // lexicographically smallest optimal vertex sequence.
  std::vector<int> path;
  int cur = -1, covered = 0, remaining = best_len;
  {
    int best_src = kInf;
    for (int s : sources) {
      if (occupied[s]) continue;
      bool ok = false;
      for (const auto& nb : g.adj[s]) {
        if (!passable(nb.v)) continue;
        const int m0 = masked ? (1 << static_cast<int>(nb.dir)) : 0;
        for (int m = 0; m < (masked ? 8 : 1); ++m)
          if ((!masked || (m0 | m) == 7) && pf.d(nb.v, m) + 1 == best_len) ok = true;
      }
      if (ok) best_src = std::min(best_src, s);
    }
    if (best_src >= kInf) return std::nullopt;
    cur = best_src;
  }
  path.push_back(cur);
  while (remaining > 0) {
    int next = -1;
    for (const auto& nb : g.adj[cur]) {
      const int v = nb.v;
      const int ncov = masked ? (covered | (1 << static_cast<int>(nb.dir))) : 0;
      if (remaining == 1) {
        if (is_target(v) && (v < next || next < 0) && (!masked || ncov == 7)) next = v;
        continue;
      }
      if (!passable(v)) continue;
      bool reaches = false;
      for (int m = 0; m < (masked ? 8 : 1); ++m)
        if ((!masked || (ncov | m) == 7) && pf.d(v, m) == remaining - 1) reaches = true;
      if (reaches && (next < 0 || v < next)) next = v;
    }
    if (next < 0) return std::nullopt;  // should not happen
    for (const auto& nb : g.adj[cur])
      if (nb.v == next && masked) covered |= 1 << static_cast<int>(nb.dir);
    cur = next;
    path.push_back(cur);
    --remaining;
  }
  return path;
}

namespace {

struct Candidate {
  bool valid = false;
  std::vector<int> path;
  int factory = -1;
};

// Recomputes the best candidate path for one demand gate.
Candidate compute_candidate(const RoutingGraph& g, const Labeling& labeling, const IndexedGate& ig,
                            const std::vector<int>& factory_countdown,
                            const std::vector<bool>& occupied) {
  Candidate c;
  if (ig.gate.kind == GateKind::Cnot) {
    auto p = shortest_valid_path(g, labeling.vertex_of(ig.gate.control),
                                 labeling.vertex_of(ig.gate.target), occupied);
    if (p) {
      c.valid = true;
      c.path = std::move(*p);
    }
    return c;
  }
  // T gate: route to the best available factory (countdown <= 0).
  for (size_t f = 0; f < g.factory_vertices.size(); ++f) {
    if (factory_countdown[f] > 0) continue;
    const int fv = g.factory_vertices[f];
    if (occupied[fv]) continue;
    auto p = shortest_valid_path(g, labeling.vertex_of(ig.gate.target), fv, occupied);
    if (!p) continue;
    if (!c.valid || p->size() < c.path.size() || (p->size() == c.path.size() && *p < c.path)) {
      c.valid = true;
      c.path = std::move(*p);
      c.factory = fv;
    }
  }
  return c;
}

}  // namespace

VdpResult vdp_subroutine(const RoutingGraph& g, const Labeling& labeling,
                         const std::vector<IndexedGate>& demand, std::vector<int>& factory_countdown,
                         int reset_period) {
  VdpResult result;
  std::vector<bool> occupied(g.num_vertices(), false);
  const size_t n = demand.size();
  std::vector<Candidate> cand(n);
  std::vector<bool> routed(n, false), stale(n, true);

  for (;;) {
    // Refresh candidates invalidated by the last removal.
    for (size_t i = 0; i < n; ++i)
      if (!routed[i] && stale[i]) {
        cand[i] = compute_candidate(g, labeling, demand[i], factory_countdown, occupied);
        stale[i] = false;
      }
    // Globally shortest candidate; ties by lowest original gate index (the
    // demand list is index-sorted, so the first minimum wins).
    int best = -1;
    for (size_t i = 0; i < n; ++i) {
      if (routed[i] || !cand[i].valid) continue;
      if (best < 0 || cand[i].path.size() < cand[best].path.size()) best = static_cast<int>(i);
    }
    if (best < 0) break;

    RoutedOp op;
    op.gate = demand[best];
    op.path = cand[best].path;
    op.factory = cand[best].factory;
    op.ancilla_vertex = op.path[1];  // first interior slot hosts the logical ancilla
    routed[best] = true;
    for (int v : op.path) occupied[v] = true;
    // Both slots of a folded endpoint pair are busy while the patch operates.
    for (int v : {op.path.front(), op.path.back()})
      if (g.pair_mate[v] >= 0) occupied[g.pair_mate[v]] = true;
    if (op.factory >= 0) {
      for (size_t f = 0; f < g.factory_vertices.size(); ++f)
        if (g.factory_vertices[f] == op.factory) factory_countdown[f] = reset_period;
    }
    result.routed.push_back(std::move(op));
    // Candidates whose path crosses the newly consumed vertices go stale.
    for (size_t i = 0; i < n; ++i) {
      if (routed[i] || !cand[i].valid || stale[i]) continue;
      for (int v : cand[i].path)
        if (occupied[v]) {
          stale[i] = true;
          break;
        }
      if (!stale[i] && g.pair_mate[cand[i].path.front()] >= 0 &&
          occupied[g.pair_mate[cand[i].path.front()]])
        stale[i] = true;
      if (!stale[i] && g.pair_mate[cand[i].path.back()] >= 0 &&
          occupied[g.pair_mate[cand[i].path.back()]])
        stale[i] = true;
    }
  }
  for (size_t i = 0; i < n; ++i)
    if (!routed[i]) result.leftovers.push_back(demand[i]);
  return result;
}

void push_leftovers(std::vector<std::vector<IndexedGate>>& layers, size_t pos,
                    std::vector<IndexedGate> leftovers) {
  while (!leftovers.empty()) {
    if (pos >= layers.size()) layers.emplace_back();
    std::vector<IndexedGate> merged = std::move(layers[pos]);
    merged.insert(merged.end(), leftovers.begin(), leftovers.end());
    std::sort(merged.begin(), merged.end(),
              [](const IndexedGate& a, const IndexedGate& b) { return a.index < b.index; });
    // Earlier-indexed gates win conflicts; the rest cascade onward.
    std::vector<IndexedGate> kept, pushed;
    std::vector<int> used;
    for (auto& ig : merged) {
      const bool clash = std::any_of(used.begin(), used.end(),
                                     [&](int q) { return ig.gate.acts_on(q); });
      if (clash) {
        pushed.push_back(ig);
      } else {
        used.push_back(ig.gate.target);
        if (ig.gate.kind == GateKind::Cnot) used.push_back(ig.gate.control);
        kept.push_back(ig);
      }
    }
    layers[pos] = std::move(kept);
    leftovers = std::move(pushed);
    ++pos;
  }
}

namespace {

CompiledSchedule route_impl(const RoutingTask& task, int cutoff, bool* truncated) {
  const RoutingGraph& g = *task.graph;
  bool has_t = false;
  for (const auto& layer : task.layered.layers)
    for (const auto& ig : layer)
      if (ig.gate.kind == GateKind::T) has_t = true;
  if (has_t && g.factory_vertices.empty()) throw NoFactoriesError();

  std::vector<int> countdown(g.factory_vertices.size(),
                             task.warm_start ? 0 : task.factories.reset_period);
  std::vector<std::vector<IndexedGate>> pending = task.layered.layers;

  CompiledSchedule sched;
  if (truncated) *truncated = false;
  for (size_t pos = 0; pos < pending.size(); ++pos) {
    if (pending[pos].empty()) continue;
    VdpResult r = vdp_subroutine(g, task.labeling, pending[pos], countdown,
                                 task.factories.reset_period);
    if (r.routed.empty()) {
      // Nothing moved. Legitimate only when every demand is a T gate waiting
      // for a factory; otherwise some demand has no valid path at all.
      std::vector<bool> empty_occ(g.num_vertices(), false);
      for (const auto& ig : r.leftovers) {
        const bool waiting_t = ig.gate.kind == GateKind::T;
        if (waiting_t) continue;
        auto p = shortest_valid_path(g, task.labeling.vertex_of(ig.gate.control),
                                     task.labeling.vertex_of(ig.gate.target), empty_occ);
        if (!p)
          throw UnroutableDemandError("gate " + std::to_string(ig.index) +
                                      " has no valid path on the empty graph");
      }
      if (!has_t)
        throw UnroutableDemandError("router made no progress on a CNOT-only demand set");
    }
    // Waiting for magic states still costs a time step.
    sched.layers.push_back(std::move(r.routed));
    for (auto& cd : countdown) --cd;
    if (!r.leftovers.empty()) push_leftovers(pending, pos + 1, std::move(r.leftovers));
    if (sched.depth() >= cutoff) {
      if (truncated) *truncated = true;
      return sched;
    }
  }
  return sched;
}

}  // namespace

CompiledSchedule route_circuit(const RoutingTask& task) {
  return route_impl(task, std::numeric_limits<int>::max(), nullptr);
}

int route_depth(const RoutingTask& task, int cutoff) {
  bool truncated = false;
  CompiledSchedule s = route_impl(task, cutoff, &truncated);
  return truncated ? cutoff : s.depth();
}

}  // namespace surgecc
