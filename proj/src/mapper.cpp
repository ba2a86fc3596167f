#include "surgecc/mapper.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include <omp.h>

#include "surgecc/rng.hpp"

namespace surgecc {

namespace {

std::vector<int> active_labels(const LayeredCircuit& layered) {
  std::set<int> labels;
  for (const auto& layer : layered.layers)
    for (const auto& ig : layer) {
      labels.insert(ig.gate.target);
      if (ig.gate.kind == GateKind::Cnot) labels.insert(ig.gate.control);
    }
  return {labels.begin(), labels.end()};
}

// Cached per-layer shortest paths and crossing counts; swap evaluation only
// recomputes the paths of gates touching the two swapped labels.
class CrossingEvaluator {
public:
  CrossingEvaluator(const RoutingGraph& g, const LayeredCircuit& layered) : g_(&g) {
    for (const auto& layer : layered.layers) {
      std::vector<IndexedGate> cnots;
      for (const auto& ig : layer)
        if (ig.gate.kind == GateKind::Cnot) cnots.push_back(ig);
      if (!cnots.empty()) layers_.push_back(std::move(cnots));
    }
    free_.assign(g.num_vertices(), false);
  }

  void reset(const Labeling& labeling) {
    labeling_ = labeling;
    paths_.assign(layers_.size(), {});
    ci_.assign(layers_.size(), 0);
    total_ = 0;
    for (size_t l = 0; l < layers_.size(); ++l) {
      paths_[l].resize(layers_[l].size());
      for (size_t k = 0; k < layers_[l].size(); ++k)
        paths_[l][k] = path_for(layers_[l][k], labeling_);
      ci_[l] = layer_cost(paths_[l]);
      total_ += ci_[l];
    }
  }

  long total() const { return total_; }

  long eval_swap(int l1, int l2) const {
    Labeling swapped = labeling_;
    std::swap(swapped.vertex_of_label[l1], swapped.vertex_of_label[l2]);
    long cost = total_;
    for (size_t l = 0; l < layers_.size(); ++l) {
      bool touched = false;
      for (const auto& ig : layers_[l])
        if (ig.gate.acts_on(l1) || ig.gate.acts_on(l2)) {
          touched = true;
          break;
        }
      if (!touched) continue;
      std::vector<std::vector<int>> np = paths_[l];
      for (size_t k = 0; k < layers_[l].size(); ++k)
        if (layers_[l][k].gate.acts_on(l1) || layers_[l][k].gate.acts_on(l2))
          np[k] = path_for(layers_[l][k], swapped);
      cost += layer_cost(np) - ci_[l];
    }
    return cost;
  }

  void apply_swap(int l1, int l2) {
    std::swap(labeling_.vertex_of_label[l1], labeling_.vertex_of_label[l2]);
    for (size_t l = 0; l < layers_.size(); ++l) {
      bool touched = false;
      for (size_t k = 0; k < layers_[l].size(); ++k)
        if (layers_[l][k].gate.acts_on(l1) || layers_[l][k].gate.acts_on(l2)) {
          paths_[l][k] = path_for(layers_[l][k], labeling_);
          touched = true;
        }
      if (touched) {
        total_ -= ci_[l];
        ci_[l] = layer_cost(paths_[l]);
        total_ += ci_[l];
      }
    }
  }

private:
  std::vector<int> path_for(const IndexedGate& ig, const Labeling& lab) const {
    auto p = shortest_valid_path(*g_, lab.vertex_of(ig.gate.control), lab.vertex_of(ig.gate.target),
                                 free_);
    if (!p)
      throw RoutingError("no valid path between labelled patches on the empty graph");
    return *p;
  }

  long layer_cost(const std::vector<std::vector<int>>& paths) const {
    // K paths through an ancilla vertex contribute K-choose-2 crossings.
    static thread_local std::vector<int> count;
    count.assign(g_->num_vertices(), 0);
    long c = 0;
    for (const auto& p : paths)
      for (int v : p)
        if (g_->type[v] == VertexType::Ancilla) {
          c += count[v];  // adding the K-th path adds K-1 pairs
          ++count[v];
        }
    return c;
  }

  const RoutingGraph* g_;
  std::vector<std::vector<IndexedGate>> layers_;
  Labeling labeling_;
  std::vector<std::vector<std::vector<int>>> paths_;
  std::vector<long> ci_;
  long total_ = 0;
  std::vector<bool> free_;
};

}  // namespace

long crossing_cost(const RoutingGraph& g, const LayeredCircuit& layered, const Labeling& labeling) {
  CrossingEvaluator ev(g, layered);
  ev.reset(labeling);
  return ev.total();
}

long depth_cost(const RoutingGraph& g, const LayeredCircuit& layered, const Labeling& labeling,
                const FactoryConfig& factories) {
  RoutingTask task{&g, labeling, layered, factories};
  return route_circuit(task).depth();
}

std::vector<Labeling> neighbors(const Labeling& labeling, const LayeredCircuit& layered) {
  std::vector<Labeling> out;
  const auto labels = active_labels(layered);
  for (size_t i = 0; i < labels.size(); ++i)
    for (size_t j = i + 1; j < labels.size(); ++j) {
      Labeling n = labeling;
      std::swap(n.vertex_of_label[labels[i]], n.vertex_of_label[labels[j]]);
      out.push_back(std::move(n));
    }
  return out;
}

MappingResult hill_climb(const RoutingGraph& g, const LayeredCircuit& layered,
                         const HillClimbConfig& config, const FactoryConfig& factories) {
  if (config.restarts < 1 || config.max_iterations < 1)
    throw std::invalid_argument("hill climbing needs restarts >= 1 and max_iterations >= 1");
  int q = 0;
  for (const auto& layer : layered.layers)
    for (const auto& ig : layer) {
      q = std::max(q, ig.gate.target + 1);
      if (ig.gate.kind == GateKind::Cnot) q = std::max(q, ig.gate.control + 1);
    }
  if (q > static_cast<int>(g.label_slots.size()))
    throw RoutingError("circuit uses more labels than the layout provides");

  const auto labels = active_labels(layered);
  std::vector<std::pair<int, int>> swaps;
  for (size_t i = 0; i < labels.size(); ++i)
    for (size_t j = i + 1; j < labels.size(); ++j) swaps.push_back({labels[i], labels[j]});

  MappingResult result;
  bool have_best = false;

  for (int r = 0; r < config.restarts; ++r) {
    Labeling lab = random_labeling(g, q, derive_seed(config.rng_seed, {static_cast<uint64_t>(r)}));
    const Labeling initial = lab;

    CrossingEvaluator ev(g, layered);
    long cost;
    if (config.metric == MetricKind::Crossings) {
      ev.reset(lab);
      cost = ev.total();
    } else {
      cost = depth_cost(g, layered, lab, factories);
    }
    result.initial_costs.push_back(cost);
    std::vector<long> trace{cost};

    for (int iter = 0; iter < config.max_iterations; ++iter) {
      std::vector<long> sweep(swaps.size());
      const long bound = cost;  // same cutoff for every neighbor: deterministic
      if (config.metric == MetricKind::Crossings) {
#pragma omp parallel for schedule(dynamic, 4) if (config.parallel)
        for (size_t s = 0; s < swaps.size(); ++s)
          sweep[s] = ev.eval_swap(swaps[s].first, swaps[s].second);
      } else {
#pragma omp parallel for schedule(dynamic, 1) if (config.parallel)
        for (size_t s = 0; s < swaps.size(); ++s) {
          Labeling n = lab;
          std::swap(n.vertex_of_label[swaps[s].first], n.vertex_of_label[swaps[s].second]);
          RoutingTask task{&g, n, layered, factories};
          sweep[s] = route_depth(task, static_cast<int>(bound));
        }
      }
      // Strictly best neighbor; ties resolved toward the lexicographically
      // smallest resulting labeling.
      long best_cost = cost;
      int best_s = -1;
      for (size_t s = 0; s < swaps.size(); ++s) {
        if (sweep[s] > best_cost) continue;
        if (sweep[s] == best_cost) {
          if (best_s < 0) continue;  // not a strict improvement over `cost`
          Labeling a = lab, b = lab;
          std::swap(a.vertex_of_label[swaps[s].first], a.vertex_of_label[swaps[s].second]);
          std::swap(b.vertex_of_label[swaps[best_s].first],
                    b.vertex_of_label[swaps[best_s].second]);
          if (a < b) best_s = static_cast<int>(s);
          continue;
        }
        best_cost = sweep[s];
        best_s = static_cast<int>(s);
      }
      if (best_s < 0) break;
      std::swap(lab.vertex_of_label[swaps[best_s].first],
                lab.vertex_of_label[swaps[best_s].second]);
      if (config.metric == MetricKind::Crossings)
        ev.apply_swap(swaps[best_s].first, swaps[best_s].second);
      cost = best_cost;
      trace.push_back(cost);
    }

    result.traces.push_back(std::move(trace));
    if (!have_best || cost < result.best_cost ||
        (cost == result.best_cost && lab < result.best)) {
      have_best = true;
      result.best = lab;
      result.best_cost = cost;
      result.best_restart = r;
      result.best_initial = initial;
    }
  }
  return result;
}

double improvement(long depth_initial, long depth_final, ImprovementDenominator denom) {
  const long d = denom == ImprovementDenominator::Final ? depth_final : depth_initial;
  if (d == 0) throw std::invalid_argument("improvement denominator is zero");
  return static_cast<double>(depth_initial - depth_final) / static_cast<double>(d);
}

}  // namespace surgecc
