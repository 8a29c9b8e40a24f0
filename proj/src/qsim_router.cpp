#include "qpilot/qsim_router.hpp"

#include <algorithm>
#include <set>

#include "qpilot/error.hpp"

namespace qpilot {

namespace {

// Step between adjacent fan-out slots that are coupled in the current layer;
// 0.35 * sqrt(2) stays inside the Rydberg radius.
constexpr double kPairStep = 0.35;

struct Block {
  std::size_t left = 0;
  std::size_t right = 0;
};

enum class Grow { Seed, Left, Right };

} // namespace

DominanceDag DominanceDag::build(std::span<const Qubit> targets, const FpqaConfig& cfg) {
  DominanceDag dag;
  dag.nodes.assign(targets.begin(), targets.end());
  std::sort(dag.nodes.begin(), dag.nodes.end(), [&](Qubit a, Qubit b) {
    return slm_site(a, cfg) < slm_site(b, cfg);
  });
  for (const Qubit q : dag.nodes) {
    dag.sites.push_back(slm_site(q, cfg));
  }
  return dag;
}

std::vector<std::size_t> longest_chain(const DominanceDag& dag) {
  const std::size_t n = dag.size();
  if (n == 0) {
    throw InvalidArgument("longest chain of an empty dominance dag");
  }
  // best[i]: length of the longest chain starting at i. Nodes are sorted by
  // (row, col), so every successor has a larger index.
  std::vector<std::size_t> best(n, 1);
  std::vector<std::size_t> next(n, n);
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (dag.edge(i, j) && best[j] + 1 > best[i]) {
        best[i] = best[j] + 1;
        next[i] = j;
      }
    }
  }
  std::size_t start = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (best[i] > best[start]) {
      start = i;
    }
  }
  std::vector<std::size_t> chain;
  for (std::size_t i = start; i != n; i = next[i]) {
    chain.push_back(i);
  }
  return chain;
}

FanoutPlan fanout_plan(std::size_t n_copies) {
  FanoutPlan plan;
  plan.n_copies = n_copies;
  if (n_copies == 0) {
    return plan;
  }
  // Growth events per layer, replayed later once block extents are known.
  std::vector<std::vector<std::pair<std::size_t, Grow>>> events;
  std::vector<Block> blocks;
  std::size_t made = 0;
  while (made < n_copies) {
    const std::size_t k = blocks.size();
    std::vector<std::pair<std::size_t, Grow>> layer{{k, Grow::Seed}};
    if (k >= 1) {
      layer.emplace_back(k - 1, Grow::Right);
    }
    for (std::size_t b = k >= 1 ? k - 1 : 0; b-- > 0;) {
      layer.emplace_back(b, Grow::Right);
      layer.emplace_back(b, Grow::Left);
    }
    layer.resize(std::min(layer.size(), n_copies - made));
    made += layer.size();
    blocks.emplace_back();
    for (const auto& [b, g] : layer) {
      if (g == Grow::Left) {
        ++blocks[b].left;
      } else if (g == Grow::Right) {
        ++blocks[b].right;
      }
    }
    events.push_back(std::move(layer));
  }

  std::vector<std::size_t> lo(blocks.size());
  std::vector<std::size_t> hi(blocks.size());
  std::size_t base = 0;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    lo[b] = hi[b] = base + blocks[b].left;
    base += blocks[b].left + blocks[b].right + 1;
  }
  for (const auto& layer : events) {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (const auto& [b, g] : layer) {
      switch (g) {
      case Grow::Seed: pairs.emplace_back(kRoot, lo[b]); break;
      case Grow::Right: pairs.emplace_back(hi[b], hi[b] + 1), ++hi[b]; break;
      case Grow::Left: pairs.emplace_back(lo[b], lo[b] - 1), --lo[b]; break;
      }
    }
    plan.layers.push_back(std::move(pairs));
  }
  return plan;
}

FanoutTree fanout_tree(Qubit root, std::size_t n_copies, const FpqaConfig& cfg) {
  const std::size_t cap = std::min(cfg.aod_rows, cfg.aod_cols);
  if (n_copies > cap) {
    throw CapacityError("fan-out of " + std::to_string(n_copies) + " copies exceeds AOD diagonal of " +
                        std::to_string(cap));
  }
  FanoutTree tree{fanout_plan(n_copies), {}};
  const double s = cfg.site_spacing;
  const Point r = cfg.site_position(slm_site(root, cfg));
  const std::size_t n = n_copies;

  for (const auto& layer : tree.plan.layers) {
    std::size_t seed = n;
    std::set<std::size_t> paired_low; // i such that slots (i, i + 1) couple
    for (const auto& [src, dst] : layer) {
      if (src == kRoot) {
        seed = dst;
      } else {
        paired_low.insert(std::min(src, dst));
      }
    }
    auto step = [&](std::size_t i) { return paired_low.contains(i) ? kPairStep : s; };

    AodLines lines;
    lines.col_x.assign(cfg.aod_cols, 0.0);
    lines.row_y.assign(cfg.aod_rows, 0.0);
    std::size_t first_right = 0;
    if (seed < n) {
      lines.col_x[seed] = r.x + cfg.parking_offset();
      lines.row_y[seed] = r.y;
      for (std::size_t i = seed; i-- > 0;) {
        const bool edge = i + 1 == seed;
        lines.col_x[i] = edge ? -s : lines.col_x[i + 1] - step(i);
        lines.row_y[i] = edge ? r.y - s : lines.row_y[i + 1] - step(i);
      }
      first_right = seed + 1;
    }
    for (std::size_t i = first_right; i < n; ++i) {
      const bool edge = i == first_right;
      lines.col_x[i] = edge ? cfg.max_x() + s : lines.col_x[i - 1] + step(i - 1);
      lines.row_y[i] = edge ? r.y + s : lines.row_y[i - 1] + step(i - 1);
    }
    const double last_x = n > 0 ? std::max(cfg.max_x(), lines.col_x[n - 1]) : cfg.max_x();
    const double last_y = n > 0 ? std::max(cfg.max_y(), lines.row_y[n - 1]) : cfg.max_y();
    for (std::size_t i = n; i < cfg.aod_cols; ++i) {
      lines.col_x[i] = last_x + s * static_cast<double>(i - n + 2);
    }
    for (std::size_t i = n; i < cfg.aod_rows; ++i) {
      lines.row_y[i] = last_y + s * static_cast<double>(i - n + 2);
    }
    tree.layouts.push_back(std::move(lines));
  }
  return tree;
}

Schedule route_pauli(std::span<const PauliString> strings, const FpqaConfig& cfg,
                     std::vector<PauliRouteInfo>* info) {
  cfg.check();
  const std::size_t n = strings.empty() ? 0 : strings.front().n_qubits();
  for (const PauliString& p : strings) {
    if (p.n_qubits() != n) {
      throw InvalidArgument("Pauli strings have different widths");
    }
    if (p.support().empty()) {
      throw InvalidArgument("all-identity Pauli string " + p.str());
    }
  }
  const std::size_t cap = std::min(cfg.aod_rows, cfg.aod_cols);
  if (cap == 0) {
    throw CapacityError("AOD grid has no crossing for an ancilla");
  }
  const AodLines idle = parked_lines(cfg);
  ScheduleBuilder b(cfg, n, AodState{idle.row_y, idle.col_x, {}});

  for (const PauliString& p : strings) {
    const std::vector<Qubit> support = p.support();
    const Qubit root = support.front();
    const std::vector<Qubit> targets(support.begin() + 1, support.end());

    // Rotate every support qubit so the string acts as Z on it.
    std::vector<LocalOp> pre;
    std::vector<LocalOp> post;
    for (const Qubit q : support) {
      switch (p.ops[q]) {
      case Pauli::X:
        pre.push_back({GateKind::H, 0.0, q});
        post.push_back({GateKind::H, 0.0, q});
        break;
      case Pauli::Y:
        pre.push_back({GateKind::Sdg, 0.0, q});
        pre.push_back({GateKind::H, 0.0, q});
        post.push_back({GateKind::H, 0.0, q});
        post.push_back({GateKind::S, 0.0, q});
        break;
      default: break;
      }
    }
    b.raman(std::move(pre));
    PauliRouteInfo stats{root, 0, 0, 0};

    if (targets.empty()) {
      b.raman({{GateKind::RZ, p.angle, root}});
    } else {
      const std::size_t m = std::min(targets.size(), cap);
      const FanoutTree tree = fanout_tree(root, m, cfg);
      std::vector<AtomId> anc(m);
      std::vector<Transfer> load;
      std::vector<Transfer> retire;
      for (std::size_t k = 0; k < m; ++k) {
        anc[k] = b.allocate_ancilla();
        load.push_back({anc[k], Site{k, k}, true});
        retire.push_back({anc[k], Site{k, k}, false});
      }
      auto atom = [&](std::size_t slot) { return slot == kRoot ? root : anc[slot]; };

      // Chain rounds: each round takes the longest remaining dominance chain
      // and XORs its targets into the ancillas, CNOT(target -> ancilla).
      std::vector<std::pair<AodLines, std::vector<AtomPair>>> rounds;
      std::vector<Qubit> left = targets;
      while (!left.empty()) {
        const DominanceDag dag = DominanceDag::build(left, cfg);
        std::vector<std::size_t> chain = longest_chain(dag);
        chain.resize(std::min(chain.size(), m));
        std::vector<Site> sites;
        std::vector<AtomPair> cnots;
        std::set<Qubit> used;
        for (std::size_t k = 0; k < chain.size(); ++k) {
          sites.push_back(dag.sites[chain[k]]);
          cnots.emplace_back(dag.nodes[chain[k]], anc[k]);
          used.insert(dag.nodes[chain[k]]);
        }
        std::erase_if(left, [&](Qubit q) { return used.contains(q); });
        rounds.emplace_back(place_on_diagonal(sites, cfg), std::move(cnots));
      }

      // The fan-out tree run backwards, CNOT(fresh -> source), gathers the
      // XOR of every ancilla into the root; running it forwards undoes that.
      auto tree_layer = [&](std::size_t l) {
        std::vector<AtomPair> out;
        for (const auto& [src, dst] : tree.plan.layers[l]) {
          out.emplace_back(atom(dst), atom(src));
        }
        b.move(tree.layouts[l].row_y, tree.layouts[l].col_x);
        b.cnot_layer(out);
      };
      auto chain_rounds = [&] {
        for (const auto& [lines, cnots] : rounds) {
          b.move(lines.row_y, lines.col_x);
          b.cnot_layer(cnots);
        }
      };

      b.move(rounds.front().first.row_y, rounds.front().first.col_x);
      b.transfer(std::move(load));
      chain_rounds();
      for (std::size_t l = tree.depth(); l-- > 0;) {
        tree_layer(l);
      }
      b.raman({{GateKind::RZ, p.angle, root}});
      for (std::size_t l = 0; l < tree.depth(); ++l) {
        tree_layer(l);
      }
      chain_rounds();
      b.transfer(std::move(retire));
      stats = {root, m, tree.depth(), rounds.size()};
    }
    b.raman(std::move(post));
    if (info != nullptr) {
      info->push_back(stats);
    }
  }
  b.measure();
  return std::move(b).finish();
}

} // namespace qpilot
