#include "qpilot/fuse.hpp"

#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <optional>
#include <variant>

#include "qpilot/detail/overloaded.hpp"
#include "qpilot/statevector.hpp"

namespace qpilot {
namespace {

using detail::Overloaded;

constexpr double kTol = 1e-10;

Matrix2 mul(const Matrix2& a, const Matrix2& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
          a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

// True when m == c * g for some unit-modulus c.
bool proportional(const Matrix2& m, const Matrix2& g) {
  Amplitude c = 0.0;
  for (int i = 0; i < 4; ++i) {
    c += std::conj(g[i]) * m[i];
  }
  c /= 2.0;
  if (std::abs(std::abs(c) - 1.0) > kTol) {
    return false;
  }
  for (int i = 0; i < 4; ++i) {
    if (std::abs(m[i] - c * g[i]) > kTol) {
      return false;
    }
  }
  return true;
}

// nullopt: the product is the identity up to phase.
std::optional<LocalOp> collapse(const Matrix2& m, AtomId atom) {
  if (proportional(m, {1.0, 0.0, 0.0, 1.0})) {
    return std::nullopt;
  }
  for (const GateKind k : {GateKind::H, GateKind::S, GateKind::Sdg}) {
    if (proportional(m, gate_matrix(k, 0.0))) {
      return LocalOp{k, 0.0, atom};
    }
  }
  // Phase-normalize into SU(2): [[a, -conj(b)], [b, conj(a)]].
  const Amplitude root = std::sqrt(m[0] * m[3] - m[1] * m[2]);
  const Amplitude a = m[0] / root;
  const Amplitude b = m[2] / root;
  const LocalOp guesses[] = {
      {GateKind::RZ, -2.0 * std::arg(a), atom},
      {GateKind::RX, 2.0 * std::atan2(-b.imag(), a.real()), atom},
      {GateKind::RY, 2.0 * std::atan2(b.real(), a.real()), atom},
  };
  for (const LocalOp& g : guesses) {
    if (proportional(m, gate_matrix(g.kind, g.angle))) {
      return g;
    }
  }
  LocalOp u{GateKind::U3, 2.0 * std::atan2(std::abs(m[2]), std::abs(m[0])), atom};
  if (std::abs(m[2]) < kTol) {
    u.lambda = std::arg(m[3]) - std::arg(m[0]);
  } else if (std::abs(m[0]) < kTol) {
    u.lambda = std::arg(-m[1]) - std::arg(m[2]);
  } else {
    u.phi = std::arg(m[2]) - std::arg(m[0]);
    u.lambda = std::arg(-m[1]) - std::arg(m[0]);
  }
  return u;
}

struct OpRef {
  std::size_t stage;
  std::size_t index;
};

} // namespace

Schedule fuse_local_ops(Schedule s) {
  std::map<AtomId, std::vector<OpRef>> runs;
  std::vector<std::vector<bool>> erase(s.stages.size());
  std::map<std::pair<std::size_t, std::size_t>, LocalOp> replace;

  auto close = [&](AtomId atom) {
    auto it = runs.find(atom);
    if (it == runs.end()) {
      return;
    }
    const std::vector<OpRef> run = std::move(it->second);
    runs.erase(it);
    Matrix2 m{1.0, 0.0, 0.0, 1.0};
    for (const OpRef& r : run) {
      m = mul(local_matrix(std::get<RamanStage>(s.stages[r.stage]).ops[r.index]), m);
    }
    for (const OpRef& r : run) {
      erase[r.stage][r.index] = true;
    }
    if (const std::optional<LocalOp> g = collapse(m, atom)) {
      const OpRef& last = run.back();
      erase[last.stage][last.index] = false;
      replace[{last.stage, last.index}] = *g;
    }
  };

  for (std::size_t i = 0; i < s.stages.size(); ++i) {
    std::visit(Overloaded{
                   [&](const RamanStage& st) {
                     erase[i].assign(st.ops.size(), false);
                     for (std::size_t j = 0; j < st.ops.size(); ++j) {
                       runs[st.ops[j].atom].push_back({i, j});
                     }
                   },
                   [&](const RydbergStage& st) {
                     for (const auto& [a, b] : st.pairs) {
                       close(a);
                       close(b);
                     }
                   },
                   [&](const TransferStage& st) {
                     for (const Transfer& t : st.transfers) {
                       close(t.atom);
                     }
                   },
                   [&](const MeasureStage&) {
                     while (!runs.empty()) {
                       close(runs.begin()->first);
                     }
                   },
                   [](const MoveStage&) {},
               },
               s.stages[i]);
  }
  while (!runs.empty()) {
    close(runs.begin()->first);
  }

  std::vector<Stage> out;
  out.reserve(s.stages.size());
  for (std::size_t i = 0; i < s.stages.size(); ++i) {
    if (auto* st = std::get_if<RamanStage>(&s.stages[i])) {
      std::vector<LocalOp> kept;
      for (std::size_t j = 0; j < st->ops.size(); ++j) {
        if (erase[i][j]) {
          continue;
        }
        auto it = replace.find({i, j});
        kept.push_back(it == replace.end() ? st->ops[j] : it->second);
      }
      if (kept.empty()) {
        continue;
      }
      st->ops = std::move(kept);
    }
    out.push_back(std::move(s.stages[i]));
  }
  s.stages = std::move(out);
  return s;
}

} // namespace qpilot
