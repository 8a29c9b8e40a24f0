#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "qpilot/schedule.hpp"

namespace qpilot {

struct Metrics {
  std::size_t depth = 0;   ///< Rydberg stages with at least one pair
  std::size_t g1 = 0;      ///< single-qubit Raman operations
  std::size_t g2 = 0;      ///< intended Rydberg pairs, copy and recycle included
  std::size_t n_atoms = 0; ///< data atoms plus peak live ancillas
  std::vector<double> stage_distances; ///< per move, in units of the array diagonal
  std::map<std::size_t, std::size_t> parallelism_hist; ///< pairs per stage -> stages

  [[nodiscard]] double mean_parallelism() const {
    return depth == 0 ? 0.0 : static_cast<double>(g2) / static_cast<double>(depth);
  }
  bool operator==(const Metrics&) const = default;
};

/// Throws InvalidScheduleError when `check` is set and validate() reports
/// any violation.
[[nodiscard]] Metrics evaluate(const Schedule& s, bool check = true);

struct NoiseParams {
  double f1 = 0.999;
  double f2 = 0.999;
  double t2 = 1.5;    ///< seconds
  double t0 = 300e-6; ///< seconds for a full-diagonal move
  /// Throws InvalidArgument unless 0 < f1, f2 <= 1 and t0, t2 > 0.
  void check() const;
};

/// Exponent of f2 in the error model: the product N * T as printed, or the
/// number of two-qubit gates.
enum class ExponentMode : std::uint8_t { Literal, GateCount };

/// 1 - f2^E f1^G1 exp(-N sum_i t0 sqrt(D_i) / t2), computed in log space.
[[nodiscard]] double error_rate(const Metrics& m, const NoiseParams& p,
                                ExponentMode mode = ExponentMode::Literal);

void to_json(nlohmann::json& j, const Metrics& m);
void from_json(const nlohmann::json& j, Metrics& m);
void to_json(nlohmann::json& j, const NoiseParams& p);
void from_json(const nlohmann::json& j, NoiseParams& p);

} // namespace qpilot
