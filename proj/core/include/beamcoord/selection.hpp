// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <armadillo>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "beamcoord/beamgain.hpp"
#include "beamcoord/codebook.hpp"
#include "beamcoord/scenario.hpp"

namespace beamcoord {

/// The four decentralized beam-selection strategies. Uncoordinated picks
/// each UE's own strongest beam pair; the coordinated variants score
/// candidates against the predicted choices of the other UEs, using the
/// UE's own estimates as exact (naive), the prior only (statistical), or
/// the posterior given the UE's estimates (robust).
enum class Strategy : std::uint8_t {
  kUncoordinated = 0,
  kNaive = 1,
  kStatistical = 2,
  kRobust = 3,
};

inline constexpr Strategy kAllStrategies[] = {
    Strategy::kUncoordinated, Strategy::kNaive, Strategy::kStatistical,
    Strategy::kRobust};

const char* strategy_name(Strategy s);
Strategy strategy_from_name(std::string_view name);  // throws on unknown

struct BeamPair {
  std::size_t bs_beam = 0;  ///< q
  std::size_t ue_beam = 0;  ///< p
  auto operator<=>(const BeamPair&) const = default;
};

/// Selected (q_u, p_u) for every UE; index 0 is the most informed UE.
struct BeamAssignment {
  std::vector<BeamPair> pairs;
};

/// Inputs one UE needs to run its selection: its rank in the information
/// hierarchy, the belief sets it can read (its own and those of all less
/// informed UEs), scenario priors, codebooks and the Monte-Carlo budget.
struct SelectionContext {
  std::size_t ue = 0;  ///< 0-based rank, 0 = most informed
  const std::vector<BeliefSet>* beliefs = nullptr;
  const ScenarioConfig* config = nullptr;
  const Codebook* cb_ue = nullptr;
  const Codebook* cb_bs = nullptr;
  std::size_t monte_carlo_iterations = 64;  ///< M
  double noise_power = 1.0;
  /// Per-trial seed; the per-(UE, strategy) sampling streams derive from
  /// it, so any UE can replay the decisions of less informed UEs exactly.
  std::uint64_t seed_base = 0;

  /// Hierarchical access: only observers >= ue may be read.
  const BeliefSet& belief_of(std::size_t observer) const;
  std::uint64_t selection_seed(std::size_t observer, Strategy s) const;
  SelectionContext at_rank(std::size_t observer) const;
};

/// log2(1 + G[q, p] / noise_power).
double single_user_rate(const GainMatrix& g, std::size_t q, std::size_t p,
                        double noise_power);

/// Argmax of the UE's own gain matrix, built from its estimate of its own
/// position matrix. Ties break toward the smallest (q, then p).
BeamPair select_uncoordinated(const SelectionContext& ctx);

/// SINR-proxy table for UE u given gain matrices for all K UEs and the
/// already-fixed pairs of UEs u+1..K-1 (known[j] belongs to UE u+1+j).
/// Guesses the pairs of the more informed UEs 0..u-1 greedily, most
/// informed first: at each step the free interferer beams are the
/// minimizers of their interference, the best (q_w, p_w) is fixed and the
/// rest discarded. Returns G^u[q,p] / (sum_{w != u} G^w[q, p_w] + noise)
/// for every candidate (q, p).
arma::mat greedy_sum_rate_eval(const std::vector<GainMatrix>& gains,
                               const std::vector<BeamPair>& known,
                               std::size_t u, double noise_power);

/// Hierarchical retrieval: replays the selections of the less informed
/// UEs u+1..K-1 by running their own selection on their own belief sets
/// (and seeds), least informed first, which reproduces their actual
/// decisions exactly. Entry j of the result belongs to UE u+1+j. Empty
/// for the least informed UE.
std::vector<BeamPair> predict_chain(const SelectionContext& ctx,
                                    Strategy strategy);

/// Monte-Carlo averaged rate table the coordinated strategies maximize:
/// per iteration, draw position matrices (naive: the UE's own estimates,
/// one iteration; statistical: prior; robust: posterior), build all K gain
/// matrices, score candidates with greedy_sum_rate_eval and average
/// log2(1 + proxy) across iterations.
arma::mat averaged_rate_table(const SelectionContext& ctx, Strategy strategy,
                              const std::vector<BeamPair>& known);

/// Argmax of averaged_rate_table over the predicted decisions of the less
/// informed UEs; ties break toward the smallest (q, then p). The
/// statistical and robust strategies predict through predict_chain (exact
/// hierarchical retrieval); the naive strategy instead simulates the
/// other UEs on its own estimates, consistent with treating them as
/// globally shared.
BeamPair select_coordinated(const SelectionContext& ctx, Strategy strategy);

/// Dispatch on strategy kind.
BeamPair select_beams(const SelectionContext& ctx, Strategy strategy);

}  // namespace beamcoord
