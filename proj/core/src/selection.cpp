// SPDX-License-Identifier: Apache-2.0
#include "beamcoord/selection.hpp"

#include <stdexcept>
#include <string>

namespace beamcoord {

namespace {

// Lexicographically-first argmax: smallest q, then smallest p, among ties.
BeamPair argmax_pair(const arma::mat& table) {
  BeamPair best;
  double best_value = -arma::datum::inf;
  for (std::size_t q = 0; q < table.n_rows; ++q) {
    for (std::size_t p = 0; p < table.n_cols; ++p) {
      if (table(q, p) > best_value) {
        best_value = table(q, p);
        best = {q, p};
      }
    }
  }
  return best;
}

}  // namespace

const char* strategy_name(Strategy s) {
  switch (s) {
    case Strategy::kUncoordinated:
      return "uncoordinated";
    case Strategy::kNaive:
      return "naive";
    case Strategy::kStatistical:
      return "statistical";
    case Strategy::kRobust:
      return "robust";
  }
  return "unknown";
}

Strategy strategy_from_name(std::string_view name) {
  for (Strategy s : kAllStrategies) {
    if (name == strategy_name(s)) return s;
  }
  throw std::invalid_argument("unknown strategy: " + std::string(name));
}

const BeliefSet& SelectionContext::belief_of(std::size_t observer) const {
  if (observer < ue) {
    throw std::logic_error(
        "hierarchy violation: belief of a more informed UE requested");
  }
  return beliefs->at(observer);
}

std::uint64_t SelectionContext::selection_seed(std::size_t observer,
                                               Strategy s) const {
  return derive_seed(seed_base,
                     {stream_tag::kSelection, observer,
                      static_cast<std::uint64_t>(s)});
}

SelectionContext SelectionContext::at_rank(std::size_t observer) const {
  SelectionContext ctx = *this;
  ctx.ue = observer;
  return ctx;
}

double single_user_rate(const GainMatrix& g, std::size_t q, std::size_t p,
                        double noise_power) {
  return std::log2(1.0 + g(q, p) / noise_power);
}

BeamPair select_uncoordinated(const SelectionContext& ctx) {
  const BeliefSet& belief = ctx.belief_of(ctx.ue);
  const GainMatrix g =
      gain_matrix_analytic(belief.estimate_of(ctx.ue),
                           ctx.config->path_power_profile, *ctx.cb_ue,
                           *ctx.cb_bs);
  return argmax_pair(g);
}

arma::mat greedy_sum_rate_eval(const std::vector<GainMatrix>& gains,
                               const std::vector<BeamPair>& known,
                               std::size_t u, double noise_power) {
  const std::size_t num_ues = gains.size();
  if (u >= num_ues) {
    throw std::invalid_argument("greedy_sum_rate_eval: UE index out of range");
  }
  if (known.size() != num_ues - u - 1) {
    throw std::invalid_argument(
        "greedy_sum_rate_eval: need one known pair per UE u+1..K");
  }
  const std::size_t m_bs = gains[u].n_rows;
  const std::size_t m_ue = gains[u].n_cols;

  // UE-beam index per UE once fixed; the less informed UEs' pairs are
  // known from the start, the more informed ones get guessed below.
  std::vector<std::size_t> fixed_p(num_ues, 0);
  std::vector<bool> is_fixed(num_ues, false);
  for (std::size_t w = u + 1; w < num_ues; ++w) {
    fixed_p[w] = known[w - u - 1].ue_beam;
    is_fixed[w] = true;
  }

  // Per-row interference minima for the not-yet-guessed UEs: inside the
  // guessing loop the still-free interferer beams are chosen to minimize
  // their contribution, which decouples per BS row.
  std::vector<arma::vec> row_min(num_ues);
  for (std::size_t v = 1; v <= u; ++v) {
    row_min[v] = arma::min(gains[v], 1);
  }

  arma::vec denom(m_bs);
  for (std::size_t w = 0; w < u; ++w) {
    denom.fill(noise_power);
    for (std::size_t v = 0; v < num_ues; ++v) {
      if (v == w) continue;
      if (is_fixed[v]) {
        denom += gains[v].col(fixed_p[v]);
      } else {
        denom += row_min[v];
      }
    }
    BeamPair guess;
    double best = -arma::datum::inf;
    for (std::size_t q = 0; q < m_bs; ++q) {
      const double inv = 1.0 / denom[q];
      for (std::size_t p = 0; p < m_ue; ++p) {
        const double value = gains[w](q, p) * inv;
        if (value > best) {
          best = value;
          guess = {q, p};
        }
      }
    }
    fixed_p[w] = guess.ue_beam;
    is_fixed[w] = true;
  }

  denom.fill(noise_power);
  for (std::size_t w = 0; w < num_ues; ++w) {
    if (w == u) continue;
    denom += gains[w].col(fixed_p[w]);
  }
  arma::mat table = gains[u];
  table.each_col() /= denom;
  return table;
}

namespace {

BeamPair select_with_chain(const SelectionContext& ctx, Strategy strategy,
                           const std::vector<BeamPair>& known) {
  if (strategy == Strategy::kUncoordinated) {
    return select_uncoordinated(ctx);
  }
  return argmax_pair(averaged_rate_table(ctx, strategy, known));
}

// The naive strategy treats the UE's own estimates as globally shared, so
// it predicts the less informed UEs by running their selection on those
// estimates instead of retrieving their actual decisions. All gain
// matrices come from one belief set; the chain is rebuilt bottom-up.
std::vector<BeamPair> naive_chain(const SelectionContext& ctx) {
  const std::size_t num_ues = ctx.beliefs->size();
  const BeliefSet& belief = ctx.belief_of(ctx.ue);

  std::vector<GainMatrix> gains(num_ues);
  for (std::size_t w = 0; w < num_ues; ++w) {
    gains[w] = gain_matrix_analytic(belief.estimates[w],
                                    ctx.config->path_power_profile, *ctx.cb_ue,
                                    *ctx.cb_bs);
  }

  std::vector<BeamPair> chain(num_ues - ctx.ue - 1);
  for (std::size_t w = num_ues; w-- > ctx.ue + 1;) {
    const std::vector<BeamPair> below(chain.begin() +
                                          static_cast<std::ptrdiff_t>(w - ctx.ue),
                                      chain.end());
    chain[w - ctx.ue - 1] = argmax_pair(
        greedy_sum_rate_eval(gains, below, w, ctx.noise_power));
  }
  return chain;
}

}  // namespace

std::vector<BeamPair> predict_chain(const SelectionContext& ctx,
                                    Strategy strategy) {
  const std::size_t num_ues = ctx.beliefs->size();
  std::vector<BeamPair> chain(num_ues - ctx.ue - 1);
  for (std::size_t w = num_ues; w-- > ctx.ue + 1;) {
    const std::vector<BeamPair> below(chain.begin() +
                                          static_cast<std::ptrdiff_t>(w - ctx.ue),
                                      chain.end());
    chain[w - ctx.ue - 1] = select_with_chain(ctx.at_rank(w), strategy, below);
  }
  return chain;
}

arma::mat averaged_rate_table(const SelectionContext& ctx, Strategy strategy,
                              const std::vector<BeamPair>& known) {
  if (strategy == Strategy::kUncoordinated) {
    throw std::invalid_argument(
        "averaged_rate_table: coordinated strategies only");
  }
  const ScenarioConfig& cfg = *ctx.config;
  const BeliefSet& belief = ctx.belief_of(ctx.ue);
  const std::size_t num_ues = ctx.beliefs->size();

  // The naive strategy treats the UE's own estimates as exact and global:
  // a single pass over them, no sampling.
  const std::size_t iterations =
      strategy == Strategy::kNaive ? 1 : ctx.monte_carlo_iterations;
  Rng rng(ctx.selection_seed(ctx.ue, strategy));

  arma::mat acc(ctx.cb_bs->size(), ctx.cb_ue->size(), arma::fill::zeros);
  std::vector<GainMatrix> gains(num_ues);
  for (std::size_t i = 0; i < iterations; ++i) {
    std::vector<PositionMatrix> positions;
    switch (strategy) {
      case Strategy::kNaive:
        positions = belief.estimates;
        break;
      case Strategy::kStatistical:
        positions = sample_prior(cfg, rng);
        break;
      default:
        positions = sample_posterior(belief, cfg, rng);
        break;
    }
    for (std::size_t w = 0; w < num_ues; ++w) {
      gains[w] = gain_matrix_analytic(positions[w], cfg.path_power_profile,
                                      *ctx.cb_ue, *ctx.cb_bs);
    }
    const arma::mat proxy =
        greedy_sum_rate_eval(gains, known, ctx.ue, ctx.noise_power);
    acc += arma::log2(1.0 + proxy);
  }
  return acc / static_cast<double>(iterations);
}

BeamPair select_coordinated(const SelectionContext& ctx, Strategy strategy) {
  if (strategy == Strategy::kUncoordinated) {
    throw std::invalid_argument("select_coordinated: coordinated strategies only");
  }
  const std::vector<BeamPair> chain = strategy == Strategy::kNaive
                                          ? naive_chain(ctx)
                                          : predict_chain(ctx, strategy);
  return select_with_chain(ctx, strategy, chain);
}

BeamPair select_beams(const SelectionContext& ctx, Strategy strategy) {
  if (strategy == Strategy::kUncoordinated) {
    return select_uncoordinated(ctx);
  }
  return select_coordinated(ctx, strategy);
}

}  // namespace beamcoord
