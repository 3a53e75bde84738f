// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <vector>

#include "test_util.hpp"

using namespace beamcoord;

namespace {

// Literal staged-guessing oracle: at every step the whole free index tuple
// (q_w, p_w and the beams of all not-yet-fixed interferers) is enumerated.
// Exponential, usable only at toy codebook sizes; the implementation under
// test must reproduce its tables exactly.
arma::mat oracle_greedy(const std::vector<GainMatrix>& gains,
                        const std::vector<BeamPair>& known, std::size_t u,
                        double noise) {
  const std::size_t num_ues = gains.size();
  const std::size_t m_bs = gains[u].n_rows;
  const std::size_t m_ue = gains[u].n_cols;

  std::vector<std::size_t> fixed_p(num_ues, 0);
  std::vector<bool> is_fixed(num_ues, false);
  for (std::size_t w = u + 1; w < num_ues; ++w) {
    fixed_p[w] = known[w - u - 1].ue_beam;
    is_fixed[w] = true;
  }

  for (std::size_t w = 0; w < u; ++w) {
    std::vector<std::size_t> free_ues;
    for (std::size_t v = w + 1; v <= u; ++v) free_ues.push_back(v);

    double best = -1.0;
    BeamPair guess;
    for (std::size_t q = 0; q < m_bs; ++q) {
      for (std::size_t p = 0; p < m_ue; ++p) {
        // Enumerate every combination of the free interferer beams and
        // keep the best (largest) objective for this (q, p).
        std::vector<std::size_t> combo(free_ues.size(), 0);
        double best_here = -1.0;
        for (;;) {
          double denom = noise;
          for (std::size_t v = 0; v < num_ues; ++v) {
            if (v == w) continue;
            if (is_fixed[v]) denom += gains[v](q, fixed_p[v]);
          }
          for (std::size_t j = 0; j < free_ues.size(); ++j) {
            denom += gains[free_ues[j]](q, combo[j]);
          }
          best_here = std::max(best_here, gains[w](q, p) / denom);

          std::size_t digit = 0;
          while (digit < combo.size() && ++combo[digit] == m_ue) {
            combo[digit++] = 0;
          }
          if (digit == combo.size()) break;
          if (combo.empty()) break;
        }
        if (best_here > best) {
          best = best_here;
          guess = {q, p};
        }
      }
    }
    fixed_p[w] = guess.ue_beam;
    is_fixed[w] = true;
  }

  arma::mat table(m_bs, m_ue);
  for (std::size_t q = 0; q < m_bs; ++q) {
    for (std::size_t p = 0; p < m_ue; ++p) {
      double denom = noise;
      for (std::size_t w = 0; w < num_ues; ++w) {
        if (w != u) denom += gains[w](q, fixed_p[w]);
      }
      table(q, p) = gains[u](q, p) / denom;
    }
  }
  return table;
}

struct SelectionFixture {
  ScenarioConfig cfg;
  Codebook cb_ue;
  Codebook cb_bs;
  std::vector<PositionMatrix> truth;
  std::vector<BeliefSet> beliefs;

  SelectionFixture(std::size_t num_ues, std::size_t m, std::size_t n,
                   std::uint64_t seed, double radius = 0.0,
                   std::vector<double> profile = {})
      : cfg(test::small_scenario(num_ues, m, n)) {
    if (!profile.empty()) {
      cfg.path_power_profile = std::move(profile);
      cfg.num_paths = cfg.path_power_profile.size();
    }
    cb_ue = build_codebook(m, n, ArraySide::kUe);
    cb_bs = build_codebook(m, n, ArraySide::kBs);
    Rng rng(derive_seed(seed, {stream_tag::kScenario}));
    truth = sample_scenario(cfg, rng);
    ErrorModel em(num_ues, cfg.num_paths);
    for (std::size_t u = 0; u < num_ues; ++u) {
      em.set_observer_radius(u, radius);
    }
    Rng brng(derive_seed(seed, {stream_tag::kBeliefs}));
    beliefs = build_beliefs(truth, em, brng);
  }

  SelectionContext context(std::size_t ue, std::uint64_t seed_base = 99,
                           std::size_t iterations = 32) const {
    SelectionContext ctx;
    ctx.ue = ue;
    ctx.beliefs = &beliefs;
    ctx.config = &cfg;
    ctx.cb_ue = &cb_ue;
    ctx.cb_bs = &cb_bs;
    ctx.monte_carlo_iterations = iterations;
    ctx.noise_power = cfg.noise_power;
    ctx.seed_base = seed_base;
    return ctx;
  }
};

}  // namespace

TEST_CASE("single-user rate closed forms") {
  GainMatrix g(2, 2, arma::fill::zeros);
  g(0, 0) = 0.0;
  g(0, 1) = 2.0;
  g(1, 0) = 6.0;
  CHECK(single_user_rate(g, 0, 0, 2.0) == 0.0);
  CHECK(single_user_rate(g, 0, 1, 2.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(single_user_rate(g, 1, 0, 2.0) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("uncoordinated selection") {
  SUBCASE("on-grid single path is found exactly") {
    SelectionFixture fx(1, 16, 16, 21, 0.0, {1.0});
    fx.truth[0] = test::make_los_position(fx.cb_bs.grid_cosines[5]);
    fx.beliefs[0].estimates[0] = fx.truth[0];
    const BeamPair pair = select_uncoordinated(fx.context(0));
    CHECK(pair.bs_beam == 5);
    CHECK(pair.ue_beam ==
          test::nearest_grid_index(fx.cb_ue, -fx.cb_bs.grid_cosines[5]));
  }

  SUBCASE("off-grid single path snaps to the nearest cosines") {
    const std::size_t m = 64, n = 64;
    SelectionFixture fx(1, m, n, 22, 0.0, {1.0});
    Rng rng(23);
    for (int i = 0; i < 50; ++i) {
      const double c = 1.9 * rng.uniform() - 0.95;
      fx.truth[0] = test::make_los_position(c);
      fx.beliefs[0].estimates[0] = fx.truth[0];
      const PathAngles angles = angles_from_positions(fx.truth[0]);
      const BeamPair pair = select_uncoordinated(fx.context(0));
      CHECK(pair.bs_beam ==
            test::nearest_grid_index(fx.cb_bs, std::cos(angles.aoa[0])));
      CHECK(pair.ue_beam ==
            test::nearest_grid_index(fx.cb_ue, std::cos(angles.aod[0])));
    }
  }

  SUBCASE("exact gain ties break to the smallest indices") {
    // A single-antenna array has no directivity, so the kernel is exactly
    // 1 for every offset and whole rows (or the whole table) tie bitwise.
    SelectionFixture all_tied(1, 8, 1, 24, 0.0, {1.0});
    const GainMatrix g = gain_matrix_analytic(
        all_tied.truth[0], all_tied.cfg.path_power_profile, all_tied.cb_ue,
        all_tied.cb_bs);
    CHECK(g.min() == g.max());  // every entry ties
    const BeamPair pair = select_uncoordinated(all_tied.context(0));
    CHECK(pair.bs_beam == 0);
    CHECK(pair.ue_beam == 0);

    // One-antenna BS side only: every row ties, the UE beam stays free.
    SelectionFixture row_tied(1, 8, 8, 25, 0.0, {1.0});
    row_tied.cfg.n_bs = 1;
    row_tied.cb_bs = build_codebook(8, 1, ArraySide::kBs);
    const GainMatrix gr = gain_matrix_analytic(
        row_tied.truth[0], row_tied.cfg.path_power_profile, row_tied.cb_ue,
        row_tied.cb_bs);
    const BeamPair rp = select_uncoordinated(row_tied.context(0));
    CHECK(rp.bs_beam == 0);
    CHECK(gr(0, rp.ue_beam) == gr.max());
  }
}

TEST_CASE("greedy sum-rate table") {
  const double noise = 0.1;

  SUBCASE("single UE reduces to its own scaled gain matrix") {
    GainMatrix g(4, 4, arma::fill::randu);
    const arma::mat table = greedy_sum_rate_eval({g}, {}, 0, noise);
    CHECK(arma::abs(table - g / noise).max() <= 1e-14);
  }

  SUBCASE("disjoint dominant beams leave the maximum untouched") {
    GainMatrix g0(8, 8, arma::fill::zeros);
    GainMatrix g1(8, 8, arma::fill::zeros);
    g0.fill(1e-4);
    g1.fill(1e-4);
    g0(2, 3) = 64.0;
    g1(5, 7) = 64.0;
    const std::vector<GainMatrix> gains{g0, g1};
    const arma::mat table = greedy_sum_rate_eval(gains, {}, 1, noise);
    const arma::mat oracle = oracle_greedy(gains, {}, 1, noise);
    CHECK(arma::abs(table - oracle).max() <= 1e-12 * oracle.max());

    BeamPair best;
    double best_value = -1.0;
    for (std::size_t q = 0; q < 8; ++q) {
      for (std::size_t p = 0; p < 8; ++p) {
        if (table(q, p) > best_value) {
          best_value = table(q, p);
          best = {q, p};
        }
      }
    }
    CHECK(best.bs_beam == 5);
    CHECK(best.ue_beam == 7);
    // Interference at the maximizer is negligible.
    CHECK(table(5, 7) == doctest::Approx(64.0 / (noise + 1e-4)).epsilon(1e-6));
  }

  SUBCASE("matches the exhaustive oracle on random tables") {
    Rng rng(31);
    for (int rep = 0; rep < 20; ++rep) {
      const std::size_t num_ues = 2 + (rep % 2);  // K = 2 and K = 3
      std::vector<GainMatrix> gains;
      for (std::size_t w = 0; w < num_ues; ++w) {
        GainMatrix g(6, 6);
        for (auto& v : g) v = rng.uniform() * 10.0;
        gains.push_back(g);
      }
      for (std::size_t u = 0; u < num_ues; ++u) {
        std::vector<BeamPair> known;
        for (std::size_t w = u + 1; w < num_ues; ++w) {
          known.push_back({static_cast<std::size_t>(rng.uniform() * 6),
                           static_cast<std::size_t>(rng.uniform() * 6)});
        }
        const arma::mat table = greedy_sum_rate_eval(gains, known, u, noise);
        const arma::mat oracle = oracle_greedy(gains, known, u, noise);
        CHECK(arma::abs(table - oracle).max() <= 1e-12 * oracle.max());
      }
    }
  }

  SUBCASE("scaling gains and noise together changes nothing") {
    Rng rng(32);
    std::vector<GainMatrix> gains(2, GainMatrix(6, 6));
    for (auto& g : gains) {
      for (auto& v : g) v = rng.uniform() * 5.0;
    }
    const std::vector<BeamPair> known{{3, 2}};
    const arma::mat a = greedy_sum_rate_eval(gains, known, 0, noise);
    std::vector<GainMatrix> scaled{17.0 * gains[0], 17.0 * gains[1]};
    const arma::mat b = greedy_sum_rate_eval(scaled, known, 0, 17.0 * noise);
    // The proxy is a ratio, so the whole table (and hence every selected
    // pair) is invariant under the common scaling.
    CHECK(arma::abs(a - b).max() <= 1e-12 * a.max());
  }
}

TEST_CASE("hierarchical prediction replays lower ranks exactly") {
  for (Strategy strategy : kAllStrategies) {
    CAPTURE(strategy_name(strategy));
    SelectionFixture fx(3, 8, 8, 41, 2.0);
    const SelectionContext top = fx.context(0);

    // The least informed UE has nothing to predict.
    CHECK(predict_chain(fx.context(2), strategy).empty());

    const std::vector<BeamPair> chain = predict_chain(top, strategy);
    REQUIRE(chain.size() == 2);
    for (std::size_t w = 1; w < 3; ++w) {
      const BeamPair own = select_beams(fx.context(w), strategy);
      CHECK(chain[w - 1] == own);
    }

    // Replaying twice is bitwise stable.
    const std::vector<BeamPair> again = predict_chain(top, strategy);
    CHECK(chain == again);
  }
}

TEST_CASE("coordinated selection collapses") {
  SUBCASE("zero radii make robust identical to naive") {
    for (int rep = 0; rep < 10; ++rep) {
      SelectionFixture fx(2, 16, 16, 50 + rep, 0.0);
      for (std::size_t u = 0; u < 2; ++u) {
        const BeamPair naive =
            select_coordinated(fx.context(u), Strategy::kNaive);
        const BeamPair robust =
            select_coordinated(fx.context(u), Strategy::kRobust);
        CHECK(naive == robust);
      }
    }
  }

  SUBCASE("K = 1 with exact beliefs: naive and robust equal uncoordinated") {
    for (int rep = 0; rep < 10; ++rep) {
      SelectionFixture fx(1, 16, 16, 70 + rep, 0.0);
      const BeamPair un = select_uncoordinated(fx.context(0));
      CHECK(select_coordinated(fx.context(0), Strategy::kNaive) == un);
      CHECK(select_coordinated(fx.context(0), Strategy::kRobust) == un);
    }
  }

  SUBCASE("K = 1 with a point prior: all four strategies agree") {
    // With the cluster collapsed onto an on-grid LoS direction the prior
    // leaves no freedom for the dominant path, so the prior-driven
    // statistical strategy must pick the same pair as the others.
    for (int rep = 0; rep < 10; ++rep) {
      SelectionFixture fx(1, 16, 16, 90 + rep, 0.0);
      fx.cfg.cluster_radius = 0.0;
      const Codebook& cb = fx.cb_bs;
      fx.cfg.cluster_center =
          Vec2{100.0 * cb.grid_cosines[4],
               100.0 * std::sqrt(1.0 - cb.grid_cosines[4] * cb.grid_cosines[4])};
      Rng rng(derive_seed(90 + rep, {stream_tag::kScenario, 1}));
      fx.truth = sample_scenario(fx.cfg, rng);
      ErrorModel em(1, fx.cfg.num_paths);
      Rng brng(derive_seed(90 + rep, {stream_tag::kBeliefs, 1}));
      fx.beliefs = build_beliefs(fx.truth, em, brng);

      const BeamPair un = select_uncoordinated(fx.context(0));
      for (Strategy s :
           {Strategy::kNaive, Strategy::kStatistical, Strategy::kRobust}) {
        CHECK(select_coordinated(fx.context(0), s) == un);
      }
    }
  }
}

TEST_CASE("naive prediction runs on the UE's own estimates") {
  // The naive strategy treats its estimates as globally shared, so its
  // decision cannot depend on what the less informed UEs actually
  // believe. The robust strategy retrieves their actual decisions through
  // the hierarchy, so it does.
  bool robust_differs = false;
  for (int rep = 0; rep < 8; ++rep) {
    SelectionFixture fx(2, 16, 16, 150 + rep, 0.0);
    SelectionFixture noisy(2, 16, 16, 150 + rep, 25.0);
    // Same truth and seeds; only the belief noise differs. Give the most
    // informed UE exact estimates in both fixtures.
    noisy.beliefs[0] = fx.beliefs[0];

    const BeamPair a = select_coordinated(fx.context(0), Strategy::kNaive);
    const BeamPair b = select_coordinated(noisy.context(0), Strategy::kNaive);
    CHECK(a == b);

    if (select_coordinated(fx.context(0), Strategy::kRobust) !=
        select_coordinated(noisy.context(0), Strategy::kRobust)) {
      robust_differs = true;
    }
  }
  CHECK(robust_differs);
}

TEST_CASE("coordination dodges a shared dominant BS row") {
  // Total LoS blockage with one stronger reflected path: every UE's best
  // row is the first reflector's arrival beam, so uncoordinated selection
  // collides there, while the naive-coordinated less informed UE predicts
  // the collision and moves to the second reflector's row.
  SelectionFixture fx(2, 8, 8, 111, 0.0, {0.0, 0.6, 0.4});

  const PathAngles angles = angles_from_positions(fx.truth[0]);
  const std::size_t row_r1 =
      test::nearest_grid_index(fx.cb_bs, std::cos(angles.aoa[1]));
  const std::size_t row_r2 =
      test::nearest_grid_index(fx.cb_bs, std::cos(angles.aoa[2]));
  REQUIRE(row_r1 != row_r2);  // geometry precondition for this seed

  const BeamPair un0 = select_uncoordinated(fx.context(0));
  const BeamPair un1 = select_uncoordinated(fx.context(1));
  CHECK(un0.bs_beam == row_r1);
  CHECK(un1.bs_beam == row_r1);  // collision

  const BeamPair nc1 = select_coordinated(fx.context(1), Strategy::kNaive);
  const BeamPair nc0 = select_coordinated(fx.context(0), Strategy::kNaive);
  CHECK(nc0.bs_beam != nc1.bs_beam);
}

TEST_CASE("robust averaged table converges to the statistical one") {
  // With error disks much larger than every prior support, the posterior
  // collapses onto the prior and the two Monte-Carlo averages must meet.
  // LoS-only geometry: the prior shares reflector draws across UEs while
  // the posterior perturbs each UE's copies independently, so the joint
  // distributions can only coincide when there are no reflector nodes.
  SelectionFixture fx(2, 4, 4, 131, 10000.0, {1.0});
  SelectionContext ctx = fx.context(1, 7, 50000);
  const arma::mat robust =
      averaged_rate_table(ctx, Strategy::kRobust, {});
  const arma::mat statistical =
      averaged_rate_table(ctx, Strategy::kStatistical, {});
  for (std::size_t q = 0; q < 4; ++q) {
    for (std::size_t p = 0; p < 4; ++p) {
      const double diff = std::abs(robust(q, p) - statistical(q, p));
      CHECK(diff <= 0.05 * std::max({robust(q, p), statistical(q, p), 0.4}));
    }
  }
}
