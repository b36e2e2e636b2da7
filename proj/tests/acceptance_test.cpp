// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Heavier criteria exercise the full experiment pipeline and leave
// their data products in the working directory for inspection.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "brnav/experiment.hpp"
#include "brnav/numeric.hpp"
#include "discrete_oracle.hpp"

using namespace brnav;
namespace fs = std::filesystem;

namespace {

struct Criterion {
  std::string name;
  std::function<bool(std::string&)> run;
};

fs::path work_dir() {
  const fs::path dir = fs::current_path() / "acceptance_out";
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// --- 1. Prior recovery: beta = 0 returns the batch mean -------------------

bool prior_recovery(std::string& detail) {
  const UniformPrior prior{0.0, 1.0, 6};
  Game game;
  game.goals = {Vec3(4.0, 0.0, 1.0), Vec3(-4.0, 0.0, 1.0)};
  game.dt = 0.25;
  JointState state;
  state.agents = {AgentState{Vec3(-2.0, 0.0, 1.0)}, AgentState{Vec3(2.0, 0.0, 1.0)}};
  const std::vector<ActionSequence> plans(2, ActionSequence{std::vector<Action>(6)});

  double worst = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    const SeededGenerator gen(2000 + trial, 0);
    const int count = 1000 + 111 * trial;
    const BestResponse response = best_response(0, state, plans, prior,
                                                RationalityLevel{0.0}, count, gen, game);
    SeededGenerator replay = gen;
    const SampleBatch batch = draw_batch(prior, replay, count);
    for (int h = 0; h < batch.horizon; ++h) {
      Vec3 mean = Vec3::Zero();
      for (int k = 0; k < count; ++k) mean += batch.sequence(k)[h];
      mean /= count;
      worst = std::max(worst,
                       (response.plan.actions[h].velocity - mean).cwiseAbs().maxCoeff());
    }
  }
  detail = "max |mean deviation| = " + format_g9(worst);
  return worst < 1e-9;
}

// --- 2. Oracle equivalence on the discretized instance --------------------

bool oracle_equivalence(std::string& detail) {
  const testing::DiscreteLineProblem problem;  // H=3, speeds {0, 0.5, 1}
  const SeededGenerator root(90210, 0);
  double total = 0.0;
  for (int seed = 0; seed < 20; ++seed) {
    total += problem.estimator_error(100'000,
                                     root.substream(static_cast<std::uint64_t>(seed)));
  }
  const double mean_error = total / 20.0;
  detail = "mean |error| = " + format_g9(mean_error) + " (limit 0.01)";
  return mean_error < 0.01;
}

// --- 3. Shift invariance ---------------------------------------------------

bool shift_invariance(std::string& detail) {
  const std::vector<double> utilities{-4.0, -1.3, 0.0, 2.2, 5.5, -0.7};
  const SoftmaxWeights base = compute_weights(utilities, RationalityLevel{0.8});
  double worst = 0.0;
  for (const double shift : {1.0, 1000.0}) {
    std::vector<double> moved = utilities;
    for (double& u : moved) u += shift;
    const SoftmaxWeights shifted = compute_weights(moved, RationalityLevel{0.8});
    for (std::size_t i = 0; i < utilities.size(); ++i) {
      worst = std::max(worst, std::abs(shifted.weights[i] - base.weights[i]));
    }
  }
  detail = "max |weight shift| = " + format_g9(worst);
  return worst < 1e-9;
}

// --- 4. Monotone KL in beta -------------------------------------------------

bool monotone_kl(std::string& detail) {
  const UniformPrior prior{0.0, 1.0, 5};
  Game game;
  game.goals = {Vec3(3.0, 1.0, 1.0)};
  game.dt = 0.25;
  JointState state;
  state.agents = {AgentState{Vec3::Zero()}};
  const std::vector<ActionSequence> plans{ActionSequence{std::vector<Action>(5)}};
  SeededGenerator gen(777, 3);
  const SampleBatch batch = draw_batch(prior, gen, 2000);
  const std::vector<double> utilities = evaluate_batch(batch, 0, state, plans, game);

  std::ostringstream history;
  double previous = -1.0;
  bool increasing = true;
  for (const double beta : {0.0, 0.05, 0.1, 0.5, 1.0}) {
    const SoftmaxWeights sw = compute_weights(utilities, RationalityLevel{beta});
    const double kl = kl_from_prior(sw.weights);
    history << " " << format_g9(kl);
    increasing = increasing && kl > previous;
    previous = kl;
  }
  detail = "KL(beta grid) =" + history.str();
  return increasing;
}

// --- 5. Rationality exploitation trend (travel distances) ------------------

bool beta_exploitation(std::string& detail) {
  ExperimentSpec spec;
  spec.scenario = position_swap_scenario(4, 6.0, 1.0, 0.05);
  spec.scenario.solver.samples_per_response = 20'000;
  spec.scenario.episode.base_seed = 1001;
  spec.ego_betas = {0.01, 0.13};
  spec.runs = 10;
  spec.out_dir = work_dir() / "beta_exploitation";
  const ExperimentResult result = run_experiment(spec);
  if (result.cells.size() != 2 || result.cells[0].episodes.size() != 10 ||
      result.cells[1].episodes.size() != 10) {
    detail = "experiment failed to complete";
    return false;
  }
  const AggregateSummary& low = result.cells[0].summary;   // ego beta 0.01
  const AggregateSummary& high = result.cells[1].summary;  // ego beta 0.13
  detail = "ego(0.01) = " + format_g9(low.ego_travel.mean) +
           ", others(0.01) = " + format_g9(low.others_travel.mean) +
           "; ego(0.13) = " + format_g9(high.ego_travel.mean) +
           ", others(0.13) = " + format_g9(high.others_travel.mean);
  return high.ego_travel.mean < low.ego_travel.mean &&
         high.ego_travel.mean < high.others_travel.mean &&
         low.ego_travel.mean > low.others_travel.mean;
}

// --- 6. Computation/performance trade-off ----------------------------------

bool budget_tradeoff(std::string& detail) {
  std::vector<std::vector<double>> group_mean(2, std::vector<double>(2, 0.0));
  const std::vector<double> betas{0.05, 0.3};
  for (std::size_t b = 0; b < betas.size(); ++b) {
    ExperimentSpec spec;
    spec.scenario = position_swap_scenario(4, 6.0, 1.0, betas[b]);
    spec.scenario.episode.base_seed = 2002;
    spec.sample_counts = {200, 20'000};
    spec.runs = 10;
    spec.out_dir = work_dir() / ("budget_beta" + format_g9(betas[b]));
    const ExperimentResult result = run_experiment(spec);
    if (result.cells.size() != 2) {
      detail = "experiment failed to complete";
      return false;
    }
    for (std::size_t c = 0; c < 2; ++c) {
      if (result.cells[c].episodes.size() != 10) {
        detail = "experiment failed to complete";
        return false;
      }
      group_mean[b][c] = result.cells[c].summary.group_travel.mean;
    }
  }
  detail = "K=200: beta 0.05 -> " + format_g9(group_mean[0][0]) + ", beta 0.3 -> " +
           format_g9(group_mean[1][0]) + "; K=20000: beta 0.05 -> " +
           format_g9(group_mean[0][1]) + ", beta 0.3 -> " + format_g9(group_mean[1][1]);
  const bool starved = group_mean[1][0] >= group_mean[0][0];  // high beta hurts
  const bool funded = group_mean[1][1] < group_mean[0][1];    // ordering reverses
  return starved && funded;
}

// --- 7. Safety distances ----------------------------------------------------

bool safety_distances(std::string& detail) {
  ExperimentSpec spec;
  spec.scenario = position_swap_scenario(4, 6.0, 1.0, 0.1);
  spec.scenario.solver.samples_per_response = 50'000;
  spec.scenario.episode.base_seed = 3003;
  spec.runs = 10;
  spec.out_dir = work_dir() / "safety";
  const ExperimentResult result = run_experiment(spec);
  if (result.cells.size() != 1 || result.cells[0].episodes.size() != 10) {
    detail = "experiment failed to complete";
    return false;
  }
  const AggregateSummary& summary = result.cells[0].summary;
  detail = "safety_rate = " + format_g9(summary.safety_rate) +
           ", worst pairwise distance = " + format_g9(summary.min_min_pairwise) +
           " (recorded in manifest)";
  return summary.safety_rate >= 0.95;
}

// --- 8. IBR convergence ------------------------------------------------------

bool ibr_convergence(std::string& detail) {
  std::ostringstream info;
  bool pass = true;
  for (const int agents : {2, 4}) {
    ScenarioConfig scenario = position_swap_scenario(agents, 6.0, 1.0, 0.1);
    scenario.solver.samples_per_response = 20'000;
    scenario.episode.base_seed = 4004;
    int converged = 0;
    int steps = 0;
    for (int run = 0; run < 5; ++run) {
      const EpisodeResult episode = run_episode(scenario, run);
      for (const StepDiagnostics& diag : episode.diagnostics) {
        ++steps;
        if (diag.converged) ++converged;
      }
    }
    const double rate = static_cast<double>(converged) / steps;
    info << agents << " agents: " << format_g9(rate) << "  ";
    pass = pass && rate >= 0.90;
  }
  detail = info.str() + "(limit 0.90)";
  return pass;
}

// --- 9. Determinism -----------------------------------------------------------

bool determinism(std::string& detail) {
  auto make_spec = [](const fs::path& out, int threads) {
    ExperimentSpec spec;
    spec.scenario = position_swap_scenario(2, 6.0, 1.0, 0.1);
    spec.scenario.solver.samples_per_response = 2000;
    spec.scenario.episode.timesteps = 10;
    spec.scenario.episode.base_seed = 9009;
    spec.ego_betas = {0.05, 0.1};
    spec.runs = 2;
    spec.threads = threads;
    spec.deterministic = true;
    spec.out_dir = out;
    return spec;
  };
  const fs::path base = work_dir() / "determinism";
  const fs::path out_a = base / "first";
  const fs::path out_b = base / "second";
  const fs::path out_c = base / "threads8";
  run_experiment(make_spec(out_a, 1));
  run_experiment(make_spec(out_b, 1));
  run_experiment(make_spec(out_c, 8));

  int files = 0;
  for (const auto& entry : fs::directory_iterator(out_a)) {
    ++files;
    const std::string name = entry.path().filename().string();
    const std::string reference = slurp(entry.path());
    if (reference != slurp(out_b / name) || reference != slurp(out_c / name)) {
      detail = "mismatch in " + name;
      return false;
    }
  }
  detail = std::to_string(files) + " files byte-identical across invocations and threads {1, 8}";
  return files > 0;
}

}  // namespace

int main() {
  fs::create_directories(work_dir());
  const std::vector<Criterion> criteria{
      {"1 prior recovery (beta=0 equals batch mean, 1e-9)", prior_recovery},
      {"2 oracle equivalence (IS estimate vs 3^H enumeration, 1%)", oracle_equivalence},
      {"3 shift invariance (U -> U+c, 1e-9)", shift_invariance},
      {"4 monotone KL over beta grid", monotone_kl},
      {"5 rationality exploitation trend (ego vs others travel)", beta_exploitation},
      {"6 sample-budget trade-off (high beta hurts when starved)", budget_tradeoff},
      {"7 safety distances (>0.25 m at >=95% of timesteps)", safety_distances},
      {"8 IBR convergence (<1e-3 by iteration 10 in >=90% of steps)", ibr_convergence},
      {"9 determinism (byte-identical outputs, threads {1,8})", determinism},
  };

  int failures = 0;
  for (const Criterion& criterion : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
      ok = criterion.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] criterion %s — %s (%.1fs)\n", ok ? "PASS" : "FAIL",
                criterion.name.c_str(), detail.c_str(), seconds);
    std::fflush(stdout);
    if (!ok) ++failures;
  }
  if (failures > 0) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
