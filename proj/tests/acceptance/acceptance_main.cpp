// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance [criterion numbers...]     (default: all, 1..10)
//
// Exit status is 0 only when every selected criterion passes.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "commands.hpp"
#include "discrepal/active_learner.hpp"
#include "discrepal/candidate_scoring.hpp"
#include "discrepal/decomposition.hpp"
#include "discrepal/divergence.hpp"
#include "discrepal/harness.hpp"
#include "discrepal/kernel.hpp"
#include "discrepal/krls.hpp"
#include "oracles.hpp"

using namespace discrepal;

namespace {

// Tolerances.
constexpr double kOrderingSlack = 1e-9;        // relative, criterion 1
constexpr double kOrderingTimeLimit = 10.0;    // seconds, criterion 1
constexpr double kCrossRouteTol = 1e-6;        // relative, criterion 2
constexpr double kSpectrumTol = 1e-8;          // absolute, criterion 3
constexpr double kNonzeroEigenvalue = 1e-10;   // criterion 3: smaller M eigenvalues count as zero
constexpr double kIdentityTol = 1e-6;          // relative, criterion 4
constexpr double kRouteAgreementTol = 1e-8;    // absolute, criterion 4
constexpr double kBallSlack = 1e-8;            // absolute, criterion 5
constexpr double kOracleTTestTol = 1e-7;       // p-value, criterion 9

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

IndexList iota(std::size_t n) {
  IndexList out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = i;
  return out;
}

Eigen::MatrixXd labeled_first(const Eigen::MatrixXd& x, const std::vector<std::size_t>& labeled) {
  std::vector<std::size_t> order(labeled);
  std::vector<bool> used(static_cast<std::size_t>(x.rows()), false);
  for (auto i : labeled) used[i] = true;
  for (std::size_t i = 0; i < used.size(); ++i)
    if (!used[i]) order.push_back(i);
  return x(order, Eigen::all);
}

Outcome divergence_ordering() {
  oracle::Rng rng(101);
  const auto t0 = Clock::now();
  double worst = INFINITY;
  int failures = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto n = oracle::uniform_index(rng, 2, 50);
    const auto d = oracle::uniform_index(rng, 1, 10);
    const Eigen::MatrixXd x = oracle::random_matrix(rng, n, d);
    const auto labeled = oracle::random_subset(rng, n, oracle::uniform_index(rng, 1, n));
    const KernelSpec k = trial % 2 ? KernelSpec::linear() : KernelSpec::gaussian(oracle::uniform_real(rng, 0.2, 5.0));
    const auto v = divergences(spectrum(gram(k, labeled_first(x, labeled)), build_D(n, labeled.size())), 1.0);
    const double scale = std::max(v.nuclear, 1e-300);
    const double slack = std::min(v.mmd - v.discrepancy, v.nuclear - v.mmd) / scale;
    worst = std::min(worst, slack);
    if (slack < -kOrderingSlack) ++failures;
  }
  const double elapsed = seconds_since(t0);
  return {failures == 0 && elapsed < kOrderingTimeLimit,
          fmt::format("200 instances, {} violations, worst relative slack {:.3g}, {:.2f} s (limit {} s)", failures,
                      worst, elapsed, kOrderingTimeLimit)};
}

Outcome cross_route_mmd() {
  oracle::Rng rng(202);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto n = oracle::uniform_index(rng, 2, 50);
    const Eigen::MatrixXd x = oracle::random_matrix(rng, n, oracle::uniform_index(rng, 1, 10));
    const auto labeled = oracle::random_subset(rng, n, oracle::uniform_index(rng, 1, n - 1));
    const double sigma = oracle::uniform_real(rng, 0.3, 5.0);
    const double cap = oracle::uniform_real(rng, 0.2, 3.0);
    const Eigen::MatrixXd xo = labeled_first(x, labeled);
    const KernelSpec model = KernelSpec::gaussian(sigma);
    const double spectral = mmd_spectral(spectrum(gram(model, xo), build_D(n, labeled.size())), cap);
    const double kernel_mean = mmd_kernel_mean(gram(mmd_kernel(model), xo), labeled.size(), 4.0 * cap * cap);
    worst = std::max(worst, std::abs(kernel_mean - spectral) / std::max(spectral, 1e-300));
  }
  return {worst <= kCrossRouteTol,
          fmt::format("100 gaussian instances, worst relative gap {:.3g} (tol {})", worst, kCrossRouteTol)};
}

Outcome spectrum_agreement() {
  oracle::Rng rng(303);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto n = oracle::uniform_index(rng, 2, 50);
    const Eigen::MatrixXd x = oracle::random_matrix(rng, n, oracle::uniform_index(rng, 1, 10));
    const auto labeled = oracle::random_subset(rng, n, oracle::uniform_index(rng, 1, n));
    const Spectrum sm = spectrum(build_M_linear(x, x(labeled, Eigen::all)));
    const Spectrum sk = spectrum(gram(KernelSpec::linear(), labeled_first(x, labeled)), build_D(n, labeled.size()));
    // Both lists are sorted by magnitude; M_K carries extra zeros when n > d
    // and M when d > n.
    const Eigen::Index common = std::min(sm.eigenvalues.size(), sk.eigenvalues.size());
    for (Eigen::Index i = 0; i < common; ++i) {
      if (std::abs(sm.eigenvalues(i)) <= kNonzeroEigenvalue && std::abs(sk.eigenvalues(i)) <= kNonzeroEigenvalue)
        continue;
      worst = std::max(worst, std::abs(sm.eigenvalues(i) - sk.eigenvalues(i)));
    }
    for (Eigen::Index i = common; i < sk.eigenvalues.size(); ++i) worst = std::max(worst, std::abs(sk.eigenvalues(i)));
    for (Eigen::Index i = common; i < sm.eigenvalues.size(); ++i) worst = std::max(worst, std::abs(sm.eigenvalues(i)));
  }
  return {worst <= kSpectrumTol, fmt::format("100 linear instances, worst eigenvalue gap {:.3g} (tol {})", worst,
                                             kSpectrumTol)};
}

Outcome decomposition_identity() {
  oracle::Rng rng(404);
  double worst_identity = 0.0, worst_agreement = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    for (bool linear : {true, false}) {
      const auto n = oracle::uniform_index(rng, 6, 50);
      const auto d = oracle::uniform_index(rng, 1, 10);
      const KernelSpec k = linear ? KernelSpec::linear() : KernelSpec::gaussian(oracle::uniform_real(rng, 0.5, 4.0));
      Dataset data;
      data.features = oracle::random_matrix(rng, n, d);
      data.labels = oracle::random_matrix(rng, n, 1);
      const TrainedModel f = fit_labeling_function(data, k, std::pow(10.0, oracle::uniform_real(rng, -3, -1)));
      data.labels = predict(f, data.features);
      QueryState state(iota(n));
      for (auto i : oracle::random_subset(rng, n, oracle::uniform_index(rng, 1, n - 1))) state.add(i);
      const TrainedModel h = fit(data, state.labeled(), k, std::pow(10.0, oracle::uniform_real(rng, -3, -1)));

      const LossGap gap = loss_gap(f, h, data, state);
      const double want = gap.pool_loss - gap.labeled_loss;
      const double scale = std::max(std::abs(want), 1e-300);
      const DecompositionResult ker = decompose_kernel(f, h, data, state);
      worst_identity = std::max(worst_identity, std::abs(ker.total() - want) / scale);
      if (linear) {
        const Eigen::VectorXd u = f.support_points.transpose() * f.dual_coefficients -
                                  h.support_points.transpose() * h.dual_coefficients;
        const DecompositionResult lin =
            decompose_linear(u, build_M_linear(data.features, data.features(state.labeled(), Eigen::all)));
        worst_identity = std::max(worst_identity, std::abs(lin.total() - want) / scale);
        worst_agreement = std::max(worst_agreement, std::abs(lin.total() - ker.total()));
      }
    }
  }
  return {worst_identity <= kIdentityTol && worst_agreement <= kRouteAgreementTol,
          fmt::format("50 linear + 50 gaussian fixtures, worst relative identity error {:.3g} (tol {}), "
                      "worst route disagreement {:.3g} (tol {})",
                      worst_identity, kIdentityTol, worst_agreement, kRouteAgreementTol)};
}

Outcome hypothesis_membership() {
  oracle::Rng rng(505);
  double worst = -INFINITY;
  for (int trial = 0; trial < 100; ++trial) {
    const auto n = oracle::uniform_index(rng, 1, 60);
    const Eigen::MatrixXd x = oracle::random_matrix(rng, n, oracle::uniform_index(rng, 1, 10));
    const double f_max = oracle::uniform_real(rng, 0.1, 5.0);
    Eigen::VectorXd y(static_cast<Eigen::Index>(n));
    for (auto& v : y) v = oracle::uniform_real(rng, -f_max, f_max);
    const double lambda = std::pow(10.0, oracle::uniform_real(rng, -5.0, 1.0));
    const KernelSpec k = trial % 2 ? KernelSpec::linear() : KernelSpec::gaussian(oracle::uniform_real(rng, 0.2, 5.0));
    const TrainedModel m = fit(x, y, k, lambda);
    worst = std::max(worst, rkhs_norm(m) - ModelConfig{lambda, f_max}.capacity());
  }
  return {worst <= kBallSlack,
          fmt::format("100 fits, max(norm - f_max/sqrt(lambda)) = {:.3g} (slack {})", worst, kBallSlack)};
}

Outcome non_adaptivity() {
  oracle::Rng rng(606);
  int mismatches = 0;
  for (int trial = 0; trial < 20; ++trial) {
    Dataset raw;
    raw.features = oracle::random_matrix(rng, 60, 3);
    raw.labels.resize(60);
    for (Eigen::Index i = 0; i < 60; ++i) raw.labels(i) = i % 2 ? 1.0 : -1.0;
    Dataset permuted = raw;
    std::shuffle(permuted.labels.begin(), permuted.labels.end(), rng);

    ExperimentConfig cfg;
    cfg.dataset = "in-memory";
    cfg.setting = Setting::agnostic;
    cfg.sigma = oracle::uniform_real(rng, 0.5, 3.0);
    cfg.reg_lambda = 0.01;
    cfg.runs = 1;
    cfg.budget = 10;
    cfg.seed = rng();
    cfg.criteria = {Criterion::discrepancy, Criterion::mmd, Criterion::nuclear};
    const ExperimentResult a = run_experiment(cfg, prepare_data(cfg, raw));
    const ExperimentResult b = run_experiment(cfg, prepare_data(cfg, permuted));
    if (a.queries != b.queries) ++mismatches;
  }
  return {mismatches == 0, fmt::format("20 label permutations, {} differing query sequences", mismatches)};
}

Outcome greedy_vs_oracle() {
  oracle::Rng rng(707);
  int mismatches = 0, checked = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const auto n = oracle::uniform_index(rng, 4, 12);
    Dataset data;
    data.features = oracle::random_matrix(rng, n, oracle::uniform_index(rng, 1, 4));
    data.labels = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(n));
    const double sigma = trial % 2 ? oracle::uniform_real(rng, 0.3, 3.0) : 0.0;
    const KernelSpec k = sigma > 0 ? KernelSpec::gaussian(sigma) : KernelSpec::linear();
    const PoolGeometry geometry(data, iota(n), k);
    for (int which = 0; which < 3; ++which) {
      const Criterion c = which == 0 ? Criterion::discrepancy : which == 1 ? Criterion::mmd : Criterion::nuclear;
      const auto want = oracle::greedy_queries(data.features, sigma, which, 3);
      for (auto backend : {ScoringBackend::rank_one, ScoringBackend::reference}) {
        QueryState state(iota(n));
        Rng unused(0);
        const IndexList got = run_session(state, geometry, c, 3, unused, {backend});
        ++checked;
        if (got != IndexList(want.begin(), want.end())) ++mismatches;
      }
    }
  }
  return {mismatches == 0,
          fmt::format("20 pools of <= 12 points, budget 3, 3 criteria x 2 scorers: {} of {} sequences differ",
                      mismatches, checked)};
}

Outcome desk_reproduction() {
  const std::vector<std::uint64_t> base_seeds{1, 2, 3};
  int nd_wins = 0, nd_fails = 0, disc_wins = 0, disc_fails = 0;
  std::string detail;
  for (auto base_seed : base_seeds) {
    ExperimentConfig cfg;
    cfg.dataset = DISCREPAL_DATA_DIR "/ringnorm.csv";
    cfg.setting = Setting::realizable;
    cfg.sigma = 1.778;
    cfg.reg_lambda = 1e-3;
    cfg.runs = 10;
    cfg.budget = 50;
    cfg.seed = base_seed;
    cfg.max_n = 1000;
    const auto t0 = Clock::now();
    const ExperimentResult r = run_experiment(cfg);
    const auto& set = r.curves;
    const Eigen::Index last = 49;
    const double disc = set.mean(Criterion::discrepancy)(last), mmd = set.mean(Criterion::mmd)(last);
    const double nd = set.mean(Criterion::nuclear)(last), random = set.mean(Criterion::random)(last);
    (nd < mmd ? nd_wins : nd_fails)++;
    (disc > random ? disc_wins : disc_fails)++;
    detail += fmt::format("[seed {}: ND {:.4g} vs MMD {:.4g}, Disc {:.4g} vs Random {:.4g}, {:.0f} s] ", base_seed, nd,
                          mmd, disc, random, seconds_since(t0));
    std::cout << "  criterion 8 progress " << detail << std::endl;
    // Majority of three: stop once both inequalities are decided.
    const bool nd_decided = nd_wins >= 2 || nd_fails >= 2;
    const bool disc_decided = disc_wins >= 2 || disc_fails >= 2;
    if (nd_decided && disc_decided) break;
  }
  const bool pass = nd_wins >= 2 && disc_wins >= 2;
  return {pass, fmt::format("ringnorm realizable, 10 runs x 50 queries; ND<MMD held on {} seed(s), failed on {}; "
                            "Disc>Random held on {}, failed on {} (each needs 2 of 3) {}",
                            nd_wins, nd_fails, disc_wins, disc_fails, detail)};
}

Outcome win_tie_loss() {
  oracle::Rng rng(909);
  std::normal_distribution<double> normal(0.0, 1.0);
  auto matrix = [&](double mean, double sd, std::size_t runs, std::size_t budget) {
    Eigen::MatrixXd m(static_cast<Eigen::Index>(runs), static_cast<Eigen::Index>(budget));
    for (auto& v : m.reshaped()) v = mean + sd * normal(rng);
    return m;
  };
  const Eigen::MatrixXd a = matrix(1.0, 0.3, 100, 50);
  const WinTieLoss same = compare(a, a, 5, 0.05);
  const bool ties_ok = same.tie == 10 && same.win == 0 && same.loss == 0;
  const WinTieLoss sep = compare(matrix(0.0, 1e-6, 100, 50), matrix(1.0, 1e-6, 100, 50), 5, 0.05);
  const bool wins_ok = sep.win == 10 && sep.tie == 0 && sep.loss == 0;

  int disagreements = 0;
  double worst_p = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t runs = oracle::uniform_index(rng, 5, 100);
    const Eigen::MatrixXd x = matrix(oracle::uniform_real(rng, -0.5, 0.5), oracle::uniform_real(rng, 0.2, 2.0), runs, 5);
    const Eigen::MatrixXd y = matrix(0.0, oracle::uniform_real(rng, 0.2, 2.0), runs, 5);
    const WinTieLoss w = compare(x, y, 5, 0.05);
    const std::vector<double> cx(x.col(4).begin(), x.col(4).end()), cy(y.col(4).begin(), y.col(4).end());
    const auto t = oracle::textbook_ttest(cx, cy);
    const Verdict want = t.p >= 0.05 ? Verdict::tie : (t.t < 0 ? Verdict::win : Verdict::loss);
    worst_p = std::max(worst_p, std::abs(w.checkpoints.at(0).p_value - t.p));
    if (w.checkpoints.at(0).verdict != want) ++disagreements;
  }
  return {ties_ok && wins_ok && disagreements == 0 && worst_p <= kOracleTTestTol,
          fmt::format("identical -> {}/{}/{} w/t/l, separated -> {}/{}/{} w/t/l, oracle: {} of 50 verdicts differ, "
                      "worst p gap {:.3g} (tol {})",
                      same.win, same.tie, same.loss, sep.win, sep.tie, sep.loss, disagreements, worst_p,
                      kOracleTTestTol)};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

Outcome determinism() {
  const auto root = oracle::scratch_dir("acceptance_determinism");
  const auto config = root / "config.json";
  std::ofstream(config, std::ios::binary)
      << R"({"dataset": ")" DISCREPAL_DATA_DIR R"(/banana.csv", "setting": "realizable",
  "kernel": {"sigma": 0.645}, "lambda": 0.01, "runs": 3, "budget": 10, "seed": 42, "max_n": 300,
  "criteria": ["discrepancy", "mmd", "nuclear", "random"]})";
  std::vector<std::string> files{"curves.csv", "summary.csv", "wtl.csv"};
  std::ostringstream out, err;
  for (const char* run : {"a", "b"}) {
    cli::CommandOptions opts;
    opts.config = config;
    opts.out = root / run;
    if (cli::cmd_run(opts, out, err) != cli::kExitOk) return {false, "cmd_run failed: " + err.str()};
  }
  int differing = 0;
  for (const auto& f : files)
    if (slurp(root / "a" / f) != slurp(root / "b" / f) || slurp(root / "a" / f).empty()) ++differing;
  return {differing == 0, fmt::format("two cmd_run invocations, {} of {} output files differ", differing, files.size())};
}

struct AcceptanceCheck {
  int number;
  const char* title;
  std::function<Outcome()> check;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<AcceptanceCheck> all{
      {1, "divergence ordering", divergence_ordering},
      {2, "kernel-mean MMD equals spectral MMD", cross_route_mmd},
      {3, "M and M_K spectra agree (linear kernel)", spectrum_agreement},
      {4, "error decomposition identity", decomposition_identity},
      {5, "fitted models lie in the hypothesis ball", hypothesis_membership},
      {6, "selection is non-adaptive", non_adaptivity},
      {7, "greedy selection matches brute force", greedy_vs_oracle},
      {8, "ringnorm directional reproduction", desk_reproduction},
      {9, "win/tie/loss machinery", win_tie_loss},
      {10, "cmd_run is deterministic", determinism},
  };
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

  int failed = 0;
  for (const auto& c : all) {
    if (!selected.empty() && !selected.count(c.number)) continue;
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::cout << fmt::format("{} criterion {:>2} {}: {}", o.pass ? "PASS" : "FAIL", c.number, c.title, o.detail)
              << std::endl;
  }
  std::cout << (failed == 0 ? "acceptance: all selected criteria passed" : fmt::format("acceptance: {} failed", failed))
            << std::endl;
  return failed == 0 ? 0 : 1;
}
