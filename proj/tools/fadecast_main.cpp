// SPDX-License-Identifier: Apache-2.0
//
// fadecast: simulate a moving-scatterer fading channel, build datasets,
// train the dilated-causal CNN predictor/classifier, and evaluate.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fadecast/covariance.hpp"
#include "fadecast/csv.hpp"
#include "fadecast/dataset.hpp"
#include "fadecast/errors.hpp"
#include "fadecast/eval.hpp"
#include "fadecast/manifest.hpp"
#include "fadecast/models.hpp"
#include "fadecast/simulator.hpp"
#include "fadecast/version.hpp"

namespace fc = fadecast;
namespace fs = std::filesystem;

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// Relative outputs land in $FADECAST_OUT when it is set.
fs::path resolve_out(const std::string& out) {
  fs::path p(out);
  if (p.is_absolute()) return p;
  if (const char* dir = std::getenv("FADECAST_OUT"); dir && *dir) return fs::path(dir) / p;
  return p;
}

void ensure_parent(const fs::path& p) {
  const auto parent = p.parent_path();
  if (!parent.empty()) fs::create_directories(parent);
}

fs::path manifest_path_for(const fs::path& out) {
  fs::path p = out;
  p += ".manifest.json";
  return p;
}

struct scenario_cli {
  std::string config_path;
  fc::scenario_config cfg;
  CLI::Option* opt_seed = nullptr;

  std::vector<double> p_tx, p_rx_init;
  std::uint64_t seed = 0;
  std::size_t n_r = 0, n_m = 0;
  double f_c = 0, f_s = 0, bandwidth_b = 0, window_p = 0;
  double mu_p = 0, sigma2_p = 0, mu_rx = 0, sigma2_rx = 0, mu_s = 0, sigma2_s = 0;
  double snr_db = 0, delta_t = 0;

  std::vector<std::pair<CLI::Option*, std::function<void()>>> appliers;

  void attach(CLI::App* app) {
    app->add_option("--config", config_path, "scenario config file (JSON)");
    auto add = [&](const char* flag, auto& var, const char* help, auto apply) {
      CLI::Option* opt = app->add_option(flag, var, help);
      appliers.emplace_back(opt, apply);
      return opt;
    };
    add("--p-tx", p_tx, "transmitter position x y (m)",
        [this] { cfg.p_tx = {p_tx.at(0), p_tx.at(1)}; })
        ->expected(2);
    add("--p-rx", p_rx_init, "receiver start position x y (m)",
        [this] { cfg.p_rx_init = {p_rx_init.at(0), p_rx_init.at(1)}; })
        ->expected(2);
    add("--n-r", n_r, "number of reflection points", [this] { cfg.n_r = n_r; });
    add("--n-m", n_m, "number of mobile reflection points", [this] { cfg.n_m = n_m; });
    add("--f-c", f_c, "carrier frequency (Hz)", [this] { cfg.f_c = f_c; });
    add("--f-s", f_s, "sampling frequency (Hz)", [this] { cfg.f_s = f_s; });
    add("--bandwidth-b", bandwidth_b, "transmitted bandwidth (Hz)",
        [this] { cfg.bandwidth_b = bandwidth_b; });
    add("--window-p", window_p, "sampling window (s)", [this] { cfg.window_p = window_p; });
    add("--mu-p", mu_p, "reflection coordinate mean (m)", [this] { cfg.mu_p = mu_p; });
    add("--sigma2-p", sigma2_p, "reflection coordinate variance", [this] { cfg.sigma2_p = sigma2_p; });
    add("--mu-rx", mu_rx, "receiver speed mean (m/s)", [this] { cfg.mu_rx = mu_rx; });
    add("--sigma2-rx", sigma2_rx, "receiver speed variance", [this] { cfg.sigma2_rx = sigma2_rx; });
    add("--mu-s", mu_s, "mobile speed mean (m/s)", [this] { cfg.mu_s = mu_s; });
    add("--sigma2-s", sigma2_s, "mobile speed variance", [this] { cfg.sigma2_s = sigma2_s; });
    add("--snr-db", snr_db, "receiver SNR (dB)", [this] { cfg.snr_db = snr_db; });
    add("--delta-t", delta_t, "time between snapshots (s)", [this] { cfg.delta_t = delta_t; });
    opt_seed = add("--seed", seed, "master RNG seed", [this] { cfg.seed = seed; });
  }

  // Precedence: flags > config file > built-in defaults.
  fc::scenario_config resolve() {
    cfg = fc::scenario_config{};
    if (!config_path.empty()) {
      nlohmann::json doc;
      try {
        doc = nlohmann::json::parse(fc::io::read_file(config_path));
      } catch (const nlohmann::json::exception& e) {
        throw fc::data_error(std::string("config parse error: ") + e.what());
      }
      cfg = fc::scenario_config::from_json(doc);
    }
    for (auto& [opt, apply] : appliers)
      if (opt->count() > 0) apply();
    cfg.validate();
    return cfg;
  }
};

void print_series_summary(const fc::cfr_series& series) {
  const std::size_t bins = series.bins();
  double deepest = 0.0;
  std::size_t deep_snapshots = 0;
  std::size_t deep_j = 0, deep_f = 0;
  for (std::size_t j = 0; j < series.length(); ++j) {
    const auto& snap = series.snapshots[j];
    double mean = 0.0;
    for (const auto& v : snap.values) mean += std::abs(v);
    mean /= static_cast<double>(bins);
    double worst = 0.0;
    std::size_t worst_f = 0;
    for (std::size_t f = 0; f < bins; ++f) {
      const double mag = std::abs(snap.values[f]);
      const double depth = mag > 0.0 ? 20.0 * std::log10(mean / mag) : 300.0;
      if (depth > worst) {
        worst = depth;
        worst_f = f;
      }
    }
    if (worst >= 20.0) ++deep_snapshots;
    if (worst > deepest) {
      deepest = worst;
      deep_j = j;
      deep_f = worst_f;
    }
  }
  const auto band = series.snapshots.front().band_hz;
  std::cout << "series: " << series.length() << " snapshots, " << bins << " bins, band "
            << band.first / 1e6 << "-" << band.second / 1e6 << " MHz\n";
  std::cout << "deepest fade: " << fc::csv::num(deepest) << " dB below snapshot mean (snapshot "
            << deep_j << ", bin " << deep_f << "); snapshots with a >=20 dB fade: "
            << deep_snapshots << "/" << series.length() << "\n";
}

int cmd_simulate(scenario_cli& sc, std::size_t n_steps, const std::string& out_raw) {
  const auto start = std::chrono::steady_clock::now();
  if (n_steps < 1) throw fc::config_error("--steps must be at least 1");
  const auto cfg = sc.resolve();
  cfg.validate_band();
  const fs::path out = resolve_out(out_raw);
  ensure_parent(out);

  const auto series = fc::run_simulation(cfg, n_steps);
  fc::save_series(series, out);
  print_series_summary(series);

  fc::run_manifest manifest("simulate");
  manifest.set_config(cfg.to_json());
  manifest.set("n_steps", n_steps);
  manifest.add_artifact(out);
  manifest.set_timing("total", seconds_since(start));
  manifest.write(manifest_path_for(out));
  std::cout << "wrote " << out.string() << "\n";
  return 0;
}

int cmd_build_dataset(const std::vector<std::string>& run_paths, std::size_t t_len,
                      std::size_t span_d, std::size_t n_train, std::size_t n_test,
                      double percentile, const std::string& out_raw) {
  const auto start = std::chrono::steady_clock::now();
  if (run_paths.empty()) throw fc::config_error("at least one --run file is required");
  const fs::path out = resolve_out(out_raw);
  ensure_parent(out);

  std::vector<fc::cfr_series> runs;
  runs.reserve(run_paths.size());
  for (const auto& p : run_paths) runs.push_back(fc::load_series(p));
  const std::size_t needed = n_train + n_test + t_len + span_d - 1;
  for (std::size_t i = 0; i < runs.size(); ++i)
    if (runs[i].length() < needed)
      throw fc::data_error("run " + run_paths[i] + " has " + std::to_string(runs[i].length()) +
                           " snapshots; " + std::to_string(needed) +
                           " are required for this split (n_train + n_test + t_len + span_d - 1)");

  const auto split = fc::split_train_test(runs, n_train, n_test, t_len, span_d, percentile);
  fc::save_dataset(split, out);

  std::cout << "dataset: " << split.x_train.dims[0] << " train / " << split.x_test.dims[0]
            << " test examples, F=" << split.x_train.dims[1] << ", T=" << split.t_len
            << ", D=" << split.span_d << "\n";
  std::cout << "scale=" << fc::csv::num(split.scale)
            << " fade threshold=" << fc::csv::num(split.threshold) << " (percentile "
            << fc::csv::num(percentile) << ")\n";

  fc::run_manifest manifest("build-dataset");
  nlohmann::ordered_json cfg;
  cfg["runs"] = run_paths;
  cfg["t_len"] = t_len;
  cfg["span_d"] = span_d;
  cfg["n_train_per_run"] = n_train;
  cfg["n_test_per_run"] = n_test;
  cfg["fade_percentile"] = percentile;
  manifest.set_config(cfg);
  manifest.set("scale", split.scale);
  manifest.set("threshold", split.threshold);
  manifest.add_artifact(out);
  manifest.set_timing("total", seconds_since(start));
  manifest.write(manifest_path_for(out));
  std::cout << "wrote " << out.string() << "\n";
  return 0;
}

fc::model_head parse_head(const std::string& head) {
  if (head == "predictor") return fc::model_head::predictor;
  if (head == "classifier") return fc::model_head::classifier;
  throw fc::config_error("head must be 'predictor' or 'classifier'");
}

fc::model_arch parse_arch(const std::string& arch) {
  if (arch == "auto") return fc::model_arch::automatic;
  if (arch == "reference") return fc::model_arch::reference;
  if (arch == "compact") return fc::model_arch::compact;
  throw fc::config_error("arch must be 'auto', 'reference' or 'compact'");
}

int cmd_train(const std::string& dataset_path, const std::string& head_name,
              const std::string& arch_name, const fc::train_config& tc,
              const std::string& out_raw, std::string log_out_raw) {
  const auto start = std::chrono::steady_clock::now();
  const fc::model_head head = parse_head(head_name);
  const fc::model_arch arch = parse_arch(arch_name);
  const fs::path out = resolve_out(out_raw);
  if (log_out_raw.empty()) {
    fs::path p = fs::path(out_raw);
    p.replace_extension();
    log_out_raw = p.string() + "_train_log.csv";
  }
  const fs::path log_out = resolve_out(log_out_raw);
  ensure_parent(out);
  ensure_parent(log_out);

  const auto split = fc::load_dataset(dataset_path);
  const auto load_s = seconds_since(start);

  fc::nn::network net = fc::build_model(arch, head, split.span_d, split.t_len);
  fc::rand_stream winit(tc.seed, fc::rng_stream::weights);
  net.init_glorot(winit);

  const fc::tensor4& y_train =
      head == fc::model_head::predictor ? split.y_pred_train : split.y_cls_train;
  const fc::tensor4& y_test =
      head == fc::model_head::predictor ? split.y_pred_test : split.y_cls_test;
  const auto log = fc::fit(net, head, split.x_train, y_train, split.x_test, y_test, tc);

  fc::nn::save_network(net, out);
  fc::io::write_file(log_out, fc::csv::train_log_csv(log));

  std::cout << "trained " << head_name << " (" << net.param_count() << " parameters, "
            << tc.epochs << " epochs)\n";
  std::cout << "train loss: first=" << fc::csv::num(log.train_loss.front())
            << " final=" << fc::csv::num(log.train_loss.back())
            << "; test loss final=" << fc::csv::num(log.test_loss.back()) << "\n";

  fc::run_manifest manifest("train");
  nlohmann::ordered_json cfg;
  cfg["dataset"] = dataset_path;
  cfg["head"] = head_name;
  cfg["arch"] = arch_name;
  cfg["epochs"] = tc.epochs;
  cfg["batch_size"] = tc.batch_size;
  cfg["lr"] = tc.lr;
  cfg["seed"] = tc.seed;
  cfg["shuffle"] = tc.shuffle;
  cfg["span_d"] = split.span_d;
  cfg["t_len"] = split.t_len;
  manifest.set_config(cfg);
  manifest.set("param_count", net.param_count());
  manifest.add_artifact(out);
  manifest.add_artifact(log_out);
  manifest.set_timing("load", load_s);
  manifest.set_timing("total", seconds_since(start));
  manifest.write(manifest_path_for(out));
  std::cout << "wrote " << out.string() << " and " << log_out.string() << "\n";
  return 0;
}

fc::model_head head_of(const fc::nn::network& net) {
  const auto act = net.layer(net.layer_count() - 1).spec().act;
  return act == fc::nn::activation::sigmoid ? fc::model_head::classifier
                                            : fc::model_head::predictor;
}

int cmd_evaluate_mse(const fc::nn::network& net, const fc::dataset_split& split,
                     const std::string& partition, const fs::path& out,
                     fc::run_manifest& manifest) {
  const bool train = partition == "train";
  if (!train && partition != "test")
    throw fc::config_error("--partition must be 'train' or 'test'");
  const fc::model_head head = head_of(net);
  const fc::tensor4& x = train ? split.x_train : split.x_test;
  const fc::tensor4& y = head == fc::model_head::predictor
                             ? (train ? split.y_pred_train : split.y_pred_test)
                             : (train ? split.y_cls_train : split.y_cls_test);
  const auto report = fc::per_step_mse(fc::predict(net, x), y);
  fc::io::write_file(out, fc::csv::step_mse_csv(report));
  for (std::size_t d = 0; d < report.mse.size(); ++d)
    std::cout << "step " << d + 1 << ": mse=" << fc::csv::num(report.mse[d]) << "\n";
  manifest.set("partition", partition);
  return 0;
}

int cmd_evaluate_roc(const fc::nn::network& net, const fc::dataset_split& split,
                     std::optional<std::size_t> band_bin, bool pool_bins, const fs::path& out,
                     const std::string& auc_out_raw, fc::run_manifest& manifest) {
  if (head_of(net) != fc::model_head::classifier)
    throw fc::config_error("roc mode needs classifier weights (sigmoid head)");
  const fc::tensor4 pred = fc::predict(net, split.x_test);
  const fc::tensor4& labels = split.y_cls_test;
  const std::size_t bins = pred.dims[1];
  const std::size_t bin = band_bin.value_or(bins / 2);
  if (!pool_bins && bin >= bins) throw fc::config_error("--band-bin out of range");

  std::vector<std::pair<std::size_t, fc::roc_curve_result>> curves;
  std::vector<std::pair<std::size_t, double>> aucs;
  std::vector<double> scores, lab;
  for (std::size_t d = 0; d < pred.dims[3]; ++d) {
    if (pool_bins) {
      scores.clear();
      lab.clear();
      for (std::size_t e = 0; e < pred.dims[0]; ++e)
        for (std::size_t f = 0; f < bins; ++f) {
          scores.push_back(pred.at(e, f, 0, d));
          lab.push_back(labels.at(e, f, 0, d));
        }
    } else {
      fc::collect_bin_step(pred, labels, bin, d, scores, lab);
    }
    auto curve = fc::roc_curve(scores, lab);
    std::cout << "step " << d + 1 << ": auc=" << fc::csv::num(curve.auc) << "\n";
    aucs.emplace_back(d + 1, curve.auc);
    curves.emplace_back(d + 1, std::move(curve));
  }
  fc::io::write_file(out, fc::csv::roc_csv(curves));
  manifest.set("band_bin", pool_bins ? nlohmann::ordered_json("pooled")
                                     : nlohmann::ordered_json(bin));
  if (!auc_out_raw.empty()) {
    const fs::path auc_out = resolve_out(auc_out_raw);
    ensure_parent(auc_out);
    fc::io::write_file(auc_out, fc::csv::auc_csv(aucs));
    manifest.add_artifact(auc_out);
  }
  return 0;
}

int cmd_evaluate_fresh(const fc::nn::network& net, const fc::dataset_split& split,
                       scenario_cli& sc, std::optional<std::uint64_t> fresh_seed,
                       std::size_t steps, const fs::path& out, fc::run_manifest& manifest) {
  if (head_of(net) != fc::model_head::predictor)
    throw fc::config_error("fresh mode needs predictor weights");
  auto cfg = sc.resolve();
  // Seed-disjoint from the training simulations unless overridden explicitly.
  cfg.seed = fresh_seed.value_or(cfg.seed + 1000003);
  cfg.validate_band();
  if (steps < split.t_len + split.span_d)
    throw fc::config_error("--steps too small: need at least t_len + span_d snapshots");
  const auto series = fc::run_simulation(cfg, steps);
  if (series.bins() != split.x_train.dims[1])
    throw fc::data_error("fresh series bin count does not match the dataset");
  const auto report =
      fc::fresh_channel_check(net, series, split.t_len, split.span_d, split.scale);
  fc::io::write_file(out, fc::csv::step_mse_csv(report));
  double lo = report.mse.front(), hi = report.mse.front();
  for (const double v : report.mse) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  for (std::size_t d = 0; d < report.mse.size(); ++d)
    std::cout << "step " << d + 1 << ": mse=" << fc::csv::num(report.mse[d]) << "\n";
  std::cout << "per-step mse max/min = " << fc::csv::num(hi / lo) << "\n";
  manifest.set("fresh_seed", cfg.seed);
  manifest.set("fresh_steps", steps);
  manifest.set("scenario", cfg.to_json());
  return 0;
}

int cmd_covariance(const std::string& run_a, const std::string& run_b, std::size_t max_lag,
                   const std::string& out_raw) {
  const auto start = std::chrono::steady_clock::now();
  const fs::path out = resolve_out(out_raw);
  ensure_parent(out);

  const auto series_a = fc::load_series(run_a);
  const auto power_a = fc::band_power_series(series_a);
  if (max_lag >= power_a.size())
    throw fc::config_error("--max-lag must be smaller than the series length " +
                           std::to_string(power_a.size()));

  fc::covariance_profile profile;
  if (run_b.empty()) {
    profile = fc::normalized_covariance(power_a, power_a, max_lag);
    std::size_t first_half = 0;
    bool found = false;
    for (std::size_t i = 0; i < profile.values.size(); ++i)
      if (profile.values[i] < 0.5) {
        first_half = profile.lags[i];
        found = true;
        break;
      }
    if (found)
      std::cout << "auto-covariance drops below 0.5 at lag " << first_half << "\n";
    else
      std::cout << "auto-covariance stays above 0.5 within max lag " << max_lag << "\n";
  } else {
    const auto series_b = fc::load_series(run_b);
    const auto power_b = fc::band_power_series(series_b);
    profile = fc::normalized_covariance(power_a, power_b, max_lag);
    double peak = 0.0;
    for (const double v : profile.values) peak = std::max(peak, std::fabs(v));
    std::cout << "cross-covariance max |R| = " << fc::csv::num(peak) << "\n";
  }
  fc::io::write_file(out, fc::csv::covariance_csv(profile));

  fc::run_manifest manifest("covariance");
  nlohmann::ordered_json cfg;
  cfg["run_a"] = run_a;
  if (!run_b.empty()) cfg["run_b"] = run_b;
  cfg["max_lag"] = max_lag;
  manifest.set_config(cfg);
  manifest.add_artifact(out);
  manifest.set_timing("total", seconds_since(start));
  manifest.write(manifest_path_for(out));
  std::cout << "wrote " << out.string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fadecast: fading-channel simulation and sub-band prediction workbench"};
  app.set_version_flag("--version", FADECAST_VERSION);
  app.require_subcommand(1);

  // simulate
  auto* sim = app.add_subcommand("simulate", "run the channel simulator and write a series file");
  scenario_cli sim_sc;
  sim_sc.attach(sim);
  std::size_t sim_steps = 0;
  std::string sim_out = "series.cfrd";
  sim->add_option("--steps", sim_steps, "number of snapshots")->required();
  sim->add_option("--out", sim_out, "output series file");

  // build-dataset
  auto* build = app.add_subcommand("build-dataset", "tensorize series files into a dataset");
  std::vector<std::string> build_runs;
  std::size_t build_t = 64, build_d = 10, build_ntrain = 4096, build_ntest = 512;
  double build_pct = 10.0;
  std::string build_out = "dataset.cfrd";
  build->add_option("--run", build_runs, "input series file (repeatable)")->required();
  build->add_option("--t-len", build_t, "input window length T");
  build->add_option("--span-d", build_d, "steps ahead D");
  build->add_option("--n-train", build_ntrain, "training examples per run");
  build->add_option("--n-test", build_ntest, "test examples per run");
  build->add_option("--percentile", build_pct, "fade-threshold percentile of scaled magnitudes");
  build->add_option("--out", build_out, "output dataset file");

  // train
  auto* train = app.add_subcommand("train", "train the predictor or classifier");
  std::string train_dataset, train_head = "predictor", train_arch = "auto";
  std::string train_out = "weights.cnnw", train_log_out;
  fc::train_config tc;
  bool no_shuffle = false;
  train->add_option("--dataset", train_dataset, "dataset file")->required();
  train->add_option("--head", train_head, "predictor | classifier");
  train->add_option("--arch", train_arch, "auto | reference | compact");
  train->add_option("--epochs", tc.epochs, "training epochs");
  train->add_option("--batch", tc.batch_size, "mini-batch size");
  train->add_option("--lr", tc.lr, "Adam learning rate");
  train->add_option("--seed", tc.seed, "weight-init and shuffle seed");
  train->add_flag("--no-shuffle", no_shuffle, "disable epoch shuffling");
  train->add_option("--out", train_out, "output weight file");
  train->add_option("--log-out", train_log_out, "training-log CSV path");

  // evaluate
  auto* eval = app.add_subcommand("evaluate", "evaluate trained weights");
  std::string eval_weights, eval_dataset, eval_mode = "mse", eval_partition = "test";
  std::string eval_out, eval_auc_out;
  scenario_cli eval_sc;
  std::size_t eval_band_bin = 0, eval_steps = 4096;
  bool eval_pool = false;
  std::uint64_t eval_fresh_seed = 0;
  eval->add_option("--weights", eval_weights, "weight file")->required();
  eval->add_option("--dataset", eval_dataset, "dataset file")->required();
  eval->add_option("--mode", eval_mode, "mse | roc | fresh");
  eval->add_option("--partition", eval_partition, "mse mode: train | test");
  CLI::Option* opt_band = eval->add_option("--band-bin", eval_band_bin,
                                           "roc mode: sub-band bin (default: band center)");
  eval->add_flag("--pool-bins", eval_pool, "roc mode: pool all bins");
  eval->add_option("--auc-out", eval_auc_out, "roc mode: also write per-step AUC CSV");
  eval_sc.attach(eval);
  CLI::Option* opt_fresh_seed =
      eval->add_option("--fresh-seed", eval_fresh_seed, "fresh mode: simulation seed");
  eval->add_option("--steps", eval_steps, "fresh mode: snapshots to simulate");
  eval->add_option("--out", eval_out, "output CSV path");

  // covariance
  auto* cov = app.add_subcommand("covariance", "band-power covariance profiles");
  std::string cov_a, cov_b, cov_out = "covariance.csv";
  std::size_t cov_lag = 512;
  cov->add_option("--run-a", cov_a, "series file")->required();
  cov->add_option("--run-b", cov_b, "second series file (cross-covariance)");
  cov->add_option("--max-lag", cov_lag, "largest lag");
  cov->add_option("--out", cov_out, "output CSV path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (sim->parsed()) return cmd_simulate(sim_sc, sim_steps, sim_out);
    if (build->parsed())
      return cmd_build_dataset(build_runs, build_t, build_d, build_ntrain, build_ntest,
                               build_pct, build_out);
    if (train->parsed()) {
      tc.shuffle = !no_shuffle;
      return cmd_train(train_dataset, train_head, train_arch, tc, train_out, train_log_out);
    }
    if (eval->parsed()) {
      const auto start = std::chrono::steady_clock::now();
      const auto net = fc::nn::load_network(eval_weights);
      const auto split = fc::load_dataset(eval_dataset);
      if (eval_out.empty()) eval_out = eval_mode + ".csv";
      const fs::path out = resolve_out(eval_out);
      ensure_parent(out);

      fc::run_manifest manifest("evaluate");
      nlohmann::ordered_json cfg;
      cfg["weights"] = eval_weights;
      cfg["dataset"] = eval_dataset;
      cfg["mode"] = eval_mode;
      manifest.set_config(cfg);

      int rc = 0;
      if (eval_mode == "mse")
        rc = cmd_evaluate_mse(net, split, eval_partition, out, manifest);
      else if (eval_mode == "roc")
        rc = cmd_evaluate_roc(net, split,
                              opt_band->count() ? std::optional<std::size_t>(eval_band_bin)
                                                : std::nullopt,
                              eval_pool, out, eval_auc_out, manifest);
      else if (eval_mode == "fresh")
        rc = cmd_evaluate_fresh(net, split, eval_sc,
                                opt_fresh_seed->count()
                                    ? std::optional<std::uint64_t>(eval_fresh_seed)
                                    : std::nullopt,
                                eval_steps, out, manifest);
      else
        throw fc::config_error("--mode must be 'mse', 'roc' or 'fresh'");

      manifest.add_artifact(out);
      manifest.set_timing("total", seconds_since(start));
      manifest.write(manifest_path_for(out));
      std::cout << "wrote " << out.string() << "\n";
      return rc;
    }
    if (cov->parsed()) return cmd_covariance(cov_a, cov_b, cov_lag, cov_out);
  } catch (const fc::config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const fc::data_error& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 2;
  } catch (const fc::numeric_error& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 3;
  }
  return 1;
}
