// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <vector>

#include "fadecast/errors.hpp"
#include "fadecast/tensor.hpp"

namespace fadecast {

struct step_mse_report {
  std::vector<double> mse;  // index d = step ahead d+1

  double mean() const {
    if (mse.empty()) return 0.0;
    return std::accumulate(mse.begin(), mse.end(), 0.0) / static_cast<double>(mse.size());
  }
};

// Per-step-ahead mean squared error over batch and frequency. Shapes are
// (B, F, 1, D); every step averages the same number of cells, so the mean of
// the rows equals the whole-tensor MSE.
inline step_mse_report per_step_mse(const tensor4& pred, const tensor4& labels) {
  if (!pred.same_shape(labels)) throw config_error("per_step_mse shape mismatch");
  if (pred.dims[2] != 1) throw config_error("per_step_mse expects a collapsed time axis");
  const std::size_t span = pred.dims[3];
  step_mse_report report;
  report.mse.assign(span, 0.0);
  const std::size_t cells = pred.dims[0] * pred.dims[1];
  if (cells == 0) throw config_error("per_step_mse on an empty tensor");
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const double e = pred.data[i] - labels.data[i];
    report.mse[i % span] += e * e;
  }
  for (auto& v : report.mse) v /= static_cast<double>(cells);
  return report;
}

struct roc_point {
  double fpr, tpr;
};

struct roc_curve_result {
  std::vector<roc_point> points;
  double auc = 0.0;
};

// Threshold sweep over the distinct score values, ties grouped, trapezoidal
// AUC. Points run from (0,0) (threshold above every score) to (1,1).
inline roc_curve_result roc_curve(const std::vector<double>& scores,
                                  const std::vector<double>& labels) {
  if (scores.size() != labels.size()) throw config_error("scores/labels length mismatch");
  if (scores.empty()) throw config_error("roc_curve on empty input");
  std::size_t n_pos = 0, n_neg = 0;
  for (const double y : labels) {
    if (y == 1.0)
      ++n_pos;
    else if (y == 0.0)
      ++n_neg;
    else
      throw data_error("labels must be 0 or 1");
  }
  if (n_pos == 0 || n_neg == 0)
    throw data_error("degenerate labels: need at least one positive and one negative");

  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

  roc_curve_result out;
  out.points.push_back({0.0, 0.0});
  std::size_t tp = 0, fp = 0;
  std::size_t i = 0;
  while (i < order.size()) {
    const double s = scores[order[i]];
    while (i < order.size() && scores[order[i]] == s) {
      if (labels[order[i]] == 1.0)
        ++tp;
      else
        ++fp;
      ++i;
    }
    out.points.push_back({static_cast<double>(fp) / static_cast<double>(n_neg),
                          static_cast<double>(tp) / static_cast<double>(n_pos)});
  }
  for (std::size_t k = 1; k < out.points.size(); ++k)
    out.auc += 0.5 * (out.points[k].tpr + out.points[k - 1].tpr) *
               (out.points[k].fpr - out.points[k - 1].fpr);
  return out;
}

// Scores/labels for one (band bin, step ahead) cell across the batch.
inline void collect_bin_step(const tensor4& pred, const tensor4& labels, std::size_t bin,
                             std::size_t step, std::vector<double>& scores,
                             std::vector<double>& lab) {
  if (!pred.same_shape(labels)) throw config_error("prediction/label shape mismatch");
  if (bin >= pred.dims[1]) throw config_error("band bin out of range");
  if (step >= pred.dims[3]) throw config_error("step ahead out of range");
  scores.clear();
  lab.clear();
  for (std::size_t e = 0; e < pred.dims[0]; ++e) {
    scores.push_back(pred.at(e, bin, 0, step));
    lab.push_back(labels.at(e, bin, 0, step));
  }
}

}  // namespace fadecast
