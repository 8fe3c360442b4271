// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdio>
#include <string>

#include "fadecast/covariance.hpp"
#include "fadecast/eval.hpp"
#include "fadecast/models.hpp"
#include "fadecast/tensor.hpp"

namespace fadecast::csv {

// All floats printed with 9 significant digits so re-runs are byte-identical.
inline std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

inline std::string covariance_csv(const covariance_profile& profile) {
  std::string out = "lag,value,kind\n";
  const char* kind = profile.kind == covariance_kind::autocov ? "auto" : "cross";
  for (std::size_t i = 0; i < profile.lags.size(); ++i)
    out += std::to_string(profile.lags[i]) + "," + num(profile.values[i]) + "," + kind + "\n";
  return out;
}

inline std::string train_log_csv(const train_log& log) {
  std::string out = "epoch,train_loss,test_loss\n";
  for (std::size_t e = 0; e < log.train_loss.size(); ++e)
    out += std::to_string(e + 1) + "," + num(log.train_loss[e]) + "," + num(log.test_loss[e]) +
           "\n";
  return out;
}

inline std::string step_mse_csv(const step_mse_report& report) {
  std::string out = "step,mse\n";
  for (std::size_t d = 0; d < report.mse.size(); ++d)
    out += std::to_string(d + 1) + "," + num(report.mse[d]) + "\n";
  return out;
}

inline std::string roc_csv(const std::vector<std::pair<std::size_t, roc_curve_result>>& curves) {
  std::string out = "step,fpr,tpr\n";
  for (const auto& [step, curve] : curves)
    for (const auto& p : curve.points)
      out += std::to_string(step) + "," + num(p.fpr) + "," + num(p.tpr) + "\n";
  return out;
}

inline std::string auc_csv(const std::vector<std::pair<std::size_t, double>>& aucs) {
  std::string out = "step,auc\n";
  for (const auto& [step, auc] : aucs) out += std::to_string(step) + "," + num(auc) + "\n";
  return out;
}

// Flattens one (example, channel) slice of a rank-4 tensor for inspection.
inline std::string tensor_slice_csv(const tensor4& t, std::size_t example, std::size_t channel) {
  if (example >= t.dims[0] || channel >= t.dims[3])
    throw config_error("tensor slice out of range");
  std::string out = "freq,time,value\n";
  for (std::size_t f = 0; f < t.dims[1]; ++f)
    for (std::size_t tt = 0; tt < t.dims[2]; ++tt)
      out += std::to_string(f) + "," + std::to_string(tt) + "," +
             num(t.at(example, f, tt, channel)) + "\n";
  return out;
}

}  // namespace fadecast::csv
