#include "wlansim/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace wlansim {

void FlowRecord::record_delivery(SimTime enqueue_t, SimTime deliver_t) {
  ++delivered;
  const SimTime transit = deliver_t - enqueue_t;
  delay_sum_ms += to_millis(transit);
  if (have_prev_transit) {
    const double d_ms = to_millis(std::abs(transit - prev_transit));
    jitter_ms += (d_ms - jitter_ms) / 16.0;
    jitter_sum_ms += jitter_ms;
    ++jitter_updates;
  }
  prev_transit = transit;
  have_prev_transit = true;
}

const MetricSummary& BatchSummary::metric(const std::string& name) const {
  for (const auto& m : metrics) {
    if (m.metric == name) return m;
  }
  throw std::out_of_range("no such metric: " + name);
}

double student_t_975(int dof) {
  static const double table[] = {
      12.706, 4.303, 3.182, 2.776, 2.571, 2.447, 2.365, 2.306, 2.262, 2.228,
      2.201,  2.179, 2.160, 2.145, 2.131, 2.120, 2.110, 2.101, 2.093, 2.086,
      2.080,  2.074, 2.069, 2.064, 2.060, 2.056, 2.052, 2.048, 2.045, 2.042};
  if (dof < 1) throw std::invalid_argument("t quantile needs dof >= 1");
  if (dof <= 30) return table[dof - 1];
  return 1.96 + 2.25 / dof;  // close fit for dof > 30
}

namespace {

MetricSummary summarize_metric(const std::string& name, const std::vector<double>& values) {
  MetricSummary s;
  s.metric = name;
  const auto n = static_cast<double>(values.size());
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / n;
  if (values.size() >= 2) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    const double sd = std::sqrt(ss / (n - 1.0));
    s.ci95_half_width = student_t_975(static_cast<int>(values.size()) - 1) * sd / std::sqrt(n);
  }
  return s;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

BatchSummary summarize(const std::vector<RunReport>& runs) {
  if (runs.empty()) throw std::invalid_argument("summarize needs at least one run");
  BatchSummary summary;
  summary.scenario = runs.front().scenario;
  summary.policy = runs.front().policy;
  summary.n_sta = runs.front().n_sta;
  summary.runs = static_cast<int>(runs.size());
  summary.ci_defined = runs.size() >= 2;

  auto collect = [&](const std::string& name, auto getter) {
    std::vector<double> values;
    values.reserve(runs.size());
    for (const auto& r : runs) values.push_back(getter(r));
    summary.metrics.push_back(summarize_metric(name, values));
  };
  collect("tcp_throughput_mbps", [](const RunReport& r) { return r.tcp_throughput_bps / 1e6; });
  collect("udp_delay_ms", [](const RunReport& r) { return r.udp_delay_ms; });
  collect("udp_jitter_ms", [](const RunReport& r) { return r.udp_jitter_ms; });
  collect("udp_loss_rate", [](const RunReport& r) { return r.udp_loss_rate; });
  return summary;
}

std::string run_report_csv_header() {
  return "scenario,seed,policy,n_sta,tcp_throughput_mbps,udp_delay_ms,udp_jitter_ms,"
         "udp_loss_rate\n";
}

std::string run_report_csv_row(const RunReport& r) {
  return r.scenario + "," + std::to_string(r.seed) + "," + r.policy + "," +
         std::to_string(r.n_sta) + "," + format_double(r.tcp_throughput_bps / 1e6) + "," +
         format_double(r.udp_delay_ms) + "," + format_double(r.udp_jitter_ms) + "," +
         format_double(r.udp_loss_rate) + "\n";
}

std::string batch_summary_csv(const BatchSummary& s) {
  std::string out = "scenario,policy,n_sta,runs,metric,mean,ci95_half_width\n";
  for (const auto& m : s.metrics) {
    out += s.scenario + "," + s.policy + "," + std::to_string(s.n_sta) + "," +
           std::to_string(s.runs) + "," + m.metric + "," + format_double(m.mean) + "," +
           (s.ci_defined ? format_double(m.ci95_half_width) : std::string("undefined")) + "\n";
  }
  return out;
}

}  // namespace wlansim
