#include "wlansim/report.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace wlansim {
namespace {

namespace fs = std::filesystem;

void write_file_atomically(const fs::path& path, const std::string& content) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
  }
  fs::rename(tmp, path);
}

void probe_writable(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  const fs::path probe = dir / ".write-probe.tmp";
  std::ofstream out(probe, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("output directory not writable: " + dir.string());
  out.close();
  fs::remove(probe, ec);
}

std::string series_csv(const MetricSeries& s) {
  std::ostringstream o;
  o << "t_seconds,value,unit\n";
  for (const auto& p : s.points)
    o << format_number(p.t_seconds) << "," << format_number(p.value) << "," << s.unit << "\n";
  return o.str();
}

std::string summary_csv(const RunReport& r) {
  std::ostringstream o;
  o << "metric,scope,value,unit\n";
  for (const auto& s : r.metrics.scalars())
    o << s.name << "," << s.scope << "," << s.value << "," << s.unit << "\n";
  return o.str();
}

std::string timeline_csv(const RunReport& r) {
  std::ostringstream o;
  o << "call_id,flow,caller,callee,initiation_s,establishment_s,end_s,final_state,"
       "caller_talk_s,callee_talk_s,caller_pkts_sent,caller_pkts_received,"
       "callee_pkts_sent,callee_pkts_received\n";
  auto sec = [](SimTime t) { return t < 0 ? std::string("-") : format_number(to_seconds(t)); };
  for (const auto& d : r.timeline) {
    o << d.call_id << "," << d.flow << "," << d.caller << "," << d.callee << ","
      << sec(d.timeline.invite_sent_at) << "," << sec(d.timeline.established_at) << ","
      << sec(d.timeline.ended_at) << "," << d.final_state << ","
      << format_number(d.caller_talk_s) << "," << format_number(d.callee_talk_s) << ","
      << d.caller_sent << "," << d.caller_received << "," << d.callee_sent << ","
      << d.callee_received << "\n";
  }
  return o.str();
}

std::string flows_csv(const RunReport& r) {
  std::ostringstream o;
  o << "flow,sent,delivered,drop_queue,drop_retry,drop_route,drop_link,in_flight_end,"
       "conserved\n";
  for (const auto& [name, fs] : r.flows) {
    o << name << "," << fs.sent << "," << fs.delivered << "," << fs.drop_queue << ","
      << fs.drop_retry << "," << fs.drop_route << "," << fs.drop_link << "," << fs.in_flight_end
      << "," << (fs.conserved() ? "yes" : "no") << "\n";
  }
  return o.str();
}

const char* arm_name(PhyStandard s) { return s == PhyStandard::A ? "a" : "b"; }

}  // namespace

void emit_run_outputs(const RunReport& report, const std::string& out_dir) {
  const fs::path dir(out_dir);
  probe_writable(dir);
  for (const auto& [name, series] : report.metrics.series()) {
    write_file_atomically(dir / (name + ".csv"), series_csv(series));
  }
  write_file_atomically(dir / "summary.csv", summary_csv(report));
  write_file_atomically(dir / "session_timeline.csv", timeline_csv(report));
  write_file_atomically(dir / "flows.csv", flows_csv(report));
}

std::string comparison_text(const ComparisonReport& cmp) {
  std::ostringstream o;
  o << "Comparison: arm a = 802.11" << arm_name(cmp.a.arm) << ", arm b = 802.11"
    << arm_name(cmp.b.arm) << ", seed " << cmp.a.seed << "\n\n";

  auto row = [&o](const std::string& name, const std::string& va, const std::string& vb,
                  const std::string& ratio) {
    o << "  " << name;
    for (std::size_t i = name.size(); i < 34; ++i) o << ' ';
    o << va;
    for (std::size_t i = va.size(); i < 16; ++i) o << ' ';
    o << vb;
    for (std::size_t i = vb.size(); i < 16; ++i) o << ' ';
    o << ratio << "\n";
  };
  auto ratio_of = [](double x, double y) {
    return y == 0 ? std::string("-") : format_number(x / y);
  };

  row("metric", "a", "b", "b/a");
  row("ftp_server_peak_mbps", format_number(cmp.a.ftp_server_peak_bps / 1e6),
      format_number(cmp.b.ftp_server_peak_bps / 1e6),
      ratio_of(cmp.b.ftp_server_peak_bps, cmp.a.ftp_server_peak_bps));
  row("ftp_client_peak_mbps", format_number(cmp.a.ftp_client_peak_bps / 1e6),
      format_number(cmp.b.ftp_client_peak_bps / 1e6),
      ratio_of(cmp.b.ftp_client_peak_bps, cmp.a.ftp_client_peak_bps));
  const double da = cmp.a.cbr_mean_delay_ms.value_or(0);
  const double db = cmp.b.cbr_mean_delay_ms.value_or(0);
  row("cbr_delay_ms", format_number(da), format_number(db), ratio_of(db, da));
  row("cbr_throughput_kbps", format_number(cmp.a.cbr_mean_throughput_bps / 1e3),
      format_number(cmp.b.cbr_mean_throughput_bps / 1e3),
      ratio_of(cmp.b.cbr_mean_throughput_bps, cmp.a.cbr_mean_throughput_bps));
  row("jitter_drops", std::to_string(cmp.a.jitter_drops_total),
      std::to_string(cmp.b.jitter_drops_total),
      ratio_of(static_cast<double>(cmp.b.jitter_drops_total),
               static_cast<double>(cmp.a.jitter_drops_total)));
  row("mac_retx_ack_timeout", std::to_string(cmp.a.mac_retx_total),
      std::to_string(cmp.b.mac_retx_total),
      ratio_of(static_cast<double>(cmp.b.mac_retx_total),
               static_cast<double>(cmp.a.mac_retx_total)));
  row("fifo_avg_wait_ms", format_number(cmp.a.fifo_avg_wait_ms),
      format_number(cmp.b.fifo_avg_wait_ms),
      ratio_of(cmp.b.fifo_avg_wait_ms, cmp.a.fifo_avg_wait_ms));

  o << "\nExpected orderings:\n";
  for (const auto& ord : cmp.orderings) {
    o << "  [" << (ord.holds ? "ok" : "VIOLATED") << "] " << ord.name << " (" << ord.detail
      << ")\n";
  }
  o << "\nresult: " << (cmp.all_hold() ? "all expected orderings hold" : "orderings violated")
    << "\n";
  return o.str();
}

void emit_comparison_outputs(const ComparisonReport& cmp, const std::string& out_dir) {
  const fs::path dir(out_dir);
  probe_writable(dir);
  emit_run_outputs(cmp.a, (dir / "a").string());
  emit_run_outputs(cmp.b, (dir / "b").string());

  std::ostringstream csv;
  csv << "check,holds,detail\n";
  for (const auto& ord : cmp.orderings)
    csv << ord.name << "," << (ord.holds ? "yes" : "no") << ",\"" << ord.detail << "\"\n";
  write_file_atomically(dir / "comparison.csv", csv.str());
  write_file_atomically(dir / "comparison.txt", comparison_text(cmp));
}

bool report_has_all_metric_families(const RunReport& report, std::string* missing) {
  const std::vector<std::string> required_scalars = {
      "app.ftp_server_throughput_peak", "app.ftp_client_throughput_peak", "app.cbr_delay_ms",
      "app.cbr_throughput",             "voip.jitter_drops",              "mac.retx_ack_timeout",
      "stack.fifo_avg_wait",
  };
  for (const auto& name : required_scalars) {
    int found = 0;
    for (const auto& s : report.metrics.scalars()) {
      if (s.name == name) ++found;
    }
    if (found == 0) {
      if (missing) *missing = name;
      return false;
    }
  }
  return true;
}

}  // namespace wlansim
