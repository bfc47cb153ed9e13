#pragma once

#include <string>

#include "wlansim/runner.hpp"

namespace wlansim {

/// Writes one run's outputs under out_dir: a CSV per metric series
/// (t_seconds,value,unit), summary.csv (metric,scope,value,unit) and
/// session_timeline.csv. Files are staged with a .tmp suffix and renamed,
/// and the directory's writability is probed before anything is written.
void emit_run_outputs(const RunReport& report, const std::string& out_dir);

/// Comparison outputs: per-arm subdirectories a/ and b/, comparison.csv and
/// a plain-text comparison.txt with the ordering verdicts.
void emit_comparison_outputs(const ComparisonReport& cmp, const std::string& out_dir);

std::string comparison_text(const ComparisonReport& cmp);

/// Structural check: every §6-level metric family is present in a report
/// exactly once (ftp server/client throughput, cbr delay, jitter drops,
/// mac retransmissions, fifo wait).
bool report_has_all_metric_families(const RunReport& report, std::string* missing = nullptr);

}  // namespace wlansim
