#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "dockalloc/model.hpp"

namespace dockalloc {

// Instance file schema: a single JSON document with integer vectors and
// rationals encoded as [numerator, denominator] pairs; parse/serialize
// round-trips losslessly and never touches floating point.
Instance parse_instance_text(const std::string& text);    // throws ParseError
Instance load_instance_file(const std::string& path);     // throws ParseError
std::string serialize_instance(const Instance& inst);
void save_instance_file(const Instance& inst, const std::string& path);

// One CSV row per (instance, lambda) verification.
struct ReportRow {
  std::string instance_id;
  long long n = 0, d_total = 0, b_total = 0, gamma = 0, lambda = 0;
  std::string dist_l1, dist_linf, bound;  // blank when skipped
  std::string p_cases, q_cases, n_cases, table1_bound;
  std::string pass;  // "1", "0", or "skip"
  std::string phases, gamma_steps;
  long long wall_ms = 0;
};

extern const char* const kReportHeader;

std::string report_row_csv(const ReportRow& row);

}  // namespace dockalloc
