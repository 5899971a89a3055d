#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace agentnet {

// Everything needed to reproduce a batch of runs; round-trips through JSON.
struct ExperimentSpec {
  std::string graph_file;          // either this
  std::string generate;            // or KIND:N[:EXTRA][:SEED]; missing SEED means the run seed
  bool perturb_weights = false;    // file graphs: break duplicate weights instead of rejecting
  std::string placement = "dispersed";  // dispersed | rooted:NODE | general[:SEED] | file:PATH
  std::string algo = "leader";     // leader | mst | gather | mis | mds | simulate-mp:<payload>
  long seed_first = 1;
  long seed_last = 1;
  std::string max_rounds;          // empty for the default, "N" absolute, "xM" for M*m
  std::string trace_path;
  int trace_level = 0;
  std::string metrics_path;
  std::string mst_out;             // MST edge list of the first seed
  bool validate = true;
  int threads = 0;                 // 0: one per hardware thread
  bool operator==(const ExperimentSpec&) const = default;
};

std::string to_json(const ExperimentSpec& spec);
ExperimentSpec spec_from_json(const std::string& text);  // throws std::invalid_argument

// One line of key=value fields in a fixed order.
struct RunRecord {
  std::vector<std::pair<std::string, std::string>> fields;
  bool ok = true;      // validations passed and the budget held
  std::string trace;   // empty unless tracing
  std::string mst;     // "u v w" lines plus a total line, MST runs only
  std::string get(const std::string& key) const;  // empty when absent
};

std::string format_record(const RunRecord& r);
RunRecord parse_record(const std::string& line);

struct ExperimentResult {
  std::vector<RunRecord> records;  // ascending seed
  int exit_code = 0;               // 1 iff some record is not ok
};

// Runs every seed, fanning seeds out across threads. Records depend only on
// the spec, never on thread timing.
ExperimentResult run_experiment(const ExperimentSpec& spec);
// Runs the spec and writes metrics, traces and the MST file it names; outputs are appended.
int run_and_write(const ExperimentSpec& spec, std::ostream& echo);

// Ratio y/x over metrics records. x: m | m_plus_nlogn | nlogn_sq | nlogn;
// y: rounds | memory_bits | any numeric field.
struct FitResult {
  std::string x, y;
  double constant = 0;   // least squares through the origin
  double max_ratio = 0;
  std::vector<std::pair<int, double>> by_size;  // n -> max ratio at that size
  double growth = 0;     // max ratio at the largest n over that at the smallest
};

double bound_value(const std::string& x, long n, long m);
FitResult fit_bound(const std::vector<RunRecord>& records, const std::string& x, const std::string& y);
FitResult fit_bound_files(const std::vector<std::string>& paths, const std::string& x, const std::string& y);

}  // namespace agentnet
