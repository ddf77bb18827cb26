// Machine-readable outputs and a persistent L-polynomial cache: JSON-lines
// family snapshots, versioned cache records, CSV/JSON reports, and the
// experiment configuration shared by the CLI subcommands.
#pragma once

#include "d4lab/density.hpp"

#include <iosfwd>
#include <optional>

namespace d4lab {

struct ExperimentConfig {
  long long q = 3;
  int n = 2;
  int n_max = -1;  // inclusive range end; -1 means just n
  double alpha = 0.0;
  double beta = 1.0;
  double sigma = 1.0;
  std::string kind = "fejer";  // fejer | freeman
  int max_degree = 40;         // Euler product truncation
  std::string out;             // empty: stdout
  std::string format = "csv";  // csv | json
  std::string cache_dir;
  bool deterministic = true;
  std::uint64_t seed = 1;
};
// Throws InvalidInput on out-of-range values (q odd prime power, alpha/beta
// in [0,1] ordered, sigma > 0, format known).
void validate_config(const ExperimentConfig& cfg);

// canonical string keys (no floating point)
std::string field_key(const QuadField& K);
std::string element_key(const QuadElement& b);

// --- family snapshots (JSON-lines, one pair per line) ----------------------
std::string pair_to_json(const QuarticPair& p, long long q);
void write_family_snapshot(std::ostream& os, const std::vector<QuarticPair>& fam,
                           long long q);

// --- L-polynomial cache (append-only JSON-lines, schema version 1) ---------
struct LPolyCache {
  explicit LPolyCache(const std::string& dir);  // empty dir: disabled
  std::optional<LPolynomial> lookup(const std::string& key) const;
  void store(const std::string& key, const LPolynomial& P);
  std::size_t size() const { return entries_.size(); }

 private:
  std::string path_;
  std::map<std::string, LPolynomial> entries_;
};
// serialize / parse one cache record (exact round trip)
std::string lpoly_record(const std::string& key, const LPolynomial& P);
std::pair<std::string, LPolynomial> parse_lpoly_record(const std::string& line);

// --- reports ----------------------------------------------------------------
struct DensityRow {
  long long q = 0;
  int n = 0;
  double alpha = 0, beta = 1;
  std::size_t family_size = 0;
  double mean_D = 0, prediction = 0, discrepancy = 0, nonvanishing = 0;
};
std::string density_report_csv(const std::vector<DensityRow>& rows);
std::string density_report_json(const std::vector<DensityRow>& rows);
std::string histogram_csv(const std::map<int, unsigned long long>& hist);

}  // namespace d4lab
