#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "qaffine/cartan.hpp"
#include "qaffine/report.hpp"

namespace qaffine {

// Orchestration shared by the C API and anything else sitting on top of the
// core: label parsing, cache and seed wiring, and the stable JSON/CSV
// projections of characters and verification reports.

struct JobOptions {
  std::string cache_dir;  // empty: in-memory ranks only
  unsigned long long seed = 2166136261ULL;
  bool allow_nonintegrable = false;
  std::string lambda0_claim;  // nonempty: validated against the computed coefficient
};

// Comma-separated rationals; throws std::invalid_argument on a bad literal
// or a length mismatch.
std::vector<Rat> parse_labels(const std::string& csv, int expected);

// Evaluation points for the specialized-rank cross-check, derived from the
// seed without going through distribution objects so a seed pins the points
// on every platform. Points are nonzero and avoid 1.
std::vector<Rat> sample_points_for_seed(unsigned long long seed);

// Catalog entries as {"name", "rank", "partner"} with partner null when the
// correspondence has none.
nlohmann::ordered_json catalog_listing();

// Character table of the highest-weight module with the given labels:
// {"algebra", "highest_weight_labels", "lambda0_coeff", "depth", "entries"}
// plus "partial": true when a weight space hit the basis limit. Throws
// std::domain_error for non-integrable labels unless the option allows them,
// and for a lambda0 claim that contradicts the labels.
nlohmann::ordered_json character_json(const AlgebraData& data, const std::vector<Rat>& labels,
                                      long depth, const JobOptions& opt);

// CSV projection: header alpha0..alphan,multiplicity, one row per entry.
std::string character_csv(const nlohmann::ordered_json& character);

struct VerifyJob {
  std::string kind;  // serre | presentation | specialized | classical | tensor | twist
  std::vector<Rat> labels;
  std::vector<Rat> labels2;  // tensor right factor
  long depth = 4;
  bool mutate_sign = false;  // twist negative control
};

VerificationReport run_verify(const AlgebraData& data, const VerifyJob& job,
                              const JobOptions& opt);

}  // namespace qaffine
