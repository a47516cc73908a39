#pragma once

#include <chrono>
#include <string>
#include <vector>

#include "json.hpp"
#include "qaffine/rational.hpp"

namespace qaffine {

// Outcome of one verification run. The JSON layout is a CLI contract:
// check, algebra, lambda_labels, depth, status, counterexample, elapsed_ms,
// in exactly this order, with counterexample null on a pass. Reports are
// compared modulo elapsed_ms.
struct VerificationReport {
  std::string check;
  std::string algebra;
  std::vector<Rat> lambda_labels;
  long depth = 0;
  bool pass = true;
  nlohmann::ordered_json counterexample;
  long elapsed_ms = 0;

  // Records the first failure only; later ones would drown the report.
  void fail(nlohmann::ordered_json why) {
    if (pass) {
      pass = false;
      counterexample = std::move(why);
    }
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["check"] = check;
    j["algebra"] = algebra;
    nlohmann::ordered_json labels = nlohmann::ordered_json::array();
    for (const auto& l : lambda_labels) labels.push_back(rat_to_string(l));
    j["lambda_labels"] = std::move(labels);
    j["depth"] = depth;
    j["status"] = pass ? "pass" : "fail";
    j["counterexample"] = counterexample;
    j["elapsed_ms"] = elapsed_ms;
    return j;
  }
};

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  long ms() const {
    auto d = std::chrono::steady_clock::now() - start_;
    return std::chrono::duration_cast<std::chrono::milliseconds>(d).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace qaffine
