#ifndef JACOBIKIT_REPORT_HPP
#define JACOBIKIT_REPORT_HPP

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "jacobikit/zerocheck.hpp"

namespace jacobikit {

// Per-check verification outcome with enough witness data to
// reproduce a failure: the coefficient multi-index and/or the sample
// point with its residual.
struct CheckWitness {
  std::optional<std::vector<int>> multi_index;
  std::optional<std::vector<double>> point;
  std::optional<double> residual;
  std::string detail;
};

struct CheckResult {
  std::string name;
  bool passed = false;
  Backend backend = Backend::Exact;
  std::optional<CheckWitness> witness;
};

class VerificationReport {
public:
  void add(CheckResult r) { checks_.push_back(std::move(r)); }
  const std::vector<CheckResult>& checks() const noexcept { return checks_; }

  bool all_passed() const {
    for (const auto& c : checks_) {
      if (!c.passed) return false;
    }
    return true;
  }

private:
  std::vector<CheckResult> checks_;
};

std::string render_human(const VerificationReport& report);
nlohmann::ordered_json render_json(const VerificationReport& report);

// Formats a double with 17 significant digits (round-trippable).
std::string format_double(double v);

}  // namespace jacobikit

#endif
