#include "jacobikit/report.hpp"

#include <cstdio>
#include <sstream>

namespace jacobikit {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string render_human(const VerificationReport& report) {
  std::ostringstream os;
  for (const auto& c : report.checks()) {
    os << "check " << c.name << ": " << (c.passed ? "PASS" : "FAIL") << " ("
       << backend_name(c.backend) << ")";
    if (c.witness) {
      const auto& w = *c.witness;
      if (w.multi_index) {
        os << " index=(";
        for (std::size_t i = 0; i < w.multi_index->size(); ++i) {
          if (i) os << ",";
          os << (*w.multi_index)[i];
        }
        os << ")";
      }
      if (w.point) {
        os << " point=(";
        for (std::size_t i = 0; i < w.point->size(); ++i) {
          if (i) os << ",";
          os << format_double((*w.point)[i]);
        }
        os << ")";
      }
      if (w.residual) os << " residual=" << format_double(*w.residual);
      if (!w.detail.empty()) os << " " << w.detail;
    }
    os << "\n";
  }
  os << "overall: " << (report.all_passed() ? "PASS" : "FAIL") << "\n";
  return os.str();
}

nlohmann::ordered_json render_json(const VerificationReport& report) {
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  for (const auto& c : report.checks()) {
    nlohmann::ordered_json jc;
    jc["name"] = c.name;
    jc["status"] = c.passed ? "pass" : "fail";
    jc["backend"] = backend_name(c.backend);
    if (c.witness) {
      nlohmann::ordered_json jw;
      const auto& w = *c.witness;
      if (w.multi_index) jw["index"] = *w.multi_index;
      if (w.point) {
        nlohmann::ordered_json pts = nlohmann::ordered_json::array();
        for (double x : *w.point) pts.push_back(format_double(x));
        jw["point"] = pts;
      }
      if (w.residual) jw["residual"] = format_double(*w.residual);
      if (!w.detail.empty()) jw["detail"] = w.detail;
      jc["witness"] = jw;
    }
    checks.push_back(jc);
  }
  nlohmann::ordered_json out;
  out["checks"] = checks;
  out["overall"] = report.all_passed() ? "pass" : "fail";
  return out;
}

}  // namespace jacobikit
