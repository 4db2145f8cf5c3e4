#include "jacobikit/chart.hpp"

#include <unordered_set>

namespace jacobikit {

Chart::Chart(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.empty()) throw Error("chart dimension must be at least 1");
  std::unordered_set<std::string_view> seen;
  for (const auto& n : names_) {
    if (n.empty()) throw Error("empty coordinate name");
    if (!seen.insert(n).second) throw Error("duplicate coordinate name `" + n + "`");
  }
}

std::optional<int> Chart::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return static_cast<int>(i);
  }
  return std::nullopt;
}

ChartPtr make_chart(std::vector<std::string> names) {
  return std::make_shared<const Chart>(std::move(names));
}

}  // namespace jacobikit
