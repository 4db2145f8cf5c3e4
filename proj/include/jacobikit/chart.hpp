#ifndef JACOBIKIT_CHART_HPP
#define JACOBIKIT_CHART_HPP

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "jacobikit/errors.hpp"

namespace jacobikit {

// Coordinate chart of an open set: a positive dimension and distinct
// coordinate names. Immutable and freely shared between expressions.
class Chart {
public:
  explicit Chart(std::vector<std::string> names);

  int dim() const noexcept { return static_cast<int>(names_.size()); }
  const std::string& name(int i) const { return names_.at(static_cast<std::size_t>(i)); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  std::optional<int> index_of(std::string_view name) const;

  friend bool operator==(const Chart& a, const Chart& b) { return a.names_ == b.names_; }

private:
  std::vector<std::string> names_;
};

using ChartPtr = std::shared_ptr<const Chart>;

ChartPtr make_chart(std::vector<std::string> names);

inline bool same_chart(const ChartPtr& a, const ChartPtr& b) {
  return a == b || (a && b && *a == *b);
}

}  // namespace jacobikit

#endif
