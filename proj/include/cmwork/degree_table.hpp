#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace cmwork {

// Shipped invariant-degree data for groups that are never enumerated
// element-by-element (exceptional types), plus maximal-parabolic degree
// lists keyed "G/P".
class DegreeTable {
 public:
  static DegreeTable load(const std::string& path);
  static DegreeTable load_default();

  bool has(const std::string& label) const { return entries_.count(label) > 0; }
  const std::vector<int>& degrees(const std::string& label) const;
  // All entries "group/..." for the given group label.
  std::vector<std::pair<std::string, std::vector<int>>> maximal_parabolics(
      const std::string& group) const;
  // prod d_i = |W|.
  long long order_of(const std::string& label) const;

  const std::map<std::string, std::vector<int>>& entries() const { return entries_; }

 private:
  std::map<std::string, std::vector<int>> entries_;
};

}  // namespace cmwork
