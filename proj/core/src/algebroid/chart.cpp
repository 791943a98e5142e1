#include "algebroidkit/algebroid/chart.hpp"

#include <set>

#include "algebroidkit/error.hpp"

namespace algebroidkit {

ChartBase ChartBase::point() { return ChartBase(Kind::Point, {{"", 0}}); }

ChartBase ChartBase::affine(std::size_t n) { return ChartBase(Kind::Affine, {{"", n}}); }

ChartBase ChartBase::disjoint_union(std::vector<ChartComponent> components) {
  if (components.empty()) throw DimensionError("a disjoint union needs at least one component");
  std::set<std::string> seen;
  for (const auto& c : components) {
    if (!seen.insert(c.label).second) throw DimensionError("duplicate component label '" + c.label + "'");
  }
  return ChartBase(Kind::DisjointUnion, std::move(components));
}

std::size_t ChartBase::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < components_.size(); ++i) {
    if (components_[i].label == label) return i;
  }
  throw DimensionError("no component labeled '" + label + "'");
}

std::string ChartBase::describe() const {
  switch (kind_) {
    case Kind::Point:
      return "Point";
    case Kind::Affine:
      return "Affine(" + std::to_string(components_.front().dim) + ")";
    case Kind::DisjointUnion: {
      std::string s = "DisjointUnion(";
      for (std::size_t i = 0; i < components_.size(); ++i) {
        if (i) s += ", ";
        s += components_[i].label + ":" + std::to_string(components_[i].dim);
      }
      return s + ")";
    }
  }
  return "?";
}

}  // namespace algebroidkit
