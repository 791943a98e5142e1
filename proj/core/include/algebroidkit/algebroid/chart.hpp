#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace algebroidkit {

struct ChartComponent {
  std::string label;
  std::size_t dim = 0;

  friend bool operator==(const ChartComponent&, const ChartComponent&) = default;
};

/// Base of a presentation: the point, one affine chart, or a disjoint union of labeled affine charts.
class ChartBase {
 public:
  enum class Kind { Point, Affine, DisjointUnion };

  ChartBase() : ChartBase(point()) {}
  static ChartBase point();
  static ChartBase affine(std::size_t n);
  /// Labels must be distinct.
  static ChartBase disjoint_union(std::vector<ChartComponent> components);

  Kind kind() const { return kind_; }
  const std::vector<ChartComponent>& components() const { return components_; }
  std::size_t component_count() const { return components_.size(); }
  std::size_t dim(std::size_t component = 0) const { return components_.at(component).dim; }
  /// Index of the component with the given label; throws DimensionError when absent.
  std::size_t index_of(const std::string& label) const;
  bool is_single_chart() const { return kind_ != Kind::DisjointUnion; }
  std::string describe() const;

  friend bool operator==(const ChartBase&, const ChartBase&) = default;

 private:
  ChartBase(Kind k, std::vector<ChartComponent> c) : kind_(k), components_(std::move(c)) {}
  Kind kind_;
  std::vector<ChartComponent> components_;
};

}  // namespace algebroidkit
