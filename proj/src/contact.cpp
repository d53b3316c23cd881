#include "cdg/contact.hpp"

#include <map>
#include <stdexcept>

namespace cdg {

std::vector<std::pair<int, double>> simpson_weights(const Mesh& mesh) {
  std::map<int, double> weight;
  const int nv = mesh.vertex_count();
  for (int e = 0; e < mesh.edge_count(); ++e) {
    const Edge& edge = mesh.edges[e];
    if (edge.cls != EdgeClass::gamma3) continue;
    weight[edge.v0] += edge.length / 6.0;
    weight[edge.v1] += edge.length / 6.0;
    weight[nv + e] += 4.0 * edge.length / 6.0;
  }
  return {weight.begin(), weight.end()};
}

FrictionOperator build_friction(const FeSpaceP2& space,
                                const std::function<double(const Vec2&)>& bound) {
  FrictionOperator op;
  op.columns = space.free_count();
  for (const auto& [node, w] : simpson_weights(*space.mesh)) {
    const double g = bound(space.nodes[node]);
    if (g < 0.0) throw std::invalid_argument("friction bound must be nonnegative");
    const int column = space.reduced_index[node];
    if (column < 0) throw std::logic_error("contact node unexpectedly clamped");
    op.entries.push_back({node, column, w, g});
  }
  return op;
}

SpMat FrictionOperator::matrix() const {
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(entries.size());
  for (int r = 0; r < rows(); ++r) {
    triplets.emplace_back(r, entries[r].column, entries[r].coeff());
  }
  SpMat m(rows(), columns);
  m.setFromTriplets(triplets.begin(), triplets.end());
  m.makeCompressed();
  return m;
}

}  // namespace cdg
