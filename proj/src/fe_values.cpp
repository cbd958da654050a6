#include "nsac/fe_values.hpp"

namespace nsac {

CellValues::CellValues(const QuadratureRule& rule)
    : rule_(&rule),
      p2_(tabulate_p2(rule)),
      p1_(tabulate_p1(rule)),
      points_(rule.size()),
      jxw_(rule.size()),
      p2_grads_(rule.size() * 6),
      p1_grads_(rule.size() * 3) {}

void CellValues::reinit(const Mesh& mesh, std::size_t cell) {
  geo_ = cell_geometry(mesh, cell);
  for (std::size_t q = 0; q < rule_->size(); ++q) {
    points_[q] = geo_.map(rule_->points[q]);
    jxw_[q] = rule_->weights[q] * geo_.area;
    for (int i = 0; i < 6; ++i) p2_grads_[q * 6 + i] = geo_.grad(p2_.ref_grads[q][i]);
    for (int i = 0; i < 3; ++i) p1_grads_[q * 3 + i] = geo_.grad(p1_.ref_grads[q][i]);
  }
}

}  // namespace nsac
