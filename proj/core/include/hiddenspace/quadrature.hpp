#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace hs {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;

  explicit GaussLegendre(std::size_t order);
  std::size_t order() const noexcept { return nodes.size(); }
};

/// Composite Gauss-Legendre over [a, b] with `panels` equal panels.
double integrate(const std::function<double(double)>& f, double a, double b, std::size_t panels,
                 const GaussLegendre& rule);

}  // namespace hs
