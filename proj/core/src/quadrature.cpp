#include "hiddenspace/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "hiddenspace/error.hpp"

namespace hs {

GaussLegendre::GaussLegendre(std::size_t order) : nodes(order), weights(order) {
  if (order == 0) throw InvalidArgument("GaussLegendre: order must be positive");
  if (order == 1) {
    nodes[0] = 0.0;
    weights[0] = 2.0;
    return;
  }
  const auto n = static_cast<double>(order);
  for (std::size_t i = 0; i < (order + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      // Three-term recurrence for P_n(x) and P_{n-1}(x).
      double prev = 1.0, cur = x;
      for (std::size_t k = 2; k <= order; ++k) {
        const double kk = static_cast<double>(k);
        const double next = ((2 * kk - 1) * x * cur - (kk - 1) * prev) / kk;
        prev = cur;
        cur = next;
      }
      dp = n * (x * cur - prev) / (x * x - 1.0);
      const double dx = cur / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes[i] = -x;
    nodes[order - 1 - i] = x;
    weights[i] = w;
    weights[order - 1 - i] = w;
  }
}

double integrate(const std::function<double(double)>& f, double a, double b, std::size_t panels,
                 const GaussLegendre& rule) {
  if (panels == 0) throw InvalidArgument("integrate: panels must be positive");
  const double h = (b - a) / static_cast<double>(panels);
  double sum = 0.0;
  for (std::size_t p = 0; p < panels; ++p) {
    const double lo = a + h * static_cast<double>(p);
    const double mid = lo + 0.5 * h;
    double s = 0.0;
    for (std::size_t i = 0; i < rule.order(); ++i) s += rule.weights[i] * f(mid + 0.5 * h * rule.nodes[i]);
    sum += 0.5 * h * s;
  }
  return sum;
}

}  // namespace hs
