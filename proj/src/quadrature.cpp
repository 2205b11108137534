#include "fracvar/quadrature.hpp"

#include <array>

#include "fracvar/error.hpp"

namespace fracvar {

namespace {

constexpr std::array<double, 4> kGlNodes = {
    0.1834346424956498049394761, 0.5255324099163289858177390,
    0.7966664774136267395915539, 0.9602898564975362316835609};
constexpr std::array<double, 4> kGlWeights = {
    0.3626837833783619829651504, 0.3137066458778872873379622,
    0.2223810344533744705443560, 0.1012285362903762591525314};

}  // namespace

double integrate(const RealFn& f, double lo, double hi, int panels,
                 Quadrature rule) {
  require(panels >= 1, "integrate: need at least one panel");
  if (hi == lo) return 0.0;
  const double h = (hi - lo) / panels;
  double s = 0.0;
  if (rule == Quadrature::Trapezoid) {
    s = 0.5 * (f(lo) + f(hi));
    for (int i = 1; i < panels; ++i) s += f(lo + i * h);
    return s * h;
  }
  for (int i = 0; i < panels; ++i) {
    const double mid = lo + (i + 0.5) * h;
    const double half = 0.5 * h;
    double panel = 0.0;
    for (size_t k = 0; k < kGlNodes.size(); ++k) {
      panel += kGlWeights[k] *
               (f(mid - half * kGlNodes[k]) + f(mid + half * kGlNodes[k]));
    }
    s += panel * half;
  }
  return s;
}

}  // namespace fracvar
