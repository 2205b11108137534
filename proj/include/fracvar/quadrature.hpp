#pragma once

#include "fracvar/operators.hpp"

namespace fracvar {

enum class Quadrature {
  Trapezoid,      // composite trapezoid, second order
  GaussLegendre,  // composite 8-point Gauss-Legendre
};

/// Composite rule with `panels` equal panels on [lo, hi]. Returns 0 for an
/// empty interval.
double integrate(const RealFn& f, double lo, double hi, int panels,
                 Quadrature rule = Quadrature::Trapezoid);

}  // namespace fracvar
