#pragma once

#include <functional>

namespace silvarisk {

struct QuadratureOptions {
  double relative_tolerance = 1e-10;
  int max_depth = 40;
};

// Adaptive Simpson integration of f over [lower, upper].
//
// Refinement stops on an interval once the Richardson error estimate falls
// below its share of relative_tolerance * |estimate of the whole integral|.
// Throws NumericalError if an interval is still unresolved at max_depth or
// the integrand returns a non-finite value.
double integrate(const std::function<double(double)>& f, double lower,
                 double upper, QuadratureOptions options = {});

}  // namespace silvarisk
