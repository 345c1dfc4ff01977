#pragma once

#include <functional>
#include <vector>

namespace densemimo::quad {

struct Result {
  double value = 0.0;
  double abs_error = 0.0;  // library error estimate, summed over segments
};

// Adaptive Gauss-Kronrod integral of f over [a, b] (b may be +inf) split at
// interior knots. Throws DivergenceError (carrying the partial value) when the
// achieved relative error exceeds rel_tol.
Result integrate(const std::function<double(double)>& f, double a, double b,
                 std::vector<double> knots = {}, double rel_tol = 1e-10);

}  // namespace densemimo::quad
