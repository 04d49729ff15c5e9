#ifndef REFRABILL_QUADRATURE_HPP
#define REFRABILL_QUADRATURE_HPP

#include <functional>

namespace refrabill {

/// Fixed 16-point Gauss-Legendre rule on [a, b].
double gauss16(const std::function<double(double)>& f, double a, double b);

/// Adaptive Gauss-Kronrod (7-15 pair) to the given absolute tolerance.
/// Subdivides the worst panel first; throws on panel exhaustion.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double abs_tol, int max_panels = 4000);

} // namespace refrabill

#endif
