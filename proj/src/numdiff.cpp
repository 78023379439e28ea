#include "cartan/numdiff.hpp"

#include <algorithm>
#include <sstream>

#include "cartan/errors.hpp"

namespace cartan {

namespace {

Vector central(const VectorField& f, const Vector& x, const Vector& unit, double h) {
  return (f(x + h * unit) - f(x - h * unit)) / (2.0 * h);
}

}  // namespace

DerivativeEstimate estimate_directional_derivative(const VectorField& f, const Vector& x,
                                                   const Vector& direction,
                                                   const FiniteDifference& fd) {
  DerivativeEstimate out;
  const double length = direction.size() == 0 ? 0.0 : direction.norm();
  if (length == 0.0) {
    const Vector fx = f(x);
    out.value = Vector::Zero(fx.size());
    out.coarse = out.value;
    out.fine = out.value;
    return out;
  }
  // Step along the unit direction so h keeps its meaning for long vectors.
  const Vector unit = direction / length;
  out.coarse = central(f, x, unit, fd.step) * length;
  out.fine = central(f, x, unit, 0.5 * fd.step) * length;
  out.value = (4.0 * out.fine - out.coarse) / 3.0;
  out.gap = (out.coarse - out.fine).norm();
  return out;
}

Vector directional_derivative(const VectorField& f, const Vector& x, const Vector& direction,
                              const FiniteDifference& fd) {
  DerivativeEstimate est = estimate_directional_derivative(f, x, direction, fd);
  const double scale = std::max(1.0, est.value.norm());
  if (est.gap > fd.richardson_tol * scale) {
    std::ostringstream msg;
    msg << "finite-difference estimates at h=" << fd.step << " and h/2 disagree by " << est.gap
        << " (limit " << fd.richardson_tol * scale << ")";
    throw StepSizeError(msg.str());
  }
  return std::move(est.value);
}

Vector vector_field_bracket(const VectorField& v, const VectorField& w, const Vector& x,
                            const FiniteDifference& fd) {
  return directional_derivative(w, x, v(x), fd) - directional_derivative(v, x, w(x), fd);
}

}  // namespace cartan
