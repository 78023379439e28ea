#include "cartan/rational.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace cartan {

std::string to_string(Rationality r) {
  switch (r) {
    case Rationality::rational: return "rational";
    case Rationality::irrational: return "irrational";
    case Rationality::undecided: return "undecided";
  }
  return "undecided";
}

std::vector<Convergent> convergents(double x, std::int64_t bound) {
  std::vector<Convergent> out;
  if (!std::isfinite(x)) return out;
  // p_{-1}/q_{-1} = 1/0, p_{-2}/q_{-2} = 0/1
  std::int64_t p_prev = 1, q_prev = 0, p_prev2 = 0, q_prev2 = 1;
  long double rest = x;
  for (int depth = 0; depth < 64; ++depth) {
    const long double a_ld = std::floor(rest);
    if (std::fabs(a_ld) > 1e15L) break;
    const auto a = static_cast<std::int64_t>(a_ld);
    const std::int64_t p = a * p_prev + p_prev2;
    const std::int64_t q = a * q_prev + q_prev2;
    if (q > bound) break;
    out.push_back({p, q});
    p_prev2 = p_prev;
    q_prev2 = q_prev;
    p_prev = p;
    q_prev = q;
    const long double frac = rest - a_ld;
    if (frac < 1e-18L) break;
    rest = 1.0L / frac;
  }
  return out;
}

RationalityVerdict test_rationality(double x, std::int64_t bound, double tol, double uncertainty) {
  RationalityVerdict v;
  v.denominator_bound = bound;
  v.tolerance = tol;
  v.residual = std::numeric_limits<double>::infinity();
  if (!std::isfinite(x)) {
    v.reason = "value is not finite";
    return v;
  }
  if (uncertainty >= 0.5 / static_cast<double>(bound)) {
    std::ostringstream msg;
    msg << "input uncertainty " << uncertainty << " exceeds 1/(2Q); every value is within reach of some p/q";
    v.reason = msg.str();
    return v;
  }
  for (const Convergent& c : convergents(x, bound)) {
    const double residual = std::fabs(static_cast<double>(c.q) * x - static_cast<double>(c.p));
    if (residual <= tol + static_cast<double>(c.q) * uncertainty) {
      v.kind = Rationality::rational;
      v.p = c.p;
      v.q = c.q;
      v.residual = residual;
      v.reason = "integer relation found";
      return v;
    }
    v.residual = std::min(v.residual, residual);
  }
  v.kind = Rationality::irrational;
  std::ostringstream msg;
  msg << "no p/q with q <= " << bound << " and |q x - p| <= " << tol;
  v.reason = msg.str();
  return v;
}

}  // namespace cartan
