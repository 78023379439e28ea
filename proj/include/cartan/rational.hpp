#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cartan {

enum class Rationality { rational, irrational, undecided };

std::string to_string(Rationality r);

struct RationalityVerdict {
  Rationality kind = Rationality::undecided;
  std::int64_t p = 0;  // set when kind == rational
  std::int64_t q = 0;
  /// |q x - p| of the reported (rational) or best (otherwise) convergent.
  double residual = 0.0;
  std::int64_t denominator_bound = 0;
  double tolerance = 0.0;
  std::string reason;
};

struct Convergent {
  std::int64_t p;
  std::int64_t q;
};

/// Continued-fraction convergents of x with denominators <= bound.
std::vector<Convergent> convergents(double x, std::int64_t bound);

/// Decide whether x = p/q with q <= bound, using the integer-relation residual
/// |q x - p| <= tol + q * uncertainty. Convergents are the best approximations
/// of this kind, so scanning them is exhaustive. The verdict is undecided when
/// `uncertainty` >= 1/(2 bound): every real is that close to some p/q.
RationalityVerdict test_rationality(double x, std::int64_t bound = 1'000'000, double tol = 1e-12,
                                    double uncertainty = 0.0);

}  // namespace cartan
