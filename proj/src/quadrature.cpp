#include "cartan/quadrature.hpp"

#include <array>
#include <queue>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace cartan {
namespace {

/// Full 15-point Kronrod rule on [-1, 1] with the embedded 7-point Gauss weights
/// (zero at the Kronrod-only nodes).
struct Rule {
  std::array<double, 15> x{};
  std::array<double, 15> wk{};
  std::array<double, 15> wg{};
};

const Rule& rule() {
  static const Rule r = [] {
    using boost::math::quadrature::gauss;
    using boost::math::quadrature::gauss_kronrod;
    const auto& kx = gauss_kronrod<double, 15>::abscissa();
    const auto& kw = gauss_kronrod<double, 15>::weights();
    const auto& gw = gauss<double, 7>::weights();
    Rule out;
    // Kronrod abscissae are listed from 0 outwards; even positions are Gauss nodes.
    for (std::size_t i = 0; i < kx.size(); ++i) {
      const double g = i % 2 == 0 ? gw[i / 2] : 0.0;
      out.x[7 + i] = kx[i];
      out.wk[7 + i] = kw[i];
      out.wg[7 + i] = g;
      out.x[7 - i] = -kx[i];
      out.wk[7 - i] = kw[i];
      out.wg[7 - i] = g;
    }
    return out;
  }();
  return r;
}

struct Cell1 {
  double a, b;
  Vector k, g;
  double err;
  bool operator<(const Cell1& o) const { return err < o.err; }
};

Cell1 eval1(const Integrand1D& f, double a, double b, int& evals) {
  const Rule& r = rule();
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  Cell1 cell{a, b, {}, {}, 0.0};
  for (int i = 0; i < 15; ++i) {
    const Vector y = f(c + h * r.x[i]);
    if (i == 0) {
      cell.k = Vector::Zero(y.size());
      cell.g = Vector::Zero(y.size());
    }
    cell.k += h * r.wk[i] * y;
    cell.g += h * r.wg[i] * y;
  }
  evals += 15;
  cell.err = (cell.k - cell.g).norm();
  return cell;
}

struct Cell2 {
  double s0, s1, t0, t1;
  Vector k;
  double err;
  double err_s;  // Kronrod/Gauss gap with Gauss applied in s only
  double err_t;
  bool operator<(const Cell2& o) const { return err < o.err; }
};

Cell2 eval2(const Integrand2D& f, double s0, double s1, double t0, double t1, int& evals) {
  const Rule& r = rule();
  const double cs = 0.5 * (s0 + s1), hs = 0.5 * (s1 - s0);
  const double ct = 0.5 * (t0 + t1), ht = 0.5 * (t1 - t0);
  Cell2 cell{s0, s1, t0, t1, {}, 0.0, 0.0, 0.0};
  Vector kk, gk, kg, gg;
  for (int i = 0; i < 15; ++i) {
    for (int j = 0; j < 15; ++j) {
      const Vector y = f(cs + hs * r.x[i], ct + ht * r.x[j]);
      if (i == 0 && j == 0) {
        kk = gk = kg = gg = Vector::Zero(y.size());
      }
      const double a = hs * ht;
      kk += a * r.wk[i] * r.wk[j] * y;
      if (r.wg[i] != 0.0) gk += a * r.wg[i] * r.wk[j] * y;
      if (r.wg[j] != 0.0) kg += a * r.wk[i] * r.wg[j] * y;
      if (r.wg[i] != 0.0 && r.wg[j] != 0.0) gg += a * r.wg[i] * r.wg[j] * y;
    }
  }
  evals += 225;
  cell.k = kk;
  cell.err_s = (kk - gk).norm();
  cell.err_t = (kk - kg).norm();
  cell.err = std::max((kk - gg).norm(), cell.err_s + cell.err_t);
  return cell;
}

template <class Cell>
bool done(const Vector& total, double err, const QuadOptions& opts) {
  return err <= std::max(opts.abs_tol, opts.rel_tol * total.norm());
}

}  // namespace

QuadResult integrate_1d(const Integrand1D& f, double a, double b, const QuadOptions& opts) {
  QuadResult res;
  std::priority_queue<Cell1> heap;
  heap.push(eval1(f, a, b, res.evaluations));
  Vector total = heap.top().k;
  double err = heap.top().err;
  while (!done<Cell1>(total, err, opts) && static_cast<int>(heap.size()) < opts.max_cells) {
    Cell1 worst = heap.top();
    heap.pop();
    const double m = 0.5 * (worst.a + worst.b);
    Cell1 left = eval1(f, worst.a, m, res.evaluations);
    Cell1 right = eval1(f, m, worst.b, res.evaluations);
    total += left.k + right.k - worst.k;
    err += left.err + right.err - worst.err;
    heap.push(std::move(left));
    heap.push(std::move(right));
  }
  res.converged = done<Cell1>(total, err, opts);
  // Re-sum to shed accumulated update error.
  res.value = Vector::Zero(total.size());
  res.error = 0.0;
  res.cells = static_cast<int>(heap.size());
  while (!heap.empty()) {
    res.value += heap.top().k;
    res.error += heap.top().err;
    heap.pop();
  }
  return res;
}

QuadResult integrate_2d(const Integrand2D& f, double s0, double s1, double t0, double t1,
                        const QuadOptions& opts) {
  QuadResult res;
  std::priority_queue<Cell2> heap;
  heap.push(eval2(f, s0, s1, t0, t1, res.evaluations));
  Vector total = heap.top().k;
  double err = heap.top().err;
  while (!done<Cell2>(total, err, opts) && static_cast<int>(heap.size()) < opts.max_cells) {
    Cell2 worst = heap.top();
    heap.pop();
    std::vector<Cell2> kids;
    if (worst.err_s >= worst.err_t) {
      const double m = 0.5 * (worst.s0 + worst.s1);
      kids.push_back(eval2(f, worst.s0, m, worst.t0, worst.t1, res.evaluations));
      kids.push_back(eval2(f, m, worst.s1, worst.t0, worst.t1, res.evaluations));
    } else {
      const double m = 0.5 * (worst.t0 + worst.t1);
      kids.push_back(eval2(f, worst.s0, worst.s1, worst.t0, m, res.evaluations));
      kids.push_back(eval2(f, worst.s0, worst.s1, m, worst.t1, res.evaluations));
    }
    total -= worst.k;
    err -= worst.err;
    for (Cell2& k : kids) {
      total += k.k;
      err += k.err;
      heap.push(std::move(k));
    }
  }
  res.converged = done<Cell2>(total, err, opts);
  res.value = Vector::Zero(total.size());
  res.error = 0.0;
  res.cells = static_cast<int>(heap.size());
  while (!heap.empty()) {
    res.value += heap.top().k;
    res.error += heap.top().err;
    heap.pop();
  }
  return res;
}

}  // namespace cartan
