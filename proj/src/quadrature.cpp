#include "uw/quadrature.hpp"

#include <array>
#include <cmath>
#include <queue>
#include <vector>

namespace uw {
namespace {

constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b, value, error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gk15(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double kron = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    const double s = f(c - dx) + f(c + dx);
    kron += kWgk[j] * s;
    if (j % 2 == 1) gauss += kWg[j / 2] * s;
  }
  return {a, b, kron * h, std::abs((kron - gauss) * h)};
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureOptions& opts) {
  QuadratureResult res;
  if (a == b) {
    res.converged = true;
    return res;
  }
  std::priority_queue<Panel> panels;
  Panel first = gk15(f, a, b);
  double total = first.value, err = first.error;
  panels.push(first);
  res.panels = 1;
  while (err > std::max(opts.abs_tol, opts.rel_tol * std::abs(total)) &&
         res.panels < opts.max_panels) {
    Panel p = panels.top();
    panels.pop();
    const double m = 0.5 * (p.a + p.b);
    if (!(m > p.a && m < p.b)) {  // interval can no longer be split
      panels.push(p);
      break;
    }
    Panel l = gk15(f, p.a, m), r = gk15(f, m, p.b);
    total += l.value + r.value - p.value;
    err += l.error + r.error - p.error;
    panels.push(l);
    panels.push(r);
    ++res.panels;
  }
  // Re-sum to shed accumulated cancellation from the running updates.
  total = 0;
  err = 0;
  while (!panels.empty()) {
    total += panels.top().value;
    err += panels.top().error;
    panels.pop();
  }
  res.value = total;
  res.error = err;
  res.converged = err <= std::max(opts.abs_tol, opts.rel_tol * std::abs(total));
  return res;
}

}  // namespace uw
