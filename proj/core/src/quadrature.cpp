#include "warpcheck/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "warpcheck/errors.hpp"

namespace warpcheck {

namespace {

struct Simpson {
  const ScalarFn& f;
  int max_depth;
  double rel_floor;
  bool failed = false;

  double recurse(double a, double b, double fa, double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    if (!std::isfinite(flm) || !std::isfinite(frm)) {
      failed = true;
      return 0.0;
    }
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    // The absolute target is relaxed to the rounding floor of the panel so
    // that large integrals terminate.
    const double target = std::max(tol, rel_floor * std::abs(left + right));
    if (std::abs(delta) <= 15.0 * target) return left + right + delta / 15.0;
    if (depth >= max_depth) {
      failed = true;
      return left + right + delta / 15.0;
    }
    return recurse(a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
           recurse(m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
  }
};

}  // namespace

double integrate(const ScalarFn& f, double a, double b, const QuadratureOptions& opts) {
  if (a == b) return 0.0;
  const double fa = f(a);
  const double fb = f(b);
  const double m = 0.5 * (a + b);
  const double fm = f(m);
  if (!std::isfinite(fa) || !std::isfinite(fb) || !std::isfinite(fm)) {
    throw SingularError("integrate: integrand is not finite on the interval");
  }
  Simpson s{f, opts.max_depth, opts.rel_floor};
  // Split once into 8 panels so that narrow features are not missed by the
  // first Simpson estimate.
  constexpr int kPanels = 8;
  const double width = (b - a) / kPanels;
  double total = 0.0;
  for (int i = 0; i < kPanels; ++i) {
    const double lo = a + width * i;
    const double hi = (i + 1 == kPanels) ? b : a + width * (i + 1);
    const double flo = (i == 0) ? fa : f(lo);
    const double fhi = (i + 1 == kPanels) ? fb : f(hi);
    const double fmid = f(0.5 * (lo + hi));
    const double whole = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
    total += s.recurse(lo, hi, flo, fmid, fhi, whole, opts.abs_tol / kPanels, 0);
  }
  if (s.failed) {
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os << "integrate: no convergence on [" << a << ", " << b << "]";
    throw SingularError(os.str());
  }
  return total;
}

}  // namespace warpcheck
