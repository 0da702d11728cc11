#pragma once

// Adaptive Simpson quadrature with absolute-error control and optional
// breakpoint splitting for piecewise-smooth integrands.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ebsim::quad {

struct Result {
    double value = 0.0;
    double error_estimate = 0.0;  // accumulated panel error bound
    std::size_t evaluations = 0;
};

class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& msg, double achieved)
        : std::runtime_error(msg + " (achieved error estimate " + std::to_string(achieved) + ")"),
          achieved_(achieved) {}

    double achieved_error() const { return achieved_; }

private:
    double achieved_;
};

namespace detail {

// forced > 0 keeps subdividing even when the error estimate looks small:
// periodic integrands can be constant on the first few stencils (samples on
// a pi/2 lattice alias the trig harmonics), which would fool the Richardson
// acceptance test.
template <class F>
void adapt(F& f, double a, double b, double fa, double fm, double fb, double whole,
           double tol, int depth, int forced, Result& out, bool& converged) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    out.evaluations += 2;
    const double h12 = (b - a) / 12.0;
    const double left = h12 * (fa + 4.0 * flm + fm);
    const double right = h12 * (fm + 4.0 * frm + fb);
    const double err = (left + right - whole) / 15.0;
    const bool splittable = m > a && m < b;
    if ((forced <= 0 && std::abs(err) <= tol) || !splittable || depth <= 0) {
        out.value += left + right + err;
        out.error_estimate += std::abs(err);
        if (std::abs(err) > tol) converged = false;
        return;
    }
    adapt(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, forced - 1, out, converged);
    adapt(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, forced - 1, out, converged);
}

template <class F>
std::pair<Result, bool> run(F& f, double a, double b, double abs_tol, int max_depth,
                            int forced_levels = 4) {
    Result out;
    bool converged = true;
    if (a == b) return {out, converged};
    const double m = 0.5 * (a + b);
    const double fa = f(a);
    const double fm = f(m);
    const double fb = f(b);
    out.evaluations = 3;
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    adapt(f, a, b, fa, fm, fb, whole, abs_tol, max_depth, forced_levels, out, converged);
    return {out, converged};
}

}  // namespace detail

// Integrates f over [a, b] to the requested absolute tolerance. Throws
// QuadratureError if the recursion bottoms out before the tolerance is met.
template <class F>
Result integrate(F&& f, double a, double b, double abs_tol, int max_depth = 48) {
    auto [out, converged] = detail::run(f, a, b, abs_tol, max_depth);
    if (!converged) {
        throw QuadratureError("quadrature did not converge to tolerance " + std::to_string(abs_tol),
                              out.error_estimate);
    }
    return out;
}

// Same, but splits [a, b] at the given breakpoints first. Use for integrands
// with kinks at known locations; the tolerance is divided among panels in
// proportion to their width.
template <class F>
Result integrate(F&& f, double a, double b, const std::vector<double>& breakpoints, double abs_tol,
                 int max_depth = 48) {
    std::vector<double> edges;
    edges.reserve(breakpoints.size() + 2);
    edges.push_back(a);
    for (double p : breakpoints) {
        if (p > a && p < b) edges.push_back(p);
    }
    edges.push_back(b);
    std::sort(edges.begin(), edges.end());

    Result total;
    bool converged = true;
    const double width = b - a;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        const double lo = edges[i];
        const double hi = edges[i + 1];
        if (lo == hi) continue;
        const double panel_tol = abs_tol * ((hi - lo) / width);
        auto [res, ok] = detail::run(f, lo, hi, panel_tol, max_depth);
        total.value += res.value;
        total.error_estimate += res.error_estimate;
        total.evaluations += res.evaluations;
        converged = converged && ok;
    }
    if (!converged) {
        throw QuadratureError("quadrature did not converge to tolerance " + std::to_string(abs_tol),
                              total.error_estimate);
    }
    return total;
}

}  // namespace ebsim::quad
