// Test-only adaptive Simpson oracle, independent of the closed forms in the
// library. Shared by the unit and acceptance suites.
#pragma once

#include <cmath>
#include <functional>

namespace tailboot_test {

inline double simpson_rule(double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline double adaptive_step(const std::function<double(double)>& f, double a, double b,
                            double fa, double fm, double fb, double whole, double eps,
                            int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson_rule(a, m, fa, flm, fm);
    const double right = simpson_rule(m, b, fm, frm, fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * eps) {
        return left + right + delta / 15.0;
    }
    return adaptive_step(f, a, m, fa, flm, fm, left, 0.5 * eps, depth - 1) +
           adaptive_step(f, m, b, fm, frm, fb, right, 0.5 * eps, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double eps = 1e-14) {
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(0.5 * (a + b));
    const double whole = simpson_rule(a, b, fa, fm, fb);
    return adaptive_step(f, a, b, fa, fm, fb, whole,
                         std::max(eps, std::abs(whole) * 1e-13), 60);
}

/// Quadrature value of q_gamma(t) = int_1^t s^(gamma-1) log s ds.
inline double q_oracle(double gamma, double t) {
    if (t == 1.0) return 0.0;
    return integrate([gamma](double s) { return std::pow(s, gamma - 1.0) * std::log(s); },
                     1.0, t);
}

}  // namespace tailboot_test
