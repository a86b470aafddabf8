#include "densewlan/numerics.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace dw {

double one_minus_exp_over_series(double x) {
    // 1 - x/2 + x^2/6 - x^3/24
    return 1.0 + x * (-0.5 + x * (1.0 / 6.0 - x / 24.0));
}

double one_minus_exp_over_direct(double x) { return -std::expm1(-x) / x; }

double one_minus_exp_over(double x) {
    if (x == 0.0) return 1.0;
    if (std::abs(x) < 1e-8) return one_minus_exp_over_series(x);
    return one_minus_exp_over_direct(x);
}

namespace {

double simpson(double a, double fa, double b, double fb, double fm) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_step(const std::function<double(double)>& f, double a, double fa, double b,
                     double fb, double m, double fm, double whole, double tol, int depth,
                     bool& converged) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson(a, fa, m, fm, flm);
    const double right = simpson(m, fm, b, fb, frm);
    const double delta = left + right - whole;
    if (depth <= 0) {
        converged = false;
        return left + right + delta / 15.0;
    }
    if (std::abs(delta) <= 15.0 * tol) {
        return left + right + delta / 15.0;
    }
    return adaptive_step(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1, converged) +
           adaptive_step(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1, converged);
}

} // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double rel_tol, int max_depth) {
    // Scale pass: composite Simpson on a fixed grid. A 3-point estimate can
    // miss a narrow peak by many orders of magnitude, which would make the
    // absolute tolerance below unattainable.
    constexpr int kScalePanels = 256;
    const double h = (b - a) / kScalePanels;
    double scale_est = 0.0;
    std::vector<double> fg(2 * kScalePanels + 1);
    for (int i = 0; i <= 2 * kScalePanels; ++i) fg[i] = f(a + 0.5 * h * i);
    for (int i = 0; i < kScalePanels; ++i) {
        scale_est += h / 6.0 * (fg[2 * i] + 4.0 * fg[2 * i + 1] + fg[2 * i + 2]);
    }
    double scale = std::abs(scale_est);
    if (scale == 0.0) {
        for (double v : fg) scale = std::max(scale, std::abs(v) * (b - a));
    }
    if (scale == 0.0) return 0.0;

    // Refinement pass: adaptive per panel against the shared absolute budget.
    const double tol = rel_tol * scale;
    bool converged = true;
    double result = 0.0;
    for (int i = 0; i < kScalePanels; ++i) {
        const double pa = a + h * i;
        const double pb = pa + h;
        const double whole = h / 6.0 * (fg[2 * i] + 4.0 * fg[2 * i + 1] + fg[2 * i + 2]);
        result += adaptive_step(f, pa, fg[2 * i], pb, fg[2 * i + 2], 0.5 * (pa + pb),
                                fg[2 * i + 1], whole, tol / kScalePanels, max_depth, converged);
    }
    if (!converged) throw std::runtime_error("adaptive_simpson: quadrature did not converge");
    return result;
}

Derivatives differentiate(const std::function<double(double)>& f, double x) {
    const double h = std::max(1e-6 * std::abs(x), 1e-12);
    const auto central = [&](double step) {
        return (f(x + step) - f(x - step)) / (2.0 * step);
    };
    const auto second = [&](double step) {
        return (f(x + step) - 2.0 * f(x) + f(x - step)) / (step * step);
    };
    Derivatives d;
    d.grad = (4.0 * central(0.5 * h) - central(h)) / 3.0;
    d.hess = (4.0 * second(0.5 * h) - second(h)) / 3.0;
    if (!std::isfinite(d.grad) || !std::isfinite(d.hess)) {
        throw std::runtime_error("differentiate: non-finite value at stencil point");
    }
    return d;
}

double pairwise_sum(std::span<const double> xs) {
    const std::size_t n = xs.size();
    if (n == 0) return 0.0;
    if (n <= 8) {
        double s = 0.0;
        for (double x : xs) s += x;
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

MeanStderr mean_stderr(std::span<const double> xs) {
    MeanStderr out;
    out.n = xs.size();
    if (out.n == 0) return out;
    out.mean = pairwise_sum(xs) / static_cast<double>(out.n);
    if (out.n < 2) return out;
    std::vector<double> sq(out.n);
    for (std::size_t i = 0; i < out.n; ++i) {
        const double d = xs[i] - out.mean;
        sq[i] = d * d;
    }
    const double var = pairwise_sum(sq) / static_cast<double>(out.n - 1);
    out.stderr_ = std::sqrt(var / static_cast<double>(out.n));
    return out;
}

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

} // namespace dw
