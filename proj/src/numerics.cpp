#include "klab/numerics.hpp"

#include <algorithm>
#include <cmath>

namespace klab {

std::vector<std::vector<double>> fd_weights(double x0, std::span<const double> x, int max_order) {
    const int n = static_cast<int>(x.size());
    const int m = max_order;
    std::vector<std::vector<double>> c(n, std::vector<double>(m + 1, 0.0));
    double c1 = 1.0;
    double c4 = x[0] - x0;
    c[0][0] = 1.0;
    for (int i = 1; i < n; ++i) {
        const int mn = std::min(i, m);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = x[i] - x0;
        for (int j = 0; j < i; ++j) {
            const double c3 = x[i] - x[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k)
                    c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for (int k = mn; k >= 1; --k)
                c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    // transpose to w[k][j]
    std::vector<std::vector<double>> w(m + 1, std::vector<double>(n, 0.0));
    for (int j = 0; j < n; ++j)
        for (int k = 0; k <= m; ++k)
            w[k][j] = c[j][k];
    return w;
}

std::vector<double> fd_derivative(std::span<const double> grid, std::span<const double> F) {
    const std::size_t n = grid.size();
    if (F.size() != n)
        throw DomainError("fd_derivative: grid/value length mismatch");
    if (n < 5)
        throw GridTooCoarseError("fd_derivative: need at least 5 grid points, got " + std::to_string(n));

    std::vector<double> dF(n, 0.0);
    auto apply = [&](std::size_t at, std::size_t lo, std::size_t count) {
        std::span<const double> nodes = grid.subspan(lo, count);
        const auto w = fd_weights(grid[at], nodes, 1);
        double acc = 0.0;
        for (std::size_t j = 0; j < count; ++j)
            acc += w[1][j] * F[lo + j];
        dF[at] = acc;
    };

    apply(0, 0, 3);
    apply(n - 1, n - 3, 3);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const std::size_t lo = (i < 2) ? 0 : std::min(i - 2, n - 5);
        apply(i, lo, 5);
    }
    return dF;
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    if (n < 2 || y.size() != n)
        throw DomainError("fit_line: need >= 2 points and matching lengths");
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0.0)
        throw DomainError("fit_line: degenerate abscissae");
    LineFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    if (n > 2) {
        double rss = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const double e = y[i] - (fit.intercept + fit.slope * x[i]);
            rss += e * e;
        }
        fit.slope_stderr = std::sqrt(rss / static_cast<double>(n - 2) / sxx);
    }
    return fit;
}

Minimum golden_section_min(const std::function<double(double)>& f, double a, double b,
                           double rel_tol) {
    if (!(b > a))
        throw DomainError("golden_section_min: empty interval");
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    const double scale = std::max(std::abs(a), std::abs(b));
    for (int it = 0; it < 200 && (b - a) > rel_tol * scale; ++it) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = f(x2);
        }
    }
    const double xm = 0.5 * (a + b);
    return {xm, f(xm)};
}

} // namespace klab
