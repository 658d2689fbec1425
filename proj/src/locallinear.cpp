#include "tvacov/locallinear.hpp"

#include "tvacov/errors.hpp"
#include "tvacov/parallel.hpp"
#include "tvacov/summation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace tvacov {

namespace {

constexpr double kSingularTolerance = 1e-14;

struct Window {
    std::size_t first;
    std::size_t last;  // inclusive
};

// Indices i (0-based) whose design point (i+1)/n lies within [t - b, t + b].
Window window_for(std::size_t n, double t, double b) {
    const double nd = static_cast<double>(n);
    const double lo = std::ceil(nd * (t - b) - 1e-9) - 1.0;
    const double hi = std::floor(nd * (t + b) + 1e-9) - 1.0;
    const double first = std::max(lo, 0.0);
    const double last = std::min(hi, nd - 1.0);
    if (last < first) return {1, 0};
    return {static_cast<std::size_t>(first), static_cast<std::size_t>(last)};
}

[[noreturn]] void throw_singular(double t, double b, double det) {
    std::ostringstream os;
    os << "singular local-linear design at t=" << t << " (b=" << b << ", det=" << det << ")";
    throw SingularDesignError(os.str(), t);
}

void check_grid_point(double t) {
    if (!(t >= 0.0 && t <= 1.0)) {
        std::ostringstream os;
        os << "evaluation point " << t << " outside [0, 1]";
        throw ConfigError(os.str());
    }
}

// Normalized moment sums Q_l = (nb)^-1 sum u^l K(u) and the matching data sums R_l.
struct LocalSums {
    double q0, q1, q2;
    double r0, r1;
};

LocalSums local_sums(std::span<const double> data, double t, double b, const Kernel& kernel) {
    const std::size_t n = data.size();
    const Window win = window_for(n, t, b);
    double q0 = 0.0, q1 = 0.0, q2 = 0.0, r0 = 0.0, r1 = 0.0;
    for (std::size_t i = win.first; i <= win.last && win.first <= win.last; ++i) {
        const double u = (design_point(i, n) - t) / b;
        const double k = kernel(u);
        const double ku = k * u;
        q0 += k;
        q1 += ku;
        q2 += ku * u;
        r0 += k * data[i];
        r1 += ku * data[i];
    }
    const double scale = 1.0 / (static_cast<double>(n) * b);
    return {q0 * scale, q1 * scale, q2 * scale, r0 * scale, r1 * scale};
}

// On the design points themselves the kernel weights depend only on the
// offset d = j - i, so they are tabulated once per bandwidth.
struct OffsetTable {
    std::size_t n;
    std::size_t reach;  // offsets |d| <= reach
    double nb;
    std::vector<double> k, ku, kuu;  // indexed by d + reach
    double full_q0, full_q1, full_q2;

    OffsetTable(std::size_t n_, double b, const Kernel& kernel) : n(n_), nb(static_cast<double>(n_) * b) {
        reach = static_cast<std::size_t>(std::floor(nb + 1e-9));
        const std::size_t len = 2 * reach + 1;
        k.resize(len);
        ku.resize(len);
        kuu.resize(len);
        for (std::size_t j = 0; j < len; ++j) {
            const double u = (static_cast<double>(j) - static_cast<double>(reach)) / nb;
            k[j] = kernel(u);
            ku[j] = k[j] * u;
            kuu[j] = ku[j] * u;
        }
        moments(0, len - 1, full_q0, full_q1, full_q2);
    }

    void moments(std::size_t lo, std::size_t hi, double& q0, double& q1, double& q2) const {
        q0 = q1 = q2 = 0.0;
        for (std::size_t j = lo; j <= hi; ++j) {
            q0 += k[j];
            q1 += ku[j];
            q2 += kuu[j];
        }
    }

    // Table index range [lo, hi] that stays inside the series for observation i.
    void range(std::size_t i, std::size_t& lo, std::size_t& hi) const {
        lo = i >= reach ? 0 : reach - i;
        hi = std::min(2 * reach, reach + (n - 1 - i));
    }

    void local_moments(std::size_t i, double& q0, double& q1, double& q2) const {
        std::size_t lo, hi;
        range(i, lo, hi);
        if (lo == 0 && hi == 2 * reach) {
            q0 = full_q0;
            q1 = full_q1;
            q2 = full_q2;
        } else {
            moments(lo, hi, q0, q1, q2);
        }
    }

    double checked_det(std::size_t i, double q0, double q1, double q2, double b) const {
        const double det = q0 * q2 - q1 * q1;
        if (!(det / (nb * nb) >= kSingularTolerance)) throw_singular(design_point(i, n), b, det / (nb * nb));
        return det;
    }
};

}  // namespace

void validate_bandwidth(std::size_t n, double b) {
    if (!(b > 0.0 && b < 0.5)) {
        std::ostringstream os;
        os << "bandwidth " << b << " outside (0, 1/2)";
        throw ConfigError(os.str());
    }
    if (static_cast<double>(n) * b < 4.0) {
        std::ostringstream os;
        os << "bandwidth " << b << " leaves fewer than 4 effective points for n=" << n;
        throw ConfigError(os.str());
    }
}

WeightSet local_linear_weights(std::size_t n, double t, double b, const Kernel& kernel) {
    validate_bandwidth(n, b);
    check_grid_point(t);
    const Window win = window_for(n, t, b);
    WeightSet ws{t, b, n, win.first, {}};
    if (win.first > win.last) throw_singular(t, b, 0.0);

    const std::size_t len = win.last - win.first + 1;
    std::vector<double> kv(len), uv(len);
    CompensatedSum s0, s1, s2;
    for (std::size_t j = 0; j < len; ++j) {
        const double u = (design_point(win.first + j, n) - t) / b;
        uv[j] = u;
        kv[j] = kernel(u);
        s0 += kv[j];
        s1 += kv[j] * u;
        s2 += kv[j] * u * u;
    }
    const double nb = static_cast<double>(n) * b;
    const double q0 = s0.value() / nb, q1 = s1.value() / nb, q2 = s2.value() / nb;
    const double det = q0 * q2 - q1 * q1;
    if (!(det >= kSingularTolerance)) throw_singular(t, b, det);

    ws.w.resize(len);
    for (std::size_t j = 0; j < len; ++j) {
        ws.w[j] = kv[j] * (q2 - uv[j] * q1) / (det * nb);
    }
    return ws;
}

Curve fit_curve(std::span<const double> data, double b, const Kernel& kernel,
                std::span<const double> grid, bool with_slope) {
    validate_bandwidth(data.size(), b);
    Curve out;
    out.t.assign(grid.begin(), grid.end());
    out.value.resize(grid.size());
    if (with_slope) out.slope.resize(grid.size());

    parallel_for(grid.size(), [&](std::size_t g) {
        const double t = grid[g];
        check_grid_point(t);
        const LocalSums s = local_sums(data, t, b, kernel);
        const double det = s.q0 * s.q2 - s.q1 * s.q1;
        if (!(det >= kSingularTolerance)) throw_singular(t, b, det);
        out.value[g] = (s.q2 * s.r0 - s.q1 * s.r1) / det;
        if (with_slope) out.slope[g] = (s.q0 * s.r1 - s.q1 * s.r0) / det / b;
    });
    return out;
}

std::vector<double> fitted_values(std::span<const double> data, double b, const Kernel& kernel) {
    const std::size_t n = data.size();
    validate_bandwidth(n, b);
    const OffsetTable tab(n, b, kernel);
    std::vector<double> out(n);
    parallel_for(n, [&](std::size_t i) {
        double q0, q1, q2;
        tab.local_moments(i, q0, q1, q2);
        const double det = tab.checked_det(i, q0, q1, q2, b);
        std::size_t lo, hi;
        tab.range(i, lo, hi);
        const double* x = data.data() + (i + lo - tab.reach);
        double r0 = 0.0, r1 = 0.0;
        for (std::size_t j = lo; j <= hi; ++j, ++x) {
            r0 += tab.k[j] * *x;
            r1 += tab.ku[j] * *x;
        }
        out[i] = (q2 * r0 - q1 * r1) / det;
    });
    return out;
}

double hat_trace(std::size_t n, double b, const Kernel& kernel) {
    validate_bandwidth(n, b);
    const OffsetTable tab(n, b, kernel);
    std::vector<double> diag(n);
    parallel_for(n, [&](std::size_t i) {
        double q0, q1, q2;
        tab.local_moments(i, q0, q1, q2);
        const double det = tab.checked_det(i, q0, q1, q2, b);
        // u = 0 at the diagonal entry, so omega(t_i, i) = K(0) Q2 / det.
        diag[i] = tab.k[tab.reach] * q2 / det;
    });
    CompensatedSum total;
    for (double d : diag) total += d;
    return total.value();
}

std::vector<double> evaluation_grid(std::size_t n, double b) {
    std::vector<double> grid;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = design_point(i, n);
        if (t >= b - 1e-12 && t <= 1.0 - b + 1e-12) grid.push_back(t);
    }
    return grid;
}

std::vector<double> uniform_grid(double lo, double hi, std::size_t points) {
    if (points < 2) throw ConfigError("uniform grid needs at least 2 points");
    if (!(lo < hi)) throw ConfigError("uniform grid needs lo < hi");
    std::vector<double> grid(points);
    const double step = (hi - lo) / static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i) grid[i] = lo + step * static_cast<double>(i);
    grid.back() = hi;
    return grid;
}

namespace reference {

Curve fit_curve(std::span<const double> data, double b, const Kernel& kernel,
                std::span<const double> grid) {
    Curve out;
    out.t.assign(grid.begin(), grid.end());
    out.value.reserve(grid.size());
    for (double t : grid) {
        const WeightSet ws = local_linear_weights(data.size(), t, b, kernel);
        CompensatedSum acc;
        for (std::size_t j = 0; j < ws.w.size(); ++j) acc += ws.w[j] * data[ws.first + j];
        out.value.push_back(acc.value());
    }
    return out;
}

double hat_trace(std::size_t n, double b, const Kernel& kernel) {
    CompensatedSum total;
    for (std::size_t i = 0; i < n; ++i) {
        total += local_linear_weights(n, design_point(i, n), b, kernel).weight(i);
    }
    return total.value();
}

}  // namespace reference

}  // namespace tvacov
