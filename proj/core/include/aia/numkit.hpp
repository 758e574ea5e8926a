#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace aia {

using cplx = std::complex<double>;

// Small fixed-size containers used throughout. A 2x2 complex matrix holds a
// two-level Hamiltonian, 4x4 complex the Choi matrix of a qubit channel.
using Vec2c = Eigen::Vector2cd;
using Mat2c = Eigen::Matrix2cd;
using Vec4d = Eigen::Vector4d;
using Vec4c = Eigen::Vector4cd;
using Mat4d = Eigen::Matrix4d;
using Mat4c = Eigen::Matrix4cd;

class IntegrationError : public std::runtime_error {
public:
    IntegrationError(const std::string& what, double t)
        : std::runtime_error(what + " at t=" + std::to_string(t)), time(t) {}
    double time;
};

struct OdeOptions {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double initial_step = 0.0; // 0 selects a step automatically
    long max_steps = 200'000'000;
};

namespace detail {

inline double abs_entry(double v) { return std::abs(v); }
inline double abs_entry(const cplx& v) { return std::abs(v); }

template <class Vec>
double error_norm(const Vec& err, const Vec& y0, const Vec& y1, double rtol, double atol)
{
    double acc = 0.0;
    for (Eigen::Index i = 0; i < err.size(); ++i) {
        const double sc = atol + rtol * std::max(abs_entry(y0[i]), abs_entry(y1[i]));
        const double r = abs_entry(err[i]) / sc;
        acc += r * r;
    }
    return std::sqrt(acc / static_cast<double>(err.size()));
}

} // namespace detail

// Dormand-Prince 5(4) with FSAL and a PI step controller. Vec is any Eigen
// column vector (real or complex, fixed or dynamic size); rhs(t, y) -> Vec.
template <class Y, class Rhs>
typename Y::PlainObject integrate_ode(Rhs&& rhs, const Eigen::MatrixBase<Y>& y0, double t0, double t1,
                                      const OdeOptions& opt = {})
{
    using Vec = typename Y::PlainObject;
    Vec y = y0;
    if (!(t1 >= t0))
        throw std::invalid_argument("integrate_ode: t1 < t0");
    if (!(opt.rel_tol > 0.0) || !(opt.abs_tol > 0.0))
        throw std::invalid_argument("integrate_ode: tolerances must be positive");
    if (t1 == t0)
        return y;

    constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    constexpr double a21 = 1.0 / 5;
    constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                     a54 = -212.0 / 729;
    constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                     a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                     b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    // b - b*, the embedded fourth-order weights subtracted
    constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                     e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    const double span = t1 - t0;
    double t = t0;
    Vec k1 = rhs(t, y);

    double h = opt.initial_step;
    if (h <= 0.0) {
        // Hairer-Norsett-Wanner starting step
        const double d0 = detail::error_norm(y, y, y, opt.rel_tol, opt.abs_tol);
        const double d1 = detail::error_norm(k1, y, y, opt.rel_tol, opt.abs_tol);
        double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
        h0 = std::min(h0, span);
        Vec y1 = y + h0 * k1;
        Vec k2 = rhs(t + h0, y1);
        Vec diff = k2 - k1;
        const double d2 = detail::error_norm(diff, y, y, opt.rel_tol, opt.abs_tol) / h0;
        const double h1 = (std::max(d1, d2) <= 1e-15) ? std::max(1e-6, h0 * 1e-3)
                                                       : std::pow(0.01 / std::max(d1, d2), 0.2);
        h = std::min(100.0 * h0, h1);
    }
    h = std::min(h, span);

    double err_prev = 1e-4;
    bool rejected = false;
    long steps = 0;
    while (t < t1) {
        if (++steps > opt.max_steps)
            throw IntegrationError("integrate_ode: step budget exhausted", t);
        if (t + h > t1 || t1 - (t + h) < 1e-12 * span)
            h = t1 - t;
        if (h < 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t)))
            throw IntegrationError("integrate_ode: step size underflow", t);

        Vec k2 = rhs(t + c2 * h, Vec(y + h * (a21 * k1)));
        Vec k3 = rhs(t + c3 * h, Vec(y + h * (a31 * k1 + a32 * k2)));
        Vec k4 = rhs(t + c4 * h, Vec(y + h * (a41 * k1 + a42 * k2 + a43 * k3)));
        Vec k5 = rhs(t + c5 * h, Vec(y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4)));
        Vec k6 = rhs(t + h, Vec(y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5)));
        Vec y_new = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        Vec k7 = rhs(t + h, y_new);
        Vec err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

        const double en = detail::error_norm(err, y, y_new, opt.rel_tol, opt.abs_tol);
        if (!std::isfinite(en))
            throw IntegrationError("integrate_ode: non-finite right-hand side", t);

        if (en <= 1.0) {
            t = (h == t1 - t) ? t1 : t + h;
            y = std::move(y_new);
            k1 = std::move(k7);
            // PI controller (Gustafsson), exponents 0.7/5 and 0.4/5
            double fac = 0.9 * std::pow(std::max(en, 1e-10), -0.14) * std::pow(err_prev, 0.08);
            fac = std::clamp(fac, 0.2, 5.0);
            if (rejected)
                fac = std::min(fac, 1.0);
            h *= fac;
            err_prev = std::max(en, 1e-4);
            rejected = false;
        } else {
            h *= std::max(0.2, 0.9 * std::pow(en, -0.2));
            rejected = true;
        }
    }
    return y;
}

// Brent's method; falls back to bisection whenever interpolation misbehaves.
double find_root_bracketed(const std::function<double(double)>& g, double a, double b,
                           double tol = 1e-14);

struct MinResult {
    double x;
    double fx;
};

// Grid scan with n_scan points, then golden-section refinement around the best
// grid point. Never returns something worse than the best scanned value.
MinResult minimize_scalar(const std::function<double(double)>& f, double a, double b,
                          double tol = 1e-10, int n_scan = 201);

struct FitResult {
    double amplitude;
    double exponent;
    double residual; // RMS of log residuals
};

FitResult fit_power_law(const std::vector<std::pair<double, double>>& points);

double complete_elliptic_e(double m);

// Adaptive Gauss-Kronrod (7/15) with a global error estimate.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double abs_tol = 1e-13, double rel_tol = 1e-13, int max_intervals = 4000);

struct HermitianEig {
    Eigen::VectorXd values;  // ascending
    Eigen::MatrixXcd vectors; // orthonormal columns
};

// Cyclic complex Jacobi. Intended for dimension <= 4.
HermitianEig eig_hermitian(const Eigen::MatrixXcd& m);

} // namespace aia
