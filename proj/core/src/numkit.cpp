#include "aia/numkit.hpp"

#include <array>
#include <numbers>
#include <queue>

namespace aia {

double find_root_bracketed(const std::function<double(double)>& g, double a, double b, double tol)
{
    double fa = g(a), fb = g(b);
    if (fa == 0.0)
        return a;
    if (fb == 0.0)
        return b;
    if (fa * fb > 0.0)
        throw std::domain_error("find_root_bracketed: no sign change in bracket");

    double c = a, fc = fa;
    double d = b - a, e = d;
    for (int iter = 0; iter < 500; ++iter) {
        if (fb * fc > 0.0) {
            c = a;
            fc = fa;
            d = e = b - a;
        }
        if (std::abs(fc) < std::abs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        const double tol1 = 2.0 * std::numeric_limits<double>::epsilon() * std::abs(b) + 0.5 * tol;
        const double xm = 0.5 * (c - b);
        if (std::abs(xm) <= tol1 || fb == 0.0)
            return b;
        if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
            double p, q;
            const double s = fb / fa;
            if (a == c) {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                const double qq = fa / fc, r = fb / fc;
                p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0)
                q = -q;
            p = std::abs(p);
            if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol1 * q), std::abs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += (std::abs(d) > tol1) ? d : std::copysign(tol1, xm);
        fb = g(b);
    }
    return b;
}

MinResult minimize_scalar(const std::function<double(double)>& f, double a, double b, double tol,
                          int n_scan)
{
    if (!(a < b))
        throw std::invalid_argument("minimize_scalar: need a < b");
    n_scan = std::max(n_scan, 3);
    const double step = (b - a) / (n_scan - 1);
    int best = 0;
    double fbest = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n_scan; ++i) {
        const double fx = f(a + i * step);
        if (!std::isfinite(fx))
            throw std::domain_error("minimize_scalar: non-finite objective");
        if (fx < fbest) {
            fbest = fx;
            best = i;
        }
    }
    const double xbest = (best == n_scan - 1) ? b : a + best * step;

    double lo = a + std::max(best - 1, 0) * step;
    double hi = std::min(b, a + std::min(best + 1, n_scan - 1) * step);
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = f(x1), f2 = f(x2);
    while (hi - lo > tol * (1.0 + std::abs(lo) + std::abs(hi))) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1; f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2; f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = f(x2);
        }
    }
    MinResult r = f1 < f2 ? MinResult{x1, f1} : MinResult{x2, f2};
    if (fbest <= r.fx)
        r = {xbest, fbest};
    return r;
}

FitResult fit_power_law(const std::vector<std::pair<double, double>>& points)
{
    if (points.size() < 3)
        throw std::invalid_argument("fit_power_law: need at least 3 points");
    const double n = static_cast<double>(points.size());
    double sx = 0, sy = 0;
    for (const auto& [t, d] : points) {
        if (!(t > 0.0) || !(d > 0.0))
            throw std::invalid_argument("fit_power_law: values must be positive");
        sx += std::log(t);
        sy += std::log(d);
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0;
    for (const auto& [t, d] : points) {
        const double u = std::log(t) - mx;
        sxx += u * u;
        sxy += u * (std::log(d) - my);
    }
    if (sxx == 0.0)
        throw std::invalid_argument("fit_power_law: abscissae must not all coincide");
    const double slope = sxy / sxx;
    const double icpt = my - slope * mx;
    double ss = 0;
    for (const auto& [t, d] : points) {
        const double r = std::log(d) - (icpt + slope * std::log(t));
        ss += r * r;
    }
    return {std::exp(icpt), slope, std::sqrt(ss / n)};
}

double complete_elliptic_e(double m)
{
    if (!(m >= 0.0 && m <= 1.0))
        throw std::domain_error("complete_elliptic_e: m outside [0,1]");
    if (m == 1.0)
        return 1.0;
    // AGM: K = pi/(2 agm(1, sqrt(1-m))), E = K (1 - sum 2^(n-1) c_n^2), c_0^2 = m
    double a = 1.0, b = std::sqrt(1.0 - m);
    double sum = 0.5 * m, pow2 = 0.5;
    for (int i = 0; i < 60 && std::abs(a - b) > 1e-17 * a; ++i) {
        const double an = 0.5 * (a + b);
        const double c = 0.5 * (a - b);
        b = std::sqrt(a * b);
        a = an;
        pow2 *= 2.0;
        sum += pow2 * c * c;
    }
    return std::numbers::pi / (2.0 * a) * (1.0 - sum);
}

namespace {

constexpr std::array<double, 8> kXk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWk = {
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

Panel gk15(const std::function<double(double)>& f, double a, double b)
{
    const double c = 0.5 * (a + b), hl = 0.5 * (b - a);
    const double fc = f(c);
    double k = fc * kWk[7], g = fc * kWg[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = hl * kXk[j];
        const double s = f(c - dx) + f(c + dx);
        k += kWk[j] * s;
        if (j % 2 == 1)
            g += kWg[j / 2] * s;
    }
    return {a, b, k * hl, std::abs((k - g) * hl)};
}

} // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double abs_tol, double rel_tol, int max_intervals)
{
    if (a == b)
        return 0.0;
    const double sign = b > a ? 1.0 : -1.0;
    if (b < a)
        std::swap(a, b);
    std::priority_queue<Panel> heap;
    Panel p = gk15(f, a, b);
    double total = p.value, err = p.error;
    heap.push(p);
    while (err > std::max(abs_tol, rel_tol * std::abs(total)) &&
           static_cast<int>(heap.size()) < max_intervals) {
        Panel w = heap.top();
        heap.pop();
        const double mid = 0.5 * (w.a + w.b);
        Panel l = gk15(f, w.a, mid), r = gk15(f, mid, w.b);
        total += l.value + r.value - w.value;
        err += l.error + r.error - w.error;
        heap.push(l);
        heap.push(r);
    }
    // re-sum to shed accumulated update rounding
    total = 0.0;
    while (!heap.empty()) {
        total += heap.top().value;
        heap.pop();
    }
    return sign * total;
}

HermitianEig eig_hermitian(const Eigen::MatrixXcd& m)
{
    const Eigen::Index n = m.rows();
    if (n != m.cols() || n == 0)
        throw std::invalid_argument("eig_hermitian: matrix must be square");
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw std::invalid_argument("eig_hermitian: matrix is not Hermitian");

    Eigen::MatrixXcd a = 0.5 * (m + m.adjoint());
    Eigen::MatrixXcd v = Eigen::MatrixXcd::Identity(n, n);
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (Eigen::Index p = 0; p < n; ++p)
            for (Eigen::Index q = p + 1; q < n; ++q)
                off += std::norm(a(p, q));
        if (off <= 1e-34 * a.squaredNorm())
            break;
        for (Eigen::Index p = 0; p < n; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                const double apq = std::abs(a(p, q));
                if (apq == 0.0)
                    continue;
                const cplx phase = a(p, q) / apq;
                const double theta = (a(q, q).real() - a(p, p).real()) / (2.0 * apq);
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
                // U = diag(1, conj(phase)) on (p,q) followed by a real rotation
                Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(n, n);
                u(p, p) = c;
                u(p, q) = s;
                u(q, p) = -s * std::conj(phase);
                u(q, q) = c * std::conj(phase);
                a = u.adjoint() * a * u;
                a(p, q) = a(q, p) = 0.0;
                v = v * u;
            }
        }
    }

    std::vector<Eigen::Index> idx(n);
    for (Eigen::Index i = 0; i < n; ++i)
        idx[i] = i;
    std::sort(idx.begin(), idx.end(),
              [&](Eigen::Index i, Eigen::Index j) { return a(i, i).real() < a(j, j).real(); });
    HermitianEig out{Eigen::VectorXd(n), Eigen::MatrixXcd(n, n)};
    for (Eigen::Index i = 0; i < n; ++i) {
        out.values[i] = a(idx[i], idx[i]).real();
        out.vectors.col(i) = v.col(idx[i]);
    }
    return out;
}

} // namespace aia
