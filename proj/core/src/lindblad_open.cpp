#include "aia/lindblad_open.hpp"

#include <numbers>

namespace aia {

namespace {

constexpr cplx I(0.0, 1.0);
constexpr double kPi = std::numbers::pi;
const double kSqrt2 = std::sqrt(2.0);

// S = gamma(-D) + gamma(D), A = gamma(-D) - gamma(D) at D = 2b
struct Rates {
    double b, D, S, A;
};

Rates rates(double x, double z, double beta, double g)
{
    if (x == 0.0 && z == 0.0)
        throw std::domain_error("open qubit: degenerate point x = z = 0");
    const double b = std::hypot(x, z), D = 2.0 * b;
    const double gp = spectral_gamma(D, beta, g), gm = spectral_gamma(-D, beta, g);
    return {b, D, gm + gp, gm - gp};
}

} // namespace

void OpenParams::validate() const
{
    lz().validate();
    if (!(T > 0.0))
        throw std::invalid_argument("OpenParams: T must be positive");
    if (!(g >= 0.0))
        throw std::invalid_argument("OpenParams: g must be non-negative");
}

double spectral_gamma(double w, double beta, double g)
{
    if (!(beta > 0.0))
        throw std::domain_error("spectral_gamma: beta must be positive");
    const double pref = 2.0 * kPi * g * g;
    const double bw = beta * w;
    if (std::abs(bw) < 1e-8)
        return pref / beta * (1.0 + 0.5 * bw);
    return pref * w / -std::expm1(-bw);
}

const std::array<Mat2c, 4>& pauli_basis()
{
    static const std::array<Mat2c, 4> basis = [] {
        const double n = 1.0 / std::sqrt(2.0);
        std::array<Mat2c, 4> b;
        b[0] << n, 0, 0, n;
        b[1] << 0, n, n, 0;
        b[2] << 0, -I * n, I * n, 0;
        b[3] << n, 0, 0, -n;
        return b;
    }();
    return basis;
}

Mat2c to_density(const CoherenceVector& c)
{
    const auto& g = pauli_basis();
    return c[0] * g[0] + c[1] * g[1] + c[2] * g[2] + c[3] * g[3];
}

CoherenceVector from_density(const Mat2c& rho)
{
    const auto& g = pauli_basis();
    CoherenceVector c;
    for (int i = 0; i < 4; ++i)
        c[i] = (g[i] * rho).trace().real();
    return c;
}

LindbladOps lindblad_ops(double x, double z)
{
    if (x == 0.0 && z == 0.0)
        throw std::domain_error("lindblad_ops: degenerate point x = z = 0");
    const double b = std::hypot(x, z);
    const auto& g = pauli_basis();
    const double r2 = std::sqrt(2.0);
    LindbladOps ops;
    ops.L0 = Mat2c::Zero();
    ops.Lp = (I * z / (2.0 * b)) * r2 * g[1] + 0.5 * r2 * g[2] - (I * x / (2.0 * b)) * r2 * g[3];
    ops.Lm = ops.Lp.adjoint();
    return ops;
}

Superoperator liouvillian_matrix(double x, double z, double beta, double g)
{
    const Rates r = rates(x, z, beta, g);
    const double D = r.D, D2 = D * D, S = r.S, A = r.A;
    Superoperator m;
    m << 0, 0, 0, 0,
         2 * x * A / D, -2 * (x * x + D2 / 4) * S / D2, -2 * z, -2 * x * z * S / D2,
         0, 2 * z, -S / 2, -2 * x,
         2 * z * A / D, -2 * x * z * S / D2, 2 * x, -2 * (D2 / 4 + z * z) * S / D2;
    return m;
}

LiouvillianSpectrum liouvillian_spectrum(double x, double z, double beta, double g)
{
    if (x == 0.0)
        throw std::domain_error("liouvillian_spectrum: x = 0 is not supported");
    const Rates r = rates(x, z, beta, g);
    const double D = r.D, t = std::tanh(0.5 * beta * D);
    LiouvillianSpectrum s;
    s.l = {cplx(0.0), cplx(-r.S), cplx(-0.5 * r.S, -D), cplx(-0.5 * r.S, D)};
    s.R[0] << 1.0 / kSqrt2, -kSqrt2 * (x / D) * t, 0.0, -kSqrt2 * (z / D) * t;
    s.R[1] << 0.0, 2.0 * x / D, 0.0, 2.0 * z / D;
    s.R[2] << 0.0, -kSqrt2 * z / D, -I / kSqrt2, kSqrt2 * x / D;
    s.R[3] = s.R[2].conjugate();
    s.L[0] << kSqrt2, 0.0, 0.0, 0.0;
    s.L[1] << t, 2.0 * x / D, 0.0, 2.0 * z / D;
    s.L[2] << 0.0, -kSqrt2 * z / D, I / kSqrt2, kSqrt2 * x / D;
    s.L[3] = s.L[2].conjugate();
    return s;
}

CoherenceVector steady_state(double x, double z, double beta)
{
    if (x == 0.0 && z == 0.0)
        throw std::domain_error("steady_state: degenerate point x = z = 0");
    const double D = 2.0 * std::hypot(x, z), t = std::tanh(0.5 * beta * D);
    return {1.0 / kSqrt2, -kSqrt2 * (x / D) * t, 0.0, -kSqrt2 * (z / D) * t};
}

double liouvillian_gap(double x, double z, double beta, double g)
{
    const Rates r = rates(x, z, beta, g);
    return std::min(r.S, std::hypot(0.5 * r.S, r.D));
}

CoherenceVector propagate_master(const OpenParams& p, const CoherenceVector& c, double t_a,
                                 double t_b, const OdeOptions& opt)
{
    const double beta = p.beta();
    auto rhs = [&](double t, const Vec4d& y) -> Vec4d {
        return liouvillian_matrix(p.x, p.z_at(t), beta, p.g) * y;
    };
    return integrate_ode(rhs, c, t_a, t_b, opt);
}

CoherenceVector evolve_master(const OpenParams& p, const OdeOptions& opt)
{
    p.validate();
    return propagate_master(p, steady_state(p.x, p.z_i, p.beta()), 0.0, p.t_f, opt);
}

Superoperator master_propagator(const OpenParams& p, double t_a, double t_b, const OdeOptions& opt)
{
    Superoperator e;
    for (int j = 0; j < 4; ++j)
        e.col(j) = propagate_master(p, Vec4d::Unit(j), t_a, t_b, opt);
    return e;
}

CoherenceVector adiabatic_state_open(const OpenParams& p)
{
    p.validate();
    return steady_state(p.x, p.z_f, p.beta());
}

cplx integrated_eigenvalue(const OpenParams& p, int j, double t_a, double t_b)
{
    if (j < 1 || j > 4)
        throw std::invalid_argument("integrated_eigenvalue: j must be 1..4");
    if (j == 1 || t_a == t_b)
        return 0.0;
    const double beta = p.beta();
    auto s_of_t = [&](double t) { return rates(p.x, p.z_at(t), beta, p.g).S; };
    const double tol = 1e-12;
    const double int_s = integrate_adaptive(s_of_t, t_a, t_b, tol * 1e-3, tol);
    if (j == 2)
        return -int_s;
    auto d_of_t = [&](double t) { return 2.0 * std::hypot(p.x, p.z_at(t)); };
    const double int_d = integrate_adaptive(d_of_t, t_a, t_b, tol * 1e-3, tol);
    return j == 3 ? cplx(-0.5 * int_s, -int_d) : cplx(-0.5 * int_s, int_d);
}

CoherenceVector aia_state_open(const OpenParams& p, const SwitchingTimes& st)
{
    p.validate();
    const double beta = p.beta();
    const LiouvillianSpectrum sm = liouvillian_spectrum(p.x, p.z_at(st.tau_minus), beta, p.g);
    const LiouvillianSpectrum sp = liouvillian_spectrum(p.x, p.z_at(st.tau_plus), beta, p.g);
    const LiouvillianSpectrum sf = liouvillian_spectrum(p.x, p.z_f, beta, p.g);
    Vec4c c = Vec4c::Zero();
    for (int j = 0; j < 4; ++j) {
        const cplx w = std::exp(integrated_eigenvalue(p, j + 1, st.tau_plus, p.t_f)) *
                       sp.L[j].transpose() * sm.R[0];
        c += w * sf.R[j];
    }
    return c.real();
}

double trace_distance(const CoherenceVector& a, const CoherenceVector& b)
{
    const HermitianEig e = eig_hermitian(to_density(a - b));
    return 0.5 * e.values.cwiseAbs().sum();
}

double min_density_eigenvalue(const CoherenceVector& c)
{
    return eig_hermitian(to_density(c)).values[0];
}

SwitchingTimes switching_times_open(const OpenParams& p, int scenario)
{
    return switching_times(p.lz(), scenario);
}

DtauOptimum optimize_dtau_open(const OpenParams& p, const CoherenceVector& exact, double tol, int n_scan)
{
    auto f = [&](double dtau) { return trace_distance(exact, aia_state_open(p, symmetric_times(p.t_f, dtau))); };
    const double b_max = std::max(std::hypot(p.x, p.z_i), std::hypot(p.x, p.z_f));
    const double needed = 2.0 * p.t_f / (0.25 * kPi / b_max);
    int n = std::max(n_scan, static_cast<int>(std::min(needed, 2.0e5)));
    if (n % 2 == 0)
        ++n;
    const MinResult r = minimize_scalar(f, -p.t_f, p.t_f, tol, n);
    return {r.x, r.fx};
}

} // namespace aia
