#include "aia/lz_closed.hpp"

#include "aia/two_level.hpp"

#include <numbers>

namespace aia {

namespace {

constexpr cplx I(0.0, 1.0);

// Antiderivative of b(z) = sqrt(x^2 + z^2).
double antideriv_b(double x, double z)
{
    const double b = std::hypot(x, z);
    if (x == 0.0)
        return 0.5 * z * b;
    return 0.5 * (z * b + x * x * std::asinh(z / x));
}

// Integral of E_1 over [t_a, t_b], any ordering.
double delta1(const LzParams& p, double t_a, double t_b)
{
    return -(p.t_f / p.dz()) * (antideriv_b(p.x, p.z_at(t_b)) - antideriv_b(p.x, p.z_at(t_a)));
}

Vec2c to_complex(const Eigen::Vector2d& v) { return v.cast<cplx>(); }

} // namespace

void LzParams::validate() const
{
    if (!(x > 0.0))
        throw std::invalid_argument("LzParams: x must be positive");
    if (!(z_i < 0.0 && z_f > 0.0))
        throw std::invalid_argument("LzParams: need z_i < 0 < z_f");
    if (!(t_f > 0.0))
        throw std::invalid_argument("LzParams: t_f must be positive");
}

const char* regime_name(Regime r)
{
    switch (r) {
    case Regime::WholeIntervalImpulse: return "whole-interval-impulse";
    case Regime::Interior: return "interior";
    case Regime::Collapsed: return "collapsed";
    case Regime::Reversed: return "reversed";
    }
    return "?";
}

Mat2c lz_hamiltonian(double x, double z)
{
    Mat2c h;
    h << z, x, x, -z;
    return h;
}

LzEigensystem lz_eigensystem(double x, double z)
{
    if (x == 0.0 && z == 0.0)
        throw std::domain_error("lz_eigensystem: degenerate point x = z = 0");
    if (x < 0.0)
        throw std::domain_error("lz_eigensystem: gauge defined for x >= 0");
    const double b = std::hypot(x, z);
    // b -+ z without cancellation: (b - z)(b + z) = x^2
    double bpz = b + z, bmz = b - z;
    if (z > 0.0)
        bmz = x * x / bpz;
    else if (z < 0.0)
        bpz = x * x / bmz;
    const double s = std::sqrt(bmz / (2.0 * b)), c = std::sqrt(bpz / (2.0 * b));
    LzEigensystem es;
    es.e1 = -b;
    es.e2 = b;
    es.psi1 << -s, c;
    es.psi2 << c, s;
    return es;
}

StateVector evolve_schrodinger(const LzParams& p, const OdeOptions& opt)
{
    p.validate();
    const double zdot = p.dz() / p.t_f;
    auto coupling = [&](double t) {
        const double z = p.z_at(t);
        return cplx(zdot * p.x / (2.0 * (p.x * p.x + z * z)), 0.0);
    };
    auto phi = [&](double t) { return -2.0 * delta1(p, 0.0, t); };
    const FrameAmplitudes a = evolve_frame(coupling, phi, p.t_f, opt);
    const LzEigensystem es = lz_eigensystem(p.x, p.z_f);
    const double d1 = delta1(p, 0.0, p.t_f);
    return a.a_g * std::polar(1.0, -d1) * to_complex(es.psi1) +
           a.a_e * std::polar(1.0, d1) * to_complex(es.psi2);
}

StateVector evolve_schrodinger_fixed_basis(const LzParams& p, const OdeOptions& opt)
{
    p.validate();
    auto rhs = [&](double t, const Vec2c& c) -> Vec2c {
        return -I * (lz_hamiltonian(p.x, p.z_at(t)) * c);
    };
    return integrate_ode(rhs, to_complex(lz_eigensystem(p.x, p.z_i).psi1), 0.0, p.t_f, opt);
}

double dynamical_phase_gs(const LzParams& p, double t_a, double t_b)
{
    if (!(0.0 <= t_a && t_a <= t_b && t_b <= p.t_f))
        throw std::invalid_argument("dynamical_phase_gs: need 0 <= t_a <= t_b <= t_f");
    return delta1(p, t_a, t_b);
}

StateVector adiabatic_state(const LzParams& p)
{
    return std::polar(1.0, -delta1(p, 0.0, p.t_f)) * to_complex(lz_eigensystem(p.x, p.z_f).psi1);
}

double lz_m21(const LzParams& p, double t)
{
    // t_f <psi2| dH/dt |psi1> / (2b)^2 with <psi2|sigma_z|psi1> = -x/b
    const double b = std::hypot(p.x, p.z_at(t));
    return -p.dz() * p.x / (4.0 * b * b * b);
}

double lz_j21(const LzParams& p)
{
    const double x2 = p.x * p.x;
    auto f = [x2](double z) {
        const double b2 = x2 + z * z;
        return x2 / (8.0 * b2 * b2 * std::sqrt(b2));
    };
    return p.dz() * integrate_adaptive(f, p.z_i, p.z_f, 0.0, 1e-13);
}

StateVector adiabatic_first_order(const LzParams& p)
{
    const LzEigensystem es = lz_eigensystem(p.x, p.z_f);
    const Vec2c psi1 = to_complex(es.psi1), psi2 = to_complex(es.psi2);
    const double d1 = delta1(p, 0.0, p.t_f);
    const cplx ph1 = std::polar(1.0, -d1), ph2 = std::polar(1.0, d1);
    const Vec2c corr = I * ph1 * lz_j21(p) * psi1 - I * ph1 * lz_m21(p, p.t_f) * psi2 +
                       I * ph2 * lz_m21(p, 0.0) * psi2;
    const Vec2c v = ph1 * psi1 + corr / p.t_f;
    return v / v.norm();
}

StateVector aia_state(const LzParams& p, const SwitchingTimes& st)
{
    const LzEigensystem em = lz_eigensystem(p.x, p.z_at(st.tau_minus));
    const LzEigensystem ep = lz_eigensystem(p.x, p.z_at(st.tau_plus));
    const LzEigensystem ef = lz_eigensystem(p.x, p.z_f);
    const double d_late = delta1(p, st.tau_plus, p.t_f);
    const cplx pre = std::polar(1.0, -delta1(p, 0.0, st.tau_minus));
    const cplx a1 = pre * std::polar(1.0, -d_late) * ep.psi1.dot(em.psi1);
    const cplx a2 = pre * std::polar(1.0, d_late) * ep.psi2.dot(em.psi1);
    return a1 * to_complex(ef.psi1) + a2 * to_complex(ef.psi2);
}

SwitchingTimes symmetric_times(double t_f, double dtau)
{
    SwitchingTimes st{0.5 * t_f - 0.5 * dtau, 0.5 * t_f + 0.5 * dtau, Regime::Interior};
    if (dtau < 0.0)
        st.regime = Regime::Reversed;
    return st;
}

SwitchingTimes switching_times(const LzParams& p, int scenario)
{
    p.validate();
    const double x = p.x, x2 = x * x, dz = p.dz(), tf = p.t_f;
    const double centre = -p.z_i * tf / dz;
    const SwitchingTimes whole{0.0, tf, Regime::WholeIntervalImpulse};

    double lower = 0.0, upper = std::numeric_limits<double>::infinity();
    double collapse = 0.5 * tf;
    double half = 0.0;
    switch (scenario) {
    case 1:
        lower = 0.5 * dz / (p.z_f * std::hypot(x, p.z_f));
        if (tf >= lower) {
            const double r = dz / (x2 * tf);
            half = x / (std::sqrt(2.0) * dz) * tf * std::sqrt(std::sqrt(1.0 + r * r) - 1.0);
        }
        break;
    case 2:
        lower = 0.5 * dz / (x2 + p.z_i * p.z_i);
        upper = 0.5 * dz / x2;
        if (tf >= lower && tf < upper)
            half = x / (std::sqrt(2.0) * dz) * tf * std::sqrt(std::max(0.0, dz / (x2 * tf) - 2.0));
        break;
    case 3:
        lower = 0.5 / std::hypot(x, p.z_f);
        upper = 0.5 / x;
        collapse = centre;
        if (tf >= lower && tf < upper) {
            const double r = 1.0 / (2.0 * x * tf);
            half = x / dz * tf * std::sqrt(std::max(0.0, r * r - 1.0));
        }
        break;
    case 4:
        lower = 0.25 * x * dz / (x2 + p.z_i * p.z_i);
        upper = 0.25 * dz / x2;
        if (tf >= lower && tf < upper) {
            const double r = std::cbrt(std::pow(dz / (std::sqrt(2.0) * x2 * tf), 2.0));
            half = x / (std::sqrt(2.0) * dz) * tf * std::sqrt(std::max(0.0, r - 2.0));
        }
        break;
    default:
        throw std::invalid_argument("switching_times: scenario must be 1..4");
    }
    if (tf < lower)
        return whole;
    if (tf >= upper)
        return {collapse, collapse, Regime::Collapsed};
    return {std::clamp(centre - half, 0.0, tf), std::clamp(centre + half, 0.0, tf), Regime::Interior};
}

DtauOptimum optimize_dtau(const LzParams& p, const StateVector& exact, double tol, int n_scan)
{
    auto f = [&](double dtau) {
        return state_distance(exact, aia_state(p, symmetric_times(p.t_f, dtau)));
    };
    // Resolve the fastest dynamical-phase oscillation, ~2 pi / b_max in dtau.
    const double b_max = std::max(std::hypot(p.x, p.z_i), std::hypot(p.x, p.z_f));
    const double needed = 2.0 * p.t_f / (0.25 * std::numbers::pi / b_max);
    int n = std::max(n_scan, static_cast<int>(std::min(needed, 4.0e6)));
    if (n % 2 == 0)
        ++n; // keep dtau = 0 on the grid
    const MinResult r = minimize_scalar(f, -p.t_f, p.t_f, tol, n);
    return {r.x, r.fx};
}

DtauOptimum optimize_dtau(const LzParams& p, const OdeOptions& opt)
{
    return optimize_dtau(p, evolve_schrodinger(p, opt));
}

double state_distance(const Vec2c& psi, const Vec2c& phi)
{
    // Lagrange identity: |<psi|phi>|^2 + |psi_1 phi_2 - psi_2 phi_1|^2 = |psi|^2 |phi|^2,
    // so the wedge gives sqrt(1 - F) without cancellation.
    const double w = std::abs(psi[0] * phi[1] - psi[1] * phi[0]) / (psi.norm() * phi.norm());
    return std::clamp(w, 0.0, 1.0);
}

} // namespace aia
