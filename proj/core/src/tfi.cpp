#include "aia/tfi.hpp"

#include "aia/parallel.hpp"
#include "aia/two_level.hpp"

#include <numbers>

namespace aia {

namespace {

constexpr cplx I(0.0, 1.0);
constexpr double kPi = std::numbers::pi;

// Antiderivative of 2 sqrt(u^2 + s^2) in u.
double antideriv_eps(double u, double s)
{
    const double r = std::hypot(u, s);
    if (s == 0.0)
        return u * r;
    return u * r + s * s * std::asinh(u / s);
}

} // namespace

void TfiParams::validate() const
{
    if (L < 2 || L % 2 != 0)
        throw std::invalid_argument("TfiParams: L must be even and >= 2");
    if (!(h_i >= 0.0 && h_i < 1.0 && h_f > 1.0))
        throw std::invalid_argument("TfiParams: need 0 <= h_i < 1 < h_f");
    if (!(t_f > 0.0))
        throw std::invalid_argument("TfiParams: t_f must be positive");
}

std::vector<double> momenta(int L)
{
    if (L < 2 || L % 2 != 0)
        throw std::invalid_argument("momenta: L must be even and >= 2");
    std::vector<double> ks(L / 2);
    for (int j = 1; j <= L / 2; ++j)
        ks[j - 1] = (2.0 * j - 1.0) * kPi / L;
    return ks;
}

TfiModeData mode_data(double h, double k)
{
    const double u = h - std::cos(k), s = std::sin(k);
    return {k, std::atan2(s, u), 2.0 * std::hypot(u, s)};
}

Mat2c mode_hamiltonian(double h, double k)
{
    const double u = h - std::cos(k), s = std::sin(k);
    Mat2c m;
    m << -2.0 * u, 2.0 * I * s, -2.0 * I * s, 2.0 * u;
    return m;
}

Vec2c mode_ground(double h, double k)
{
    const double th = mode_data(h, k).theta;
    return {std::cos(0.5 * th), I * std::sin(0.5 * th)};
}

Vec2c mode_excited(double h, double k)
{
    const double th = mode_data(h, k).theta;
    return {I * std::sin(0.5 * th), std::cos(0.5 * th)};
}

ModeRegister ground_register(int L, double h)
{
    ModeRegister reg;
    for (double k : momenta(L))
        reg.push_back({k, mode_ground(h, k)});
    return reg;
}

double register_energy(const ModeRegister& reg, double h)
{
    double e = 0.0;
    for (const auto& m : reg)
        e += m.psi.dot(mode_hamiltonian(h, m.k) * m.psi).real();
    return e;
}

double gs_energy_thermo(double h, int L)
{
    if (!(h >= 0.0))
        throw std::domain_error("gs_energy_thermo: h must be non-negative");
    auto eps = [h](double k) { return mode_data(h, k).eps; };
    const double integral = integrate_adaptive(eps, 0.0, kPi, 0.0, 1e-14);
    return -static_cast<double>(L) / (2.0 * kPi) * integral;
}

double gs_energy_thermo_printed(double h, int L)
{
    return -static_cast<double>(L) / (2.0 * kPi) * 2.0 * (1.0 + h) *
           complete_elliptic_e(4.0 * h / ((1.0 + h) * (1.0 + h)));
}

double tfi_gap(double h, int L, bool thermodynamic)
{
    if (!(h >= 0.0))
        throw std::domain_error("tfi_gap: h must be non-negative");
    if (thermodynamic)
        return 2.0 * std::abs(h - 1.0);
    double g = std::numeric_limits<double>::infinity();
    for (double k : momenta(L))
        g = std::min(g, mode_data(h, k).eps);
    return g;
}

double mode_phase(const TfiParams& p, double k, double t_a, double t_b)
{
    const double c = std::cos(k), s = std::sin(k);
    return p.t_f / p.dh() * (antideriv_eps(p.h_at(t_b) - c, s) - antideriv_eps(p.h_at(t_a) - c, s));
}

ModeRegister evolve_register(const TfiParams& p, const OdeOptions& opt, unsigned threads)
{
    p.validate();
    const std::vector<double> ks = momenta(p.L);
    ModeRegister out(ks.size());
    const double hdot = p.dh() / p.t_f;
    parallel_for(ks.size(), threads, [&](std::size_t j) {
        const double k = ks[j], s = std::sin(k);
        // <e|d_t g> = i theta'/2 with d theta/dh = -4 sin k / eps^2
        auto coupling = [&](double t) {
            const double e = mode_data(p.h_at(t), k).eps;
            return cplx(0.0, -2.0 * s * hdot / (e * e));
        };
        auto phi = [&](double t) { return 2.0 * mode_phase(p, k, 0.0, t); };
        const FrameAmplitudes a = evolve_frame(coupling, phi, p.t_f, opt);
        const cplx rot = std::polar(1.0, 0.5 * a.phi);
        out[j] = {k, a.a_g * rot * mode_ground(p.h_f, k) + a.a_e * std::conj(rot) * mode_excited(p.h_f, k)};
    });
    return out;
}

ModeRegister evolve_register_fixed_basis(const TfiParams& p, const OdeOptions& opt, unsigned threads)
{
    p.validate();
    const std::vector<double> ks = momenta(p.L);
    ModeRegister out(ks.size());
    parallel_for(ks.size(), threads, [&](std::size_t j) {
        const double k = ks[j];
        auto rhs = [&](double t, const Vec2c& y) -> Vec2c {
            return -I * (mode_hamiltonian(p.h_at(t), k) * y);
        };
        out[j] = {k, integrate_ode(rhs, mode_ground(p.h_i, k), 0.0, p.t_f, opt)};
    });
    return out;
}

ModeRegister adiabatic_register(const TfiParams& p)
{
    p.validate();
    ModeRegister out;
    for (double k : momenta(p.L))
        out.push_back({k, std::polar(1.0, mode_phase(p, k, 0.0, p.t_f)) * mode_ground(p.h_f, k)});
    return out;
}

ModeRegister aia_register(const TfiParams& p, const SwitchingTimes& st)
{
    p.validate();
    const double hm = p.h_at(st.tau_minus), hp = p.h_at(st.tau_plus);
    ModeRegister out;
    for (double k : momenta(p.L)) {
        const Vec2c g0 = mode_ground(hm, k);
        const cplx pre = std::polar(1.0, mode_phase(p, k, 0.0, st.tau_minus));
        const cplx late = std::polar(1.0, mode_phase(p, k, st.tau_plus, p.t_f));
        const cplx og = mode_ground(hp, k).dot(g0);
        const cplx oe = mode_excited(hp, k).dot(g0);
        out.push_back({k, pre * (late * og * mode_ground(p.h_f, k) +
                                 std::conj(late) * oe * mode_excited(p.h_f, k))});
    }
    return out;
}

double register_distance(const ModeRegister& a, const ModeRegister& b)
{
    if (a.size() != b.size())
        throw std::invalid_argument("register_distance: registers differ in size");
    // 1 - prod(1 - q_k) via log1p/expm1; q_k from the wedge form of the overlap
    double log_f = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        if (a[j].k != b[j].k)
            throw std::invalid_argument("register_distance: momentum lists differ");
        const double d = state_distance(a[j].psi, b[j].psi);
        log_f += std::log1p(-d * d);
    }
    return std::clamp(std::sqrt(-std::expm1(log_f)), 0.0, 1.0);
}

SwitchingTimes switching_times_tfi(const TfiParams& p, int scenario)
{
    p.validate();
    const double tf = p.t_f, dh = p.dh();
    if (scenario == 1) {
        if (tf < 0.5 * dh / ((p.h_f - 1.0) * (p.h_f - 1.0)))
            return {0.0, tf, Regime::WholeIntervalImpulse};
        const double centre = (1.0 - p.h_i) * tf / dh;
        const double half = std::sqrt(tf) / (std::sqrt(2.0) * std::sqrt(dh));
        return {std::clamp(centre - half, 0.0, tf), std::clamp(centre + half, 0.0, tf), Regime::Interior};
    }
    if (scenario == 2) {
        auto g = [&](double h) {
            const double m = 4.0 * h / ((h + 1.0) * (h + 1.0));
            return kPi * dh / tf - std::abs(h - 1.0) * (h + 1.0) * complete_elliptic_e(std::min(m, 1.0));
        };
        // g(1) > 0; a root exists on a side only when g changes sign there
        const double h_minus = g(p.h_i) > 0.0 ? p.h_i : find_root_bracketed(g, p.h_i, 1.0, 1e-15);
        const double h_plus = g(p.h_f) > 0.0 ? p.h_f : find_root_bracketed(g, 1.0, p.h_f, 1e-15);
        const Regime r = (h_minus == p.h_i && h_plus == p.h_f) ? Regime::WholeIntervalImpulse : Regime::Interior;
        return {(h_minus - p.h_i) * tf / dh, (h_plus - p.h_i) * tf / dh, r};
    }
    throw std::invalid_argument("switching_times_tfi: scenario must be 1 or 2");
}

DtauOptimum optimize_dtau_tfi(const TfiParams& p, const ModeRegister& exact, double tol, int n_scan)
{
    auto f = [&](double dtau) {
        return register_distance(exact, aia_register(p, symmetric_times(p.t_f, dtau)));
    };
    const double eps_max = 2.0 * (std::max(p.h_f, 1.0) + 1.0);
    const double needed = 2.0 * p.t_f / (0.25 * kPi / eps_max);
    int n = std::max(n_scan, static_cast<int>(std::min(needed, 2.0e5)));
    if (n % 2 == 0)
        ++n;
    const MinResult r = minimize_scalar(f, -p.t_f, p.t_f, tol, n);
    return {r.x, r.fx};
}

} // namespace aia
