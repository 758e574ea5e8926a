#include "aia/tfi.hpp"

#include <doctest.h>

#include <Eigen/Eigenvalues>

#include <cmath>
#include <functional>
#include <numbers>
#include <random>

using namespace aia;
using doctest::Approx;

namespace {

constexpr double pi = std::numbers::pi;

TfiParams chain(int L, double tf)
{
    return {L, 0.5, 1.5, tf};
}

double simpson(const std::function<double(double)>& f, double a, double b, int n)
{
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i)
        s += f(a + h * i) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

} // namespace

TEST_CASE("momenta")
{
    const auto k4 = momenta(4);
    REQUIRE(k4.size() == 2);
    CHECK(k4[0] == Approx(pi / 4));
    CHECK(k4[1] == Approx(3 * pi / 4));
    const auto k2 = momenta(2);
    REQUIRE(k2.size() == 1);
    CHECK(k2[0] == Approx(pi / 2));
    const auto k150 = momenta(150);
    CHECK(k150.size() == 75);
    CHECK(k150.back() == Approx(149 * pi / 150));
    for (std::size_t i = 1; i < k150.size(); ++i)
        CHECK(k150[i] > k150[i - 1]);
    CHECK_THROWS(momenta(3));
    CHECK_THROWS(momenta(0));
}

TEST_CASE("mode_hamiltonian: printed values")
{
    const Mat2c h = mode_hamiltonian(1.0, pi);
    CHECK(std::abs(h(0, 0) - cplx(-4.0, 0.0)) < 1e-14);
    CHECK(std::abs(h(1, 1) - cplx(4.0, 0.0)) < 1e-14);
    CHECK(std::abs(h(0, 1)) < 1e-14);
    CHECK(mode_data(1.0, pi).eps == Approx(4.0));
    for (double k : {0.1, 1.0, 2.5})
        CHECK(mode_data(0.0, k).eps == Approx(2.0).epsilon(1e-14));
}

TEST_CASE("mode_hamiltonian: ground vector against Eigen for random (h, k)")
{
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> uh(0.0, 3.0), uk(0.0, pi);
    for (int i = 0; i < 500; ++i) {
        const double h = uh(rng), k = uk(rng);
        const Mat2c m = mode_hamiltonian(h, k);
        CHECK((m - m.adjoint()).norm() < 1e-15);
        Eigen::SelfAdjointEigenSolver<Mat2c> ref(m);
        const TfiModeData d = mode_data(h, k);
        CHECK(ref.eigenvalues()[0] == Approx(-d.eps).epsilon(1e-12));
        CHECK(ref.eigenvalues()[1] == Approx(d.eps).epsilon(1e-12));
        const Vec2c g = mode_ground(h, k), e = mode_excited(h, k);
        CHECK((m * g + d.eps * g).norm() < 1e-12 * d.eps);
        CHECK((m * e - d.eps * e).norm() < 1e-12 * d.eps);
        CHECK(std::abs(std::abs(g.dot(ref.eigenvectors().col(0))) - 1.0) < 1e-12);
        CHECK(std::abs(g.dot(e)) < 1e-15);
        CHECK(d.theta >= 0.0);
        CHECK(d.theta <= pi);
        CHECK(d.eps >= 2.0 * std::abs(h - 1.0) - 1e-14);
    }
}

TEST_CASE("mode ground vector: continuous across h = cos k and gauge has no Berry connection")
{
    const double k = 1.0;
    Vec2c prev = mode_ground(0.0, k);
    for (int i = 1; i <= 3000; ++i) {
        const Vec2c cur = mode_ground(i * 1e-3, k);
        CHECK((cur - prev).norm() < 5e-3);
        prev = cur;
    }
    for (double kk : momenta(150)) {
        for (double h : {0.5, 0.9, 1.0, 1.2, 1.5}) {
            const double s = 1e-6;
            const Vec2c d = (mode_ground(h + s, kk) - mode_ground(h - s, kk)) / (2 * s);
            CHECK(std::abs(mode_ground(h, kk).dot(d)) < 1e-8);
        }
    }
}

TEST_CASE("ground_register")
{
    for (const auto& m : ground_register(10, 1e9)) {
        CHECK(std::abs(m.psi[0] - cplx(1.0, 0.0)) < 1e-8);
        CHECK(std::abs(m.psi[1]) < 1e-8);
    }
    const auto r2 = ground_register(2, 0.0);
    CHECK(mode_data(0.0, pi / 2).theta == Approx(pi / 2));
    CHECK(std::abs(r2[0].psi[0] - cplx(std::cos(pi / 4), 0.0)) < 1e-15);
    CHECK(std::abs(r2[0].psi[1] - cplx(0.0, std::sin(pi / 4))) < 1e-15);

    for (double h : {0.0, 0.5, 1.0, 1.7}) {
        const auto reg = ground_register(150, h);
        double sum = 0.0;
        for (double k : momenta(150))
            sum += mode_data(h, k).eps;
        CHECK(register_energy(reg, h) == Approx(-sum).epsilon(1e-12));
        for (const auto& m : reg)
            CHECK(std::abs(m.psi.norm() - 1.0) < 1e-14);
    }
}

TEST_CASE("gs_energy_thermo")
{
    CHECK(gs_energy_thermo(0.0, 150) == Approx(-150.0).epsilon(1e-13));
    CHECK(gs_energy_thermo(1e6, 10) / (-10.0 * 1e6) == Approx(1.0).epsilon(1e-6));
    double sum = 0.0;
    for (double k : momenta(150))
        sum += mode_data(1.0, k).eps;
    CHECK(std::abs(gs_energy_thermo(1.0, 150) / -sum - 1.0) < 0.01);
    // independent quadrature
    for (double h : {0.3, 1.0, 2.0}) {
        const double q = simpson([h](double k) { return mode_data(h, k).eps; }, 0.0, pi, 200000);
        CHECK(gs_energy_thermo(h, 150) == Approx(-150.0 / (2 * pi) * q).epsilon(1e-11));
    }
    // the printed closed form is exactly half of the integral definition
    for (double h : {0.0, 0.5, 1.0, 1.5})
        CHECK(gs_energy_thermo_printed(h, 150) == Approx(0.5 * gs_energy_thermo(h, 150)).epsilon(1e-12));
    CHECK_THROWS(gs_energy_thermo(-0.1, 150));
}

TEST_CASE("tfi_gap")
{
    CHECK(tfi_gap(1.5, 150, true) == Approx(1.0));
    CHECK(tfi_gap(1.0, 150) == Approx(4.0 * std::sin(pi / 300)).epsilon(1e-13));
    CHECK(std::abs(tfi_gap(1.0, 150) - 0.0419) < 1e-4);
    double best_h = 0.0, best = 1e300;
    for (int i = 0; i <= 1000; ++i) {
        const double h = 0.5 + i * 1e-3, g = tfi_gap(h, 150);
        CHECK(g >= tfi_gap(h, 150, true) - 1e-14);
        if (g < best) {
            best = g;
            best_h = h;
        }
    }
    CHECK(std::abs(best_h - 1.0) < 2e-3);
    // eps_k approaches the thermodynamic gap as k -> 0
    CHECK(mode_data(1.3, 1e-6).eps == Approx(2 * 0.3).epsilon(1e-9));
}

TEST_CASE("mode_phase matches quadrature of eps_k")
{
    for (double tf : {1.0, 100.0}) {
        const TfiParams p = chain(150, tf);
        for (double k : {momenta(150).front(), 1.0, momenta(150).back()}) {
            auto eps = [&](double t) { return mode_data(p.h_at(t), k).eps; };
            CHECK(mode_phase(p, k, 0.0, tf) == Approx(simpson(eps, 0.0, tf, 200000)).epsilon(1e-11));
            CHECK(mode_phase(p, k, 0.3 * tf, 0.6 * tf) ==
                  Approx(simpson(eps, 0.3 * tf, 0.6 * tf, 200000)).epsilon(1e-11));
        }
    }
}

TEST_CASE("evolve_register: sudden limit and unitarity")
{
    const TfiParams p = chain(150, 1e-8);
    const auto r = evolve_register(p);
    const auto g = ground_register(150, 0.5);
    for (std::size_t j = 0; j < r.size(); ++j)
        CHECK((r[j].psi - g[j].psi).norm() < 1e-6);

    const auto q = evolve_register(chain(150, 50.0));
    for (const auto& m : q)
        CHECK(std::abs(m.psi.norm() - 1.0) < 10 * 1e-10);
}

TEST_CASE("evolve_register: frame and fixed-basis integration agree")
{
    for (double tf : {3.0, 40.0, 300.0}) {
        const TfiParams p = chain(20, tf);
        const auto a = evolve_register(p, {1e-12, 1e-14});
        const auto b = evolve_register_fixed_basis(p, {1e-12, 1e-14});
        for (std::size_t j = 0; j < a.size(); ++j)
            CHECK((a[j].psi - b[j].psi).norm() < 1e-8);
    }
}

TEST_CASE("evolve_register: threads do not change the result")
{
    const TfiParams p = chain(40, 25.0);
    const auto a = evolve_register(p, {}, 1), b = evolve_register(p, {}, 4);
    for (std::size_t j = 0; j < a.size(); ++j) {
        CHECK(a[j].k == b[j].k);
        CHECK(a[j].psi == b[j].psi);
    }
}

TEST_CASE("L = 2: register pipeline equals the direct two-level computation")
{
    for (double tf : {0.5, 5.0, 50.0}) {
        const TfiParams p = chain(2, tf);
        const double k = pi / 2;
        auto rhs = [&](double t, const Vec2c& y) { return Vec2c(cplx(0, -1) * (mode_hamiltonian(p.h_at(t), k) * y)); };
        const OdeOptions opt{1e-12, 1e-14};
        const Vec2c direct = integrate_ode(rhs, mode_ground(p.h_i, k), 0.0, tf, opt);
        const auto reg = evolve_register_fixed_basis(p, opt);
        REQUIRE(reg.size() == 1);
        CHECK((reg[0].psi - direct).norm() < 1e-12);

        // 1 - |<a|b>|^2 = |a_0 b_1 - a_1 b_0|^2 for unit vectors; no cancellation at small d
        const Vec2c adi = mode_ground(p.h_f, k);
        const double d_direct = std::abs(adi[0] * direct[1] - adi[1] * direct[0]) / direct.norm();
        CHECK(std::abs(register_distance(reg, adiabatic_register(p)) - d_direct) < 1e-12);
        CHECK(std::abs(register_distance(evolve_register(p, opt), adiabatic_register(p)) - d_direct) < 1e-9);
    }
}

TEST_CASE("aia_register: collapse and completeness")
{
    const TfiParams p = chain(150, 80.0);
    for (double tau : {0.0, 13.0, 40.0, 80.0})
        CHECK(register_distance(aia_register(p, {tau, tau, Regime::Collapsed}), adiabatic_register(p)) < 1e-12);
    const auto frozen = aia_register(p, {0.0, p.t_f, Regime::WholeIntervalImpulse});
    const auto g = ground_register(150, p.h_i);
    for (std::size_t j = 0; j < g.size(); ++j)
        CHECK((frozen[j].psi - g[j].psi).norm() < 1e-14);
}

TEST_CASE("register_distance")
{
    auto reg = ground_register(4, 0.7);
    CHECK(register_distance(reg, reg) == 0.0);
    auto orth = reg;
    orth[1].psi = mode_excited(0.7, orth[1].k);
    CHECK(register_distance(reg, orth) == 1.0);

    ModeRegister a{{0.1, Vec2c(1.0, 0.0)}, {0.2, Vec2c(1.0, 0.0)}};
    ModeRegister b{{0.1, Vec2c(1.0, 1.0) / std::sqrt(2.0)}, {0.2, Vec2c(1.0, cplx(0, 1)) / std::sqrt(2.0)}};
    CHECK(register_distance(a, b) == Approx(std::sqrt(3.0) / 2).epsilon(1e-15));
    CHECK(register_distance(b, a) == register_distance(a, b));

    std::mt19937_64 rng(4);
    std::normal_distribution<double> nd;
    for (int i = 0; i < 100; ++i) {
        ModeRegister x = ground_register(8, 0.5), y = x;
        for (auto& m : y)
            m.psi = Vec2c(cplx(nd(rng), nd(rng)), cplx(nd(rng), nd(rng))).normalized();
        const double d = register_distance(x, y);
        CHECK(d >= 0.0);
        CHECK(d <= 1.0);
        CHECK(d == Approx(register_distance(y, x)).epsilon(1e-14));
    }
    CHECK_THROWS(register_distance(ground_register(4, 0.5), ground_register(6, 0.5)));
}

TEST_CASE("lowest mode dominates the infidelity at t_f = 300")
{
    const TfiParams p = chain(150, 300.0);
    const auto e = evolve_register(p);
    const auto a = adiabatic_register(p);
    const double d = register_distance(e, a);
    const double q0 = std::norm(state_distance(e[0].psi, a[0].psi));
    CHECK(q0 >= 0.5 * d * d);
}

TEST_CASE("switching_times_tfi: scenario 1")
{
    const SwitchingTimes s = switching_times_tfi(chain(150, 100.0), 1);
    CHECK(s.dtau() == Approx(std::sqrt(2.0) * std::sqrt(100.0)).epsilon(1e-13));
    CHECK(std::abs(s.dtau() - 14.1421) < 1e-4);
    CHECK(s.tau_minus + s.tau_plus == Approx(2 * 50.0));
    const SwitchingTimes w = switching_times_tfi(chain(150, 1.0), 1);
    CHECK(w.regime == Regime::WholeIntervalImpulse);
    CHECK(w.dtau() == 1.0);
    CHECK(switching_times_tfi(chain(150, 2.0), 1).regime == Regime::Interior);
    CHECK_THROWS(switching_times_tfi(chain(150, 1.0), 3));
}

TEST_CASE("switching_times_tfi: scenario 2 roots against a dense scan")
{
    for (double tf : {10.0, 100.0, 1000.0}) {
        const TfiParams p = chain(150, tf);
        auto g = [&](double h) {
            const double m = 4 * h / ((h + 1) * (h + 1));
            return pi * p.dh() / tf - std::abs(h - 1) * (h + 1) * complete_elliptic_e(std::min(m, 1.0));
        };
        std::vector<double> roots;
        const double step = 1e-6;
        double prev = g(p.h_i);
        for (long i = 1; i <= 1000000; ++i) {
            const double h = p.h_i + i * step, cur = g(h);
            if ((cur > 0) != (prev > 0))
                roots.push_back(h - 0.5 * step);
            prev = cur;
        }
        const SwitchingTimes s = switching_times_tfi(p, 2);
        REQUIRE(roots.size() == 2);
        CHECK(std::abs(p.h_at(s.tau_minus) - roots[0]) < 1e-6);
        CHECK(std::abs(p.h_at(s.tau_plus) - roots[1]) < 1e-6);
        CHECK(0.0 <= s.tau_minus);
        CHECK(s.tau_minus <= s.tau_plus);
        CHECK(s.tau_plus <= tf);
    }
    // short sweeps: the condition holds everywhere, the whole interval is impulse
    const SwitchingTimes w = switching_times_tfi(chain(150, 0.5), 2);
    CHECK(w.regime == Regime::WholeIntervalImpulse);
}

TEST_CASE("optimize_dtau_tfi: dominance")
{
    for (double tf : {5.0, 60.0}) {
        const TfiParams p = chain(150, tf);
        const auto e = evolve_register(p);
        const DtauOptimum o = optimize_dtau_tfi(p, e);
        CHECK(o.distance <= register_distance(e, adiabatic_register(p)));
        CHECK(std::abs(o.dtau) <= tf);
    }
}

TEST_CASE("optimize_dtau_tfi: the optimal interval turns negative at large t_f")
{
    // positive throughout [10, 8e3]; the sign flips once the sweep is nearly adiabatic
    const TfiParams p = chain(150, 1e4);
    const auto e = evolve_register(p);
    const DtauOptimum o = optimize_dtau_tfi(p, e);
    CHECK(o.dtau < 0.0);
    CHECK(o.distance <= register_distance(e, adiabatic_register(p)));
}

TEST_CASE("TfiParams validation")
{
    CHECK_THROWS(evolve_register(TfiParams{3, 0.5, 1.5, 1.0}));
    CHECK_THROWS(evolve_register(TfiParams{4, 1.2, 1.5, 1.0}));
    CHECK_THROWS(evolve_register(TfiParams{4, 0.5, 0.9, 1.0}));
    CHECK_THROWS(evolve_register(TfiParams{4, 0.5, 1.5, -1.0}));
}
