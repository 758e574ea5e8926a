#include "aia/intertwiner.hpp"

#include <doctest.h>

#include <cmath>

using namespace aia;
using doctest::Approx;

namespace {

const OdeOptions kTight{1e-12, 1e-14};

template <class M>
double max_abs(const Eigen::MatrixBase<M>& m)
{
    return m.cwiseAbs().maxCoeff();
}

// rho -> rho^T flips the sign of the sigma_y coefficient; positive but not CP
Superoperator transpose_map() { return Eigen::Vector4d(1, 1, -1, 1).asDiagonal(); }

} // namespace

TEST_CASE("w1_projector_product: fixed generator gives the kernel projector")
{
    const OpenParams p{0.4, 0.3, 0.3, 10.0, 0.2, 0.05};
    const KernelPath path = davies_kernel_path(p);
    const Mat4d p1 = path.R1(0.0) * path.L1(0.0).transpose();
    for (int N : {2, 7, 200})
        CHECK(max_abs(w1_projector_product(path, 10.0, N) - p1) < 1e-15);
    CHECK_THROWS(w1_projector_product(path, 1.0, 1));
}

TEST_CASE("w1_projector_product: Davies path")
{
    const OpenParams p{0.1, -1.0, 1.0, 100.0, 0.05, 0.01};
    const KernelPath path = davies_kernel_path(p);
    for (double t : {0.0, 17.0, 50.0, 100.0})
        CHECK(path.L1(t).dot(path.R1(t)) == Approx(1.0).epsilon(1e-15));

    const Mat4d w2 = w1_projector_product(path, 100.0, 2);
    const Mat4d w200 = w1_projector_product(path, 100.0, 200);
    CHECK(max_abs(w2 - w200) < 1e-14);
    const Mat4d wa = w1_projector_product(path, 100.0, 10000);
    const Mat4d wb = w1_projector_product(path, 100.0, 20000);
    CHECK(max_abs(wa - wb) < 1e-8);

    const Mat4d p1t = path.R1(100.0) * path.L1(100.0).transpose();
    const Mat4d p10 = path.R1(0.0) * path.L1(0.0).transpose();
    CHECK(max_abs(wa - p1t) < 1e-12);
    CHECK(max_abs(wa * p10 - wa) < 1e-12);
    // W1 carries the initial steady state to the final one
    CHECK((wa * path.R1(0.0) - path.R1(100.0)).norm() < 1e-12);
}

TEST_CASE("holonomy_a1 vanishes for the Davies kernel")
{
    const OpenParams p{0.1, -1.0, 1.0, 100.0, 0.05, 0.01};
    const KernelPath path = davies_kernel_path(p);
    for (int i = 1; i < 100; ++i)
        CHECK(std::abs(holonomy_a1(path, i * 1.0)) < 1e-8);
}

TEST_CASE("spectral projectors: completeness and derivative identities")
{
    const OpenParams p{0.3, -1.0, 1.0, 50.0, 0.2, 0.05};
    for (double s : {0.0, 0.25, 0.5, 0.8, 1.0}) {
        const auto P = spectral_projectors(p, s);
        const auto dP = spectral_projector_derivatives(p, s);
        Mat4c sum = Mat4c::Zero(), dsum = Mat4c::Zero(), comm = Mat4c::Zero();
        for (int n = 0; n < 4; ++n) {
            sum += P[n];
            dsum += dP[n];
            comm += dP[n] * P[n] - P[n] * dP[n];
            CHECK(max_abs(P[n] * P[n] - P[n]) < 1e-12);
            for (int m = 0; m < 4; ++m)
                if (m != n)
                    CHECK(max_abs(P[n] * P[m]) < 1e-12);
            // P dP P = 0 for a projector family
            CHECK(max_abs(P[n] * dP[n] * P[n]) < 1e-8);
        }
        CHECK(max_abs(sum - Mat4c::Identity()) < 1e-12);
        CHECK(max_abs(dsum) < 1e-8);
        CHECK(std::abs(comm.trace()) < 1e-8);
        // Richardson-extrapolated reference from two coarse steps
        const auto dh = spectral_projector_derivatives(p, s, 2e-3);
        const auto dh2 = spectral_projector_derivatives(p, s, 1e-3);
        for (int n = 0; n < 4; ++n)
            CHECK(max_abs(dP[n] - (4.0 * dh2[n] - dh[n]) / 3.0) < 1e-7);
    }
}

TEST_CASE("full_intertwiner: intertwining and kernel transport")
{
    for (double tf : {5.0, 50.0}) {
        const OpenParams p{0.3, -1.0, 1.0, tf, 0.2, 0.05};
        const auto P0 = spectral_projectors(p, 0.0);
        for (double s : {0.3, 1.0}) {
            const Superoperator u = full_intertwiner(p, s, kTight);
            const auto Ps = spectral_projectors(p, s);
            for (int n = 0; n < 4; ++n)
                CHECK(max_abs(u.cast<cplx>() * P0[n] - Ps[n] * u.cast<cplx>()) < 1e-6);

            const KernelPath path = davies_kernel_path(p);
            CHECK((u * path.R1(0.0) - path.R1(s * tf)).norm() < 1e-8);
            CHECK(cptp_diagnostics(u).trace_error < 1e-10);
        }
    }
}

TEST_CASE("full_intertwiner: tolerance self-consistency")
{
    const OpenParams p{1.0, -1.0, 1.0, 100.0, 0.05, 0.01};
    const Superoperator a = full_intertwiner(p, 1.0, kTight);
    const Superoperator b = full_intertwiner(p, 1.0, {1e-10, 1e-12});
    CHECK(max_abs(a - b) < 1e-8);
}

TEST_CASE("choi_matrix and cptp_diagnostics on known maps")
{
    const Mat4c c = choi_matrix(Superoperator::Identity());
    const HermitianEig e = eig_hermitian(c);
    CHECK(e.values[0] == Approx(0.0).epsilon(1e-15));
    CHECK(std::abs(e.values[1]) < 1e-15);
    CHECK(std::abs(e.values[2]) < 1e-15);
    CHECK(e.values[3] == Approx(2.0).epsilon(1e-15));
    CHECK(cptp_diagnostics(Superoperator::Identity()).trace_error == 0.0);

    Superoperator dep = Superoperator::Zero();
    dep(0, 0) = 1.0;
    const HermitianEig ed = eig_hermitian(choi_matrix(dep));
    for (int i = 0; i < 4; ++i)
        CHECK(ed.values[i] == Approx(0.5).epsilon(1e-14));

    CHECK(cptp_diagnostics(transpose_map()).min_choi_eig == Approx(-1.0).epsilon(1e-14));

    Superoperator leak = Superoperator::Identity();
    leak(0, 0) = 0.9;
    CHECK(cptp_diagnostics(leak).trace_error == Approx(0.1 * std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("exact propagator is CPTP and composes")
{
    const OpenParams p{0.1, -1.0, 1.0, 200.0, 0.05, 0.01};
    const Superoperator e = master_propagator(p, 0.0, p.t_f, kTight);
    const CptpDiagnostics d = cptp_diagnostics(e);
    CHECK(d.trace_error < 1e-12);
    CHECK(d.min_choi_eig > -1e-10);
    const Superoperator e1 = master_propagator(p, 0.0, 70.0, kTight);
    const Superoperator e2 = master_propagator(p, 70.0, p.t_f, kTight);
    CHECK(max_abs(e2 * e1 - e) < 1e-9);
}

TEST_CASE("pauli_probe_distance")
{
    Superoperator dep = Superoperator::Zero();
    dep(0, 0) = 1.0;
    CHECK(pauli_probe_distance(Superoperator::Identity(), Superoperator::Identity()) == 0.0);
    CHECK(pauli_probe_distance(Superoperator::Identity(), dep) == Approx(1.0).epsilon(1e-15));
    CHECK(pauli_probe_distance(dep, Superoperator::Identity()) == Approx(1.0).epsilon(1e-15));
    CHECK(pauli_probe_distance(Superoperator::Identity(), transpose_map()) == Approx(2.0).epsilon(1e-15));
}

TEST_CASE("intertwiner approaches the exact map when t_f doubles")
{
    const OpenParams p{1.0, -1.0, 1.0, 1.0, 0.05, 0.01};
    const ClosenessSweep s = closeness_bound_check(p, {200.0, 400.0, 800.0}, kTight);
    CHECK(s.norm[1] < s.norm[0]);
    const double ratio = s.norm[2] / s.norm[1];
    CHECK(ratio > 0.3);
    CHECK(ratio < 0.7);
    for (double v : s.min_choi_eig)
        CHECK(v > -1e-10);

    const OpenParams q{1.0, -1.0, 1.0, 1.0, 0.05, 0.0};
    const ClosenessSweep u = closeness_bound_check(q, {100.0, 200.0, 400.0}, kTight);
    CHECK(u.norm[2] < u.norm[1]);
    CHECK(u.norm[1] < u.norm[0]);

    CHECK_THROWS(closeness_bound_check(p, {100.0, 200.0}));
}
