#include "aia/intertwiner.hpp"

#include "aia/parallel.hpp"

namespace aia {

KernelPath davies_kernel_path(const OpenParams& p)
{
    const double beta = p.beta();
    return {
        [p, beta](double t) { return steady_state(p.x, p.z_at(t), beta); },
        [](double) { return Vec4d(std::sqrt(2.0), 0.0, 0.0, 0.0); },
    };
}

Superoperator w1_projector_product(const KernelPath& path, double t, int N)
{
    if (N < 2)
        throw std::invalid_argument("w1_projector_product: need N >= 2");
    Superoperator w = path.R1(0.0) * path.L1(0.0).transpose();
    for (int k = 1; k <= N; ++k) {
        const double tk = t * static_cast<double>(k) / N;
        w = (path.R1(tk) * path.L1(tk).transpose()) * w;
    }
    return w;
}

double holonomy_a1(const KernelPath& path, double t, double step)
{
    const Vec4d dr = (path.R1(t + step) - path.R1(t - step)) / (2.0 * step);
    return path.L1(t).dot(dr);
}

std::array<Mat4c, 4> spectral_projectors(const OpenParams& p, double s)
{
    const LiouvillianSpectrum sp = liouvillian_spectrum(p.x, p.z_i + p.dz() * s, p.beta(), p.g);
    std::array<Mat4c, 4> out;
    for (int n = 0; n < 4; ++n)
        out[n] = sp.R[n] * sp.L[n].transpose();
    return out;
}

std::array<Mat4c, 4> spectral_projector_derivatives(const OpenParams& p, double s, double step)
{
    const auto fwd = spectral_projectors(p, s + step), bwd = spectral_projectors(p, s - step);
    std::array<Mat4c, 4> out;
    for (int n = 0; n < 4; ++n)
        out[n] = (fwd[n] - bwd[n]) / (2.0 * step);
    return out;
}

Superoperator full_intertwiner(const OpenParams& p, double s, const OdeOptions& opt, double fd_step)
{
    p.validate();
    const double beta = p.beta();
    using Flat = Eigen::Matrix<double, 16, 1>;
    auto rhs = [&](double u, const Flat& y) -> Flat {
        const auto P = spectral_projectors(p, u);
        const auto dP = spectral_projector_derivatives(p, u, fd_step);
        Mat4c k = Mat4c::Zero();
        for (int n = 0; n < 4; ++n)
            k += dP[n] * P[n] - P[n] * dP[n];
        const Mat4d gen = p.t_f * liouvillian_matrix(p.x, p.z_i + p.dz() * u, beta, p.g) + 0.5 * k.real();
        const Mat4d out = gen * Eigen::Map<const Mat4d>(y.data());
        return Eigen::Map<const Flat>(out.data());
    };
    const Mat4d id = Mat4d::Identity();
    const Flat y = integrate_ode(rhs, Flat(Eigen::Map<const Flat>(id.data())), 0.0, s, opt);
    return Eigen::Map<const Mat4d>(y.data());
}

Mat4c choi_matrix(const Superoperator& s)
{
    const auto& basis = pauli_basis();
    Mat4c c = Mat4c::Zero();
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            Mat2c eij = Mat2c::Zero();
            eij(i, j) = 1.0;
            Vec4c in;
            for (int k = 0; k < 4; ++k)
                in[k] = (basis[k] * eij).trace();
            const Vec4c out = s.cast<cplx>() * in;
            Mat2c img = Mat2c::Zero();
            for (int k = 0; k < 4; ++k)
                img += out[k] * basis[k];
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    c(2 * a + i, 2 * b + j) = img(a, b);
        }
    }
    return c;
}

CptpDiagnostics cptp_diagnostics(const Superoperator& s)
{
    // tr(rho) = sqrt(2) c_1, and tr(Gamma_k) = sqrt(2) delta_k0
    double terr = 0.0;
    for (int k = 0; k < 4; ++k)
        terr = std::max(terr, std::sqrt(2.0) * std::abs(s(0, k) - (k == 0 ? 1.0 : 0.0)));
    const Mat4c c = choi_matrix(s);
    const HermitianEig e = eig_hermitian(0.5 * (c + c.adjoint()));
    return {terr, e.values[0]};
}

double pauli_probe_distance(const Superoperator& a, const Superoperator& b)
{
    double worst = 0.0;
    for (int k = 0; k < 4; ++k) {
        // sigma_k = sqrt(2) Gamma_k, trace norm 2
        const CoherenceVector out = (a - b) * (std::sqrt(2.0) * Vec4d::Unit(k));
        const HermitianEig e = eig_hermitian(to_density(out));
        worst = std::max(worst, e.values.cwiseAbs().sum() / 2.0);
    }
    return worst;
}

ClosenessSweep closeness_bound_check(const OpenParams& p, const std::vector<double>& t_f_list,
                                     const OdeOptions& opt, unsigned threads)
{
    if (t_f_list.size() < 3)
        throw std::invalid_argument("closeness_bound_check: need at least 3 values of t_f");
    ClosenessSweep out;
    out.t_f = t_f_list;
    out.norm.resize(t_f_list.size());
    out.min_choi_eig.resize(t_f_list.size());
    parallel_for(t_f_list.size(), threads, [&](std::size_t i) {
        OpenParams q = p;
        q.t_f = t_f_list[i];
        const Superoperator e = master_propagator(q, 0.0, q.t_f, opt);
        const Superoperator u = full_intertwiner(q, 1.0, opt);
        out.norm[i] = pauli_probe_distance(e, u);
        out.min_choi_eig[i] = cptp_diagnostics(u).min_choi_eig;
    });
    std::vector<std::pair<double, double>> pts;
    for (std::size_t i = 0; i < t_f_list.size(); ++i)
        pts.emplace_back(out.t_f[i], out.norm[i]);
    out.fit = fit_power_law(pts);
    return out;
}

} // namespace aia
