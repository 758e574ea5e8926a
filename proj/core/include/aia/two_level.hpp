#pragma once

#include "aia/numkit.hpp"

namespace aia {

// Two-level evolution written in the instantaneous eigenbasis {g(t), e(t)}
// with the dynamical phases divided out:
//
//   psi(t) = a_g e^{-i delta_g(t)} g(t) + a_e e^{-i delta_e(t)} e(t)
//   a_g' =  conj(c) e^{-i phi} a_e
//   a_e' = -c e^{+i phi} a_g
//
// with c = <e|d_t g> and phi = delta_e - delta_g. Both eigenvectors must have
// zero Berry connection. The amplitudes vary on the scale of the coupling
// instead of the gap, which keeps long sweeps accurate at modest tolerance.
struct FrameAmplitudes {
    cplx a_g;
    cplx a_e;
    double phi; // delta_e - delta_g at the final time
};

// phi(t) supplied in closed form.
template <class Coupling, class Phase>
FrameAmplitudes evolve_frame(Coupling&& coupling, Phase&& phi, double t_f, const OdeOptions& opt)
{
    auto rhs = [&](double t, const Vec2c& a) {
        const cplx c = coupling(t);
        const cplx rot = std::polar(1.0, phi(t));
        return Vec2c(std::conj(c) * std::conj(rot) * a[1], -c * rot * a[0]);
    };
    const Vec2c a = integrate_ode(rhs, Vec2c(1.0, 0.0), 0.0, t_f, opt);
    return {a[0], a[1], phi(t_f)};
}

// phi integrated alongside the amplitudes from the gap E_e - E_g.
template <class Coupling, class Gap>
FrameAmplitudes evolve_frame_gap(Coupling&& coupling, Gap&& gap, double t_f, const OdeOptions& opt)
{
    using Vec3c = Eigen::Vector3cd;
    auto rhs = [&](double t, const Vec3c& y) {
        const cplx c = coupling(t);
        const cplx rot = std::polar(1.0, y[2].real());
        return Vec3c(std::conj(c) * std::conj(rot) * y[1], -c * rot * y[0], cplx(gap(t), 0.0));
    };
    const Vec3c y = integrate_ode(rhs, Vec3c(1.0, 0.0, 0.0), 0.0, t_f, opt);
    return {y[0], y[1], y[2].real()};
}

} // namespace aia
