#pragma once

#include "aia/numkit.hpp"

namespace aia {

// H(t) = x sigma_x + z(t) sigma_z, z(t) = z_i + (z_f - z_i) t / t_f.
struct LzParams {
    double x = 0.1;
    double z_i = -1.0;
    double z_f = 1.0;
    double t_f = 1.0;

    void validate() const;
    double dz() const { return z_f - z_i; }
    double z_at(double t) const { return z_i + dz() * t / t_f; }
};

// Amplitudes (c1, c2) in the fixed sigma_z basis.
using StateVector = Vec2c;

enum class Regime { WholeIntervalImpulse, Interior, Collapsed, Reversed };

const char* regime_name(Regime r);

struct SwitchingTimes {
    double tau_minus = 0.0;
    double tau_plus = 0.0;
    Regime regime = Regime::Interior;

    double dtau() const { return tau_plus - tau_minus; }
};

struct LzEigensystem {
    double e1, e2;
    Eigen::Vector2d psi1, psi2; // real gauge, continuous in z for x > 0
};

Mat2c lz_hamiltonian(double x, double z);
LzEigensystem lz_eigensystem(double x, double z);

// Exact evolution from psi1(0). The default path integrates in the adiabatic
// frame; evolve_schrodinger_fixed_basis integrates i dc/dt = H c directly.
StateVector evolve_schrodinger(const LzParams& p, const OdeOptions& opt = {});
StateVector evolve_schrodinger_fixed_basis(const LzParams& p, const OdeOptions& opt = {});

// delta_1(t_a, t_b) = integral of E_1 over [t_a, t_b]; delta_2 = -delta_1.
double dynamical_phase_gs(const LzParams& p, double t_a, double t_b);

StateVector adiabatic_state(const LzParams& p);

double lz_m21(const LzParams& p, double t);
double lz_j21(const LzParams& p);
StateVector adiabatic_first_order(const LzParams& p);

StateVector aia_state(const LzParams& p, const SwitchingTimes& st);

SwitchingTimes switching_times(const LzParams& p, int scenario);

// tau_{opt,+-} = t_f/2 +- dtau/2
SwitchingTimes symmetric_times(double t_f, double dtau);

struct DtauOptimum {
    double dtau;
    double distance;
};

DtauOptimum optimize_dtau(const LzParams& p, const StateVector& exact, double tol = 1e-10,
                          int n_scan = 401);
DtauOptimum optimize_dtau(const LzParams& p, const OdeOptions& opt = {});

double state_distance(const Vec2c& psi, const Vec2c& phi);

} // namespace aia
