#pragma once

#include "aia/lz_closed.hpp"
#include "aia/numkit.hpp"

#include <vector>

namespace aia {

// Transverse-field Ising chain, h(t) = h_i + (h_f - h_i) t / t_f, even-parity
// sector, split into independent pair modes k = (2j - 1) pi / L, j = 1..L/2.
struct TfiParams {
    int L = 150;
    double h_i = 0.5;
    double h_f = 1.5;
    double t_f = 1.0;

    void validate() const;
    double dh() const { return h_f - h_i; }
    double h_at(double t) const { return h_i + dh() * t / t_f; }
};

struct ModeState {
    double k;
    Vec2c psi; // basis {|0_k 0_-k>, |1_k 1_-k>}
};

using ModeRegister = std::vector<ModeState>;

struct TfiModeData {
    double k;
    double theta; // atan2(sin k, h - cos k), in [0, pi]
    double eps;   // 2 sqrt((h - cos k)^2 + sin^2 k)
};

std::vector<double> momenta(int L);
TfiModeData mode_data(double h, double k);

// 2 * H~_k = -2 [(h - cos k) sigma_z + sin k sigma_y], eigenvalues -+eps_k.
Mat2c mode_hamiltonian(double h, double k);
Vec2c mode_ground(double h, double k);  // (cos theta/2, i sin theta/2)
Vec2c mode_excited(double h, double k); // (i sin theta/2, cos theta/2)

ModeRegister ground_register(int L, double h);
double register_energy(const ModeRegister& reg, double h);

// -(L / 2 pi) * integral_0^pi eps_k dk by quadrature.
double gs_energy_thermo(double h, int L);
// The printed closed form -(L / 2 pi) 2 (1 + h) E[4h / (1 + h)^2]; kept for
// comparison only, it is half the integral above.
double gs_energy_thermo_printed(double h, int L);

// Finite L: smallest eps_k over allowed momenta. Thermodynamic: 2|h - 1|.
double tfi_gap(double h, int L, bool thermodynamic = false);

// Integral of eps_k(h(t)) dt over [t_a, t_b] (closed-form antiderivative).
double mode_phase(const TfiParams& p, double k, double t_a, double t_b);

ModeRegister evolve_register(const TfiParams& p, const OdeOptions& opt = {}, unsigned threads = 1);
// Same dynamics integrated mode by mode in the fixed pair basis.
ModeRegister evolve_register_fixed_basis(const TfiParams& p, const OdeOptions& opt = {},
                                         unsigned threads = 1);

ModeRegister adiabatic_register(const TfiParams& p);
ModeRegister aia_register(const TfiParams& p, const SwitchingTimes& st);

double register_distance(const ModeRegister& a, const ModeRegister& b);

SwitchingTimes switching_times_tfi(const TfiParams& p, int scenario);

DtauOptimum optimize_dtau_tfi(const TfiParams& p, const ModeRegister& exact, double tol = 1e-10,
                              int n_scan = 401);

} // namespace aia
