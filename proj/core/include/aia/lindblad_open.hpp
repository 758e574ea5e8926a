#pragma once

#include "aia/lz_closed.hpp"
#include "aia/numkit.hpp"

#include <array>

namespace aia {

// Landau-Zener qubit coupled through sigma_y to an Ohmic bath, Davies form.
struct OpenParams {
    double x = 0.1;
    double z_i = -1.0;
    double z_f = 1.0;
    double t_f = 1.0;
    double T = 0.05;
    double g = 0.01;

    void validate() const;
    double beta() const { return 1.0 / T; }
    double dz() const { return z_f - z_i; }
    double z_at(double t) const { return z_i + dz() * t / t_f; }
    LzParams lz() const { return {x, z_i, z_f, t_f}; }
};

// Coefficients c_i = Tr(Gamma_i rho) in Gamma = {1, sigma_x, sigma_y, sigma_z} / sqrt(2).
using CoherenceVector = Vec4d;
using Superoperator = Mat4d;

struct LiouvillianSpectrum {
    std::array<cplx, 4> l;
    std::array<Vec4c, 4> R; // right eigenvectors
    std::array<Vec4c, 4> L; // left eigenvectors, paired by the plain product L_n^T R_m
};

struct LindbladOps {
    Mat2c L0, Lp, Lm;
};

// gamma(w) = 2 pi g^2 w / (1 - exp(-beta w)); gamma(0) = 2 pi g^2 / beta.
double spectral_gamma(double w, double beta, double g);

const std::array<Mat2c, 4>& pauli_basis(); // normalized Gamma_i
Mat2c to_density(const CoherenceVector& c);
CoherenceVector from_density(const Mat2c& rho);

LindbladOps lindblad_ops(double x, double z);
Superoperator liouvillian_matrix(double x, double z, double beta, double g);
LiouvillianSpectrum liouvillian_spectrum(double x, double z, double beta, double g);
CoherenceVector steady_state(double x, double z, double beta);
double liouvillian_gap(double x, double z, double beta, double g);

// c(t_f) from the Gibbs state at z_i.
CoherenceVector evolve_master(const OpenParams& p, const OdeOptions& opt = {});
// c(t_b) from c(t_a) under the time-dependent generator.
CoherenceVector propagate_master(const OpenParams& p, const CoherenceVector& c, double t_a,
                                 double t_b, const OdeOptions& opt = {});
// Matrix of the exact map between t_a and t_b.
Superoperator master_propagator(const OpenParams& p, double t_a, double t_b,
                                const OdeOptions& opt = {});

CoherenceVector adiabatic_state_open(const OpenParams& p);

// ell_j(t_a, t_b) = integral of l_j over [t_a, t_b]
cplx integrated_eigenvalue(const OpenParams& p, int j, double t_a, double t_b);
CoherenceVector aia_state_open(const OpenParams& p, const SwitchingTimes& st);

double trace_distance(const CoherenceVector& a, const CoherenceVector& b);
double min_density_eigenvalue(const CoherenceVector& c);

SwitchingTimes switching_times_open(const OpenParams& p, int scenario);
DtauOptimum optimize_dtau_open(const OpenParams& p, const CoherenceVector& exact, double tol = 1e-10,
                               int n_scan = 401);

} // namespace aia
