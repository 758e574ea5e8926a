#pragma once

#include "aia/lindblad_open.hpp"
#include "aia/numkit.hpp"

#include <functional>
#include <vector>

namespace aia {

// Right/left kernel vectors of a generator along a path t in [0, t_end],
// normalized so that L1(t) . R1(t) = 1.
struct KernelPath {
    std::function<Vec4d(double)> R1;
    std::function<Vec4d(double)> L1;
};

// Davies qubit kernel in physical time t in [0, t_f].
KernelPath davies_kernel_path(const OpenParams& p);

// P1(t) ... P1(t/N) P1(0) with N + 1 equally spaced factors.
Superoperator w1_projector_product(const KernelPath& path, double t, int N);

// A1(t) = L1(t) . d/dt R1(t) by central differences.
double holonomy_a1(const KernelPath& path, double t, double step = 1e-6);

// Spectral projectors P_n = R_n L_n^T at rescaled time s (z = z_i + dz s).
std::array<Mat4c, 4> spectral_projectors(const OpenParams& p, double s);
// dP_n/ds by central differences of the given step.
std::array<Mat4c, 4> spectral_projector_derivatives(const OpenParams& p, double s, double step = 1e-6);

// Solution of dU/ds = (t_f L(s) + 1/2 sum_n [P_n', P_n]) U, U(0) = 1.
Superoperator full_intertwiner(const OpenParams& p, double s, const OdeOptions& opt = {},
                               double fd_step = 1e-6);

// C = sum_ij E(|i><j|) (x) |i><j|, output factor first.
Mat4c choi_matrix(const Superoperator& s);

struct CptpDiagnostics {
    double trace_error;
    double min_choi_eig;
};

CptpDiagnostics cptp_diagnostics(const Superoperator& s);

// max over sigma in {1, sigma_x, sigma_y, sigma_z} of |(A - B) sigma|_1 / |sigma|_1
double pauli_probe_distance(const Superoperator& a, const Superoperator& b);

struct ClosenessSweep {
    std::vector<double> t_f;
    std::vector<double> norm;         // |E - U| per t_f
    std::vector<double> min_choi_eig; // of U per t_f
    FitResult fit;
};

ClosenessSweep closeness_bound_check(const OpenParams& p, const std::vector<double>& t_f_list,
                                     const OdeOptions& opt = {1e-12, 1e-14}, unsigned threads = 1);

} // namespace aia
