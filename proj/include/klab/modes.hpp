#pragma once

#include <array>
#include <span>
#include <vector>

#include "klab/geometry.hpp"
#include "klab/potential.hpp"

namespace klab {

/// Volume of the unit (n-1)-sphere, 2 pi^{n/2} / Gamma(n/2).
double unit_sphere_volume(int n);

/// One angular mode of the eigen-equation, sampled on the output grid.
/// u solves u'' + Delta r u' + (lambda - V - nu/f^2) u = 0 with
/// nu = l (l + n - 2).
struct ModeSolution {
    int l = 0;
    double nu = 0.0;
    std::vector<double> grid;
    std::vector<double> u;
    std::vector<double> du;
};

struct SolveConfig {
    double lambda = 0.0;
    int l_max = 0;
    double r_start = 0.0;
    double r_end = 0.0;
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    /// Excited mode indices and their initial data (u, u') at r_start,
    /// aligned by position. Modes not listed stay identically zero and are
    /// simply omitted from the solution set.
    std::vector<int> modes = {0};
    std::vector<std::array<double, 2>> initial = {{1.0, 0.0}};
};

/// Integrates one mode to the configured tolerances, sampled on out_grid.
/// Initial data (0,0) is rejected: the trivial solution carries no spectral
/// information.
ModeSolution integrate_mode(const WarpedMetric& M, const PotentialSpec& P, const SolveConfig& cfg,
                            int l, std::span<const double> out_grid);

/// All excited modes from cfg, integrated independently (in parallel across
/// modes); output order follows cfg.modes regardless of scheduling.
std::vector<ModeSolution> integrate_modes(const WarpedMetric& M, const PotentialSpec& P,
                                          const SolveConfig& cfg, std::span<const double> out_grid);

/// Sphere integrals of the solution and its radial derivative:
/// M2(r) = omega_{n-1} f^{n-1} sum_l u_l^2,  N2 likewise with u_l'.
struct SphereNorms {
    std::vector<double> grid;
    std::vector<double> M2;
    std::vector<double> N2;
    std::vector<std::vector<double>> per_mode_M2; // [mode][node]
    std::vector<std::vector<double>> per_mode_N2;
};

SphereNorms sphere_norms(const WarpedMetric& M, const std::vector<ModeSolution>& modes);

/// Weighted mode v_{m,l} = r^m e^{rho} u_l with the product-rule derivative
/// (no numerical differentiation).
struct TransformedMode {
    int l = 0;
    double nu = 0.0;
    std::vector<double> v;
    std::vector<double> dv;
};

struct TransformedModes {
    double m = 0.0;
    RadialProfile rho;
    std::vector<double> grid;
    std::vector<TransformedMode> modes;
    /// The untransformed solutions, kept so second derivatives can be
    /// reconstructed from the mode equation instead of stencils.
    std::vector<ModeSolution> base;
    double lambda = 0.0;
};

TransformedModes transform_v(const std::vector<ModeSolution>& modes, const RadialProfile& rho,
                             double m, double lambda);

/// Max scaled residual of the transformed equation
/// Delta v_m - (2m/r + 2 rho') dv_m/dr
///   + (m(m+1)/r^2 + (m/r)(2 rho' - Delta r) - V0 - V1 - V2 + lambda) v_m = 0
/// over all grid nodes and modes. Second derivatives come from the original
/// mode equation.
double residual_check(const WarpedMetric& M, const PotentialSpec& P, const TransformedModes& tv);

/// Residual of the raw mode equation via a three-point stencil on u,
/// scaled by the local solution size; used as a cross-representation check.
double mode_equation_residual_fd(const WarpedMetric& M, const PotentialSpec& P, double lambda,
                                 const ModeSolution& mode);

} // namespace klab
