#pragma once

#include <array>
#include <vector>

#include "klab/modes.hpp"

namespace klab {

/// Which of the four energy-function parameter choices is in force. They
/// differ only in q1 and in how much of the deviation term enters q2:
///   Basic:      q1 = 0,              q2 = -a4^2/4 - a4 a5/(2r) - V2
///   Gradient:   q1 = Dr - 2 rho',    q2 = Basic q2 - a4 dbar/(2r)
///   Mixed:      q1 = 0,              q2 = Basic q2 - a4 dbar/(2r)
///   GoodBound:  q1 = 0,              q2 = Basic q2 - (1-sigma) a4 dbar/(2r)
/// All share 2 rho' = a4 + a5/r. One evaluation path handles all four via
/// the weight sigma_eff (Basic = 1, Gradient/Mixed = 0, GoodBound = sigma).
enum class EnergyVersion { Basic, Gradient, Mixed, GoodBound };

const char* to_string(EnergyVersion v);

struct EnergyConfig {
    EnergyVersion version = EnergyVersion::Basic;
    double sigma = -1.0; // required in [0,1] for GoodBound
    double m = 0.0;      // weight exponent, >= 0
    double t = 0.5;      // small positive shift, in [0,1)
    double s = 1.0;      // radial power
    double lambda = 0.0;
    double a4 = 0.0; // feed rho and the deviation function
    double a5 = 0.0;
    double rho_anchor = 1.0; // rho(anchor) = 0

    /// Deviation weight entering q2; throws VersionParameterMissingError
    /// for GoodBound without a sigma in [0,1].
    double sigma_eff() const;
    bool has_q1() const { return version == EnergyVersion::Gradient; }
};

/// rho(r) = (a4/2)(r - anchor) + (a5/2) ln(r/anchor), so 2 rho' = a4 + a5/r.
RadialProfile rho_weight(double a4, double a5, double anchor, double r_min, double r_max);

/// Per-radius sphere integrals of the transformed modes against e^{-2rho}:
///   P = int v_m^2, K = int |dv_m/dr|^2, T = int |grad_omega v_m|^2,
///   X = int v_m dv_m/dr.
struct SphereIntegrals {
    std::vector<double> P, K, T, X;
};

struct EnergyCurve {
    std::vector<double> grid;
    std::vector<double> F;
    std::vector<double> dF_analytic;
    std::vector<double> dF_fd;
    std::array<std::vector<double>, 7> groups; // the seven summand groups of dF
    SphereIntegrals si;
};

/// F(m, r, t, s) = r^s [ K - (K+T)/2 + (q1/2) X
///                       + ((m(m+1)/r^2 - t/r + q2 + lambda)/2) P ].
/// Fills grid, F and the sphere integrals only.
EnergyCurve energy_F(const EnergyConfig& cfg, const WarpedMetric& M, const PotentialSpec& P,
                     const TransformedModes& tv);

/// Full curve: F, the seven groups of the analytic radial derivative
/// (every coefficient exact, nothing truncated), their sum dF_analytic,
/// and the finite-difference cross-check dF_fd.
EnergyCurve energy_curve(const EnergyConfig& cfg, const WarpedMetric& M, const PotentialSpec& P,
                         const TransformedModes& tv);

/// Finite-difference derivative of an already computed F column.
std::vector<double> energy_dF_fd(const EnergyCurve& curve);

/// The three summands reconstructing F(m0, r, t, 0) from the m = 0 data:
///   s1 = r^{2 m0} F(0, r, 0, 0)
///   s2 = (m0 r^{2 m0 - 1}) [X0 + (Dr - 2 rho') P0 / 2]
///   s3 = (r^{2 m0}/2) [(2 m0^2 + m0)/r^2 - t/r - (m0/r)(Dr - 2 rho' - q1)] P0
/// Their sum equals the directly assembled F(m0, r, t, 0).
struct InitialEnergyDecomposition {
    std::vector<double> grid;
    std::vector<double> s1, s2, s3;
    std::vector<double> sum;
    std::vector<double> direct;
};

InitialEnergyDecomposition initial_energy_decomposition(const EnergyConfig& cfg, double m0,
                                                        const WarpedMetric& M,
                                                        const PotentialSpec& P,
                                                        const TransformedModes& tv);

} // namespace klab
