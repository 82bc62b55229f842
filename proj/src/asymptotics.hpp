#pragma once

#include <string>
#include <utility>
#include <vector>

#include "dispersion.hpp"
#include "green.hpp"

namespace latband {

// Near-threshold behaviour of the bound state falls into four regimes.
enum class Regime { d3, d4, odd_high, even_high };
Regime regime_of(int d);

// Surface area of the unit (d-1)-sphere, built from the Wallis product
// 2 pi a_{d-2} ... a_1; the amplitude constant of the edge singularity.
double unit_sphere_area(int d);

// Density-of-states amplitude at the band maximum:
// unit_sphere_area(d) / sqrt(prod_j cos(K_j/2)).  Defined only when no
// component sits at pi.
double edge_amplitude(const Quasimomentum& K);

// Leading coefficient of the bound-state offset in the regime's natural
// variable: s ~ (c1 lambda)^2 for d=3, s ~ c sigma for d=4, s ~ c1^2 lambda
// for d >= 5.  The d >= 5 value is the same function of (threshold, edge
// slope) for both parities, shared through leading_high_d.
double leading_coefficient(int d, const Quasimomentum& K, const QuadratureSpec& spec = {});
double leading_high_d(double threshold, double edge_slope);

// Coefficient of |K|^2 in the eigenvalue's momentum dependence at threshold
// coupling (d >= 5): -curvature/(2 * edge slope) - 1/4.  Exceeds -1/4.
double eigenvalue_k2_coefficient(int d, const QuadratureSpec& spec = {});

// Scale variables that replace lambda = mu - mu0 in the log-corrected
// regimes.  Entries are NaN where the regime does not define them.
struct ExpansionVariables {
  double lambda;
  double sigma;
  double tau;
  double omega;
};
ExpansionVariables expansion_variables(int d, double lambda);

struct ScanPoint {
  double s;
  double lambda;
};

// Sample the coupling-offset map at the given s grid: lambda(s) computed
// through the cancellation-free identity lambda = t^2 g / (1 - t g) with
// t the threshold coupling and g the edge gap, never as a difference of two
// couplings.
std::vector<ScanPoint> scan_coupling(const Quasimomentum& K, const std::vector<double>& s_grid,
                                     const QuadratureSpec& spec = {});

// Offset s at which the coupling excess over threshold equals lambda; the
// inverse of the scan map, again through the exact identity.
double offset_of_lambda(const Quasimomentum& K, double lambda, const QuadratureSpec& spec = {});

// Eigenvalue shift z(mu0(0), K) - e_max(0) at the zero-momentum threshold
// coupling: the band-top drop plus the offset s solving gap(K, s) =
// nu_edge(K) - nu_edge(0).  Returns 0 for K = 0.
double threshold_eigenvalue_shift(const Quasimomentum& k, const QuadratureSpec& spec = {});

struct FitReport {
  double exponent;
  double prefactor;
  double window_min;
  double window_max;
  double max_rel_dev;
};

// Least-squares line in (ln x, ln y).
FitReport fit_power_law(const std::vector<std::pair<double, double>>& points);

struct Check {
  std::string name;
  double measured;
  double predicted;
  double rel_dev;
  double tol;
  bool pass;
};

struct VerifyReport {
  std::vector<Check> checks;
  bool pass() const;
};

// Default s grids for coupling scans; `coarse` shortens them.
std::vector<double> default_coupling_grid(int d, bool coarse);

// Leading-order verification of the coupling asymptotics at fixed K:
// fits the scan in the smallest three lambda decades, checks the exponent,
// and checks the prefactor with the exponent pinned to its predicted value
// (a free intercept would leak the next-order correction into the
// prefactor through the lever arm to lambda = 1).
VerifyReport verify_coupling_asymptotics(int d, const Quasimomentum& K,
                                         const QuadratureSpec& spec = {}, bool coarse = false);

// Momentum dependence at threshold coupling: scans |K| = 2^-k along the
// given direction, extrapolates the |K|^2 coefficient of
// z(threshold, K) - e_max(0) to K -> 0, and compares against -1/4
// (d = 3, 4) or the k2 coefficient (d >= 5).
VerifyReport verify_momentum_asymptotics(int d, const std::vector<double>& direction,
                                         const QuadratureSpec& spec = {}, bool coarse = false);

}  // namespace latband
