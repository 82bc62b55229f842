#pragma once

#include <vector>

namespace latband {

// Energy window [e_min, e_max] swept by the band over the torus.
struct SpectralWindow {
  double e_min;
  double e_max;
};

// Total quasimomentum of the pair, canonicalized into (-pi, pi]^d.
//
// Each component carries a band weight c_j = 2 cos(K_j / 2).  A component
// exactly equal to pi kills its axis (c_j = 0), which changes the analytic
// regime, so pi is detected by exact comparison after wrapping, never with a
// tolerance.  Weights are computed from |K_j| so that sign flips reproduce
// bit-identical values.
class Quasimomentum {
public:
  explicit Quasimomentum(std::vector<double> k);
  Quasimomentum(int d, const double* k);

  int dim() const { return static_cast<int>(k_.size()); }
  const std::vector<double>& components() const { return k_; }
  const std::vector<double>& weights() const { return c_; }

  // Weights in descending order; every kernel evaluator keys off this, which
  // makes results bit-identical under axis permutations and sign flips.
  std::vector<double> sorted_weights() const;

  int pi_count() const { return pi_count_; }
  int effective_dim() const { return dim() - pi_count_; }
  double weight_sum() const;

  static Quasimomentum zero(int d);

private:
  std::vector<double> k_;
  std::vector<double> c_;
  int pi_count_;
};

// One-particle dispersion sum_j (1 - cos q_j); range [0, 2d].
double dispersion(const std::vector<double>& q);

// Two-particle band at total quasimomentum K: sum_j (2 - c_j cos q_j).
double band_energy(const Quasimomentum& K, const std::vector<double>& q);

SpectralWindow spectral_window(const Quasimomentum& K);

// Number of components exactly equal to pi.
int pi_class(const Quasimomentum& K);

// e_max(K) - e_max(0) = -sum_j 4 sin^2(K_j / 4), evaluated in this stable
// form so that tiny |K| does not cancel.
double band_max_drop(const Quasimomentum& K);

}  // namespace latband
