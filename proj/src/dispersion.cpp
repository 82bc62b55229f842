#include "dispersion.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "errors.hpp"

namespace latband {

namespace {

constexpr double kPi = 3.14159265358979323846;

double wrap_component(double k) {
  if (!std::isfinite(k)) throw InvalidArgument("quasimomentum component not finite");
  double w = std::remainder(k, 2.0 * kPi);
  // remainder lands in [-pi, pi]; fold the lower endpoint onto the upper.
  if (w == -kPi) w = kPi;
  return w;
}

}  // namespace

Quasimomentum::Quasimomentum(std::vector<double> k) : k_(std::move(k)), pi_count_(0) {
  if (k_.empty()) throw InvalidArgument("quasimomentum needs dimension >= 1");
  c_.resize(k_.size());
  for (std::size_t j = 0; j < k_.size(); ++j) {
    k_[j] = wrap_component(k_[j]);
    if (k_[j] == kPi) {
      c_[j] = 0.0;
      ++pi_count_;
    } else {
      c_[j] = 2.0 * std::cos(std::fabs(k_[j]) / 2.0);
    }
  }
}

Quasimomentum::Quasimomentum(int d, const double* k)
    : Quasimomentum(std::vector<double>(k, k + (d > 0 ? d : 0))) {}

std::vector<double> Quasimomentum::sorted_weights() const {
  std::vector<double> s = c_;
  std::sort(s.begin(), s.end(), std::greater<double>());
  return s;
}

double Quasimomentum::weight_sum() const {
  double acc = 0.0;
  for (double c : c_) acc += c;
  return acc;
}

Quasimomentum Quasimomentum::zero(int d) {
  if (d < 1) throw InvalidArgument("quasimomentum needs dimension >= 1");
  return Quasimomentum(std::vector<double>(d, 0.0));
}

double dispersion(const std::vector<double>& q) {
  double acc = 0.0;
  for (double x : q) {
    if (!std::isfinite(x)) throw InvalidArgument("momentum component not finite");
    acc += 1.0 - std::cos(x);
  }
  return acc;
}

double band_energy(const Quasimomentum& K, const std::vector<double>& q) {
  if (static_cast<int>(q.size()) != K.dim())
    throw InvalidArgument("band_energy: dimension mismatch");
  const auto& c = K.weights();
  double acc = 0.0;
  for (std::size_t j = 0; j < q.size(); ++j) {
    if (!std::isfinite(q[j])) throw InvalidArgument("momentum component not finite");
    acc += 2.0 - c[j] * std::cos(q[j]);
  }
  return acc;
}

SpectralWindow spectral_window(const Quasimomentum& K) {
  double lo = 0.0, hi = 0.0;
  for (double c : K.weights()) {
    lo += 2.0 - c;
    hi += 2.0 + c;
  }
  return {lo, hi};
}

int pi_class(const Quasimomentum& K) { return K.pi_count(); }

double band_max_drop(const Quasimomentum& K) {
  double acc = 0.0;
  for (double k : K.components()) {
    double s = std::sin(std::fabs(k) / 4.0);
    acc -= 4.0 * s * s;
  }
  return acc;
}

}  // namespace latband
