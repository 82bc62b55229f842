#include "lattice.hpp"

#include <cmath>
#include <functional>

#include "errors.hpp"

namespace latband {

namespace {

constexpr double kPi = 3.14159265358979323846;

void neumaier_add(double& sum, double& comp, double x) {
  double t = sum + x;
  if (std::abs(sum) >= std::abs(x))
    comp += (sum - t) + x;
  else
    comp += (x - t) + sum;
  sum = t;
}

// Per-axis tables w_j[i] = c_j (1 - cos x_i) over the positive half nodes.
std::vector<std::vector<double>> axis_tables(const Quasimomentum& K, const FiniteGrid& grid) {
  std::vector<double> nodes = grid.half_nodes();
  std::vector<std::vector<double>> w(K.dim());
  for (int j = 0; j < K.dim(); ++j) {
    double c = K.weights()[j];
    w[j].resize(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) w[j][i] = c * (1.0 - std::cos(nodes[i]));
  }
  return w;
}

// sum over the half grid of 1/(base + sum_j w_j), lexicographic.
double half_grid_sum(const std::vector<std::vector<double>>& w, double base) {
  const int d = static_cast<int>(w.size());
  double sum = 0.0, comp = 0.0;
  std::function<void(int, double)> rec = [&](int axis, double part) {
    const std::vector<double>& t = w[axis];
    if (axis == d - 1) {
      for (double v : t) neumaier_add(sum, comp, 1.0 / (part + v));
    } else {
      for (double v : t) rec(axis + 1, part + v);
    }
  };
  rec(0, base);
  return sum + comp;
}

}  // namespace

FiniteGrid::FiniteGrid(int n_) : n(n_) {
  if (n < 2 || n % 2 != 0) throw InvalidArgument("finite grid: N must be even and >= 2");
}

double FiniteGrid::h() const { return 2.0 * kPi / n; }

std::vector<double> FiniteGrid::half_nodes() const {
  std::vector<double> x(n / 2);
  for (int i = 0; i < n / 2; ++i) x[i] = kPi * (2.0 * i + 1.0) / n;
  return x;
}

double grid_green_integral(const Quasimomentum& K, double s, const FiniteGrid& grid) {
  if (!(s > 0.0)) throw InvalidArgument("grid_green_integral: need s > 0");
  const int d = K.dim();
  double cell = 1.0;
  for (int j = 0; j < d; ++j) cell *= 2.0 * grid.h();  // h^d times the 2^d fold
  return cell * half_grid_sum(axis_tables(K, grid), s);
}

double grid_eigenvalue(double mu, const Quasimomentum& K, const FiniteGrid& grid) {
  if (!(mu > 0.0)) throw InvalidArgument("grid_eigenvalue: need mu > 0");
  const int d = K.dim();
  const auto w = axis_tables(K, grid);
  double cell = 1.0;
  for (int j = 0; j < d; ++j) cell *= 2.0 * grid.h();

  // Distance from the continuum band edge down to the top grid node; the
  // separable minimum is attained with every axis at its smallest w.
  double gap_min = 0.0;
  for (const auto& t : w) {
    double m = t[0];
    for (double v : t) m = std::min(m, v);
    gap_min += m;
  }

  // The root in delta = z - e_max(K) lies in (-gap_min, inf); substitute
  // delta = -gap_min + e^u so the whole range is a line.
  auto f = [&](double u) { return mu * cell * half_grid_sum(w, -gap_min + std::exp(u)) - 1.0; };

  double pow2pi = 1.0;
  for (int j = 0; j < d; ++j) pow2pi *= 2.0 * kPi;
  double u_hi = std::log(gap_min + 2.0 * mu * pow2pi);  // nu_N < (2pi)^d/delta there
  double f_hi = f(u_hi);
  double u_lo = std::log(std::min(mu * std::pow(grid.h(), d), 0.5 * gap_min));
  double f_lo = f(u_lo);
  for (int i = 0; i < 200 && f_lo <= 0.0; ++i) {
    u_lo -= 3.0;
    f_lo = f(u_lo);
  }
  if (f_lo <= 0.0 || f_hi >= 0.0)
    throw ConvergenceError("grid_eigenvalue: bracketing failed", f_lo);

  while (u_hi - u_lo > 0.5) {
    double u = 0.5 * (u_lo + u_hi);
    if (f(u) > 0.0)
      u_lo = u;
    else
      u_hi = u;
  }
  double u = 0.5 * (u_lo + u_hi);
  double fu = f(u);
  f_lo = f(u_lo);
  f_hi = f(u_hi);
  for (int i = 0; i < 200; ++i) {
    if (std::abs(fu) <= 1e-13) break;
    if (fu > 0.0) {
      u_lo = u;
      f_lo = fu;
    } else {
      u_hi = u;
      f_hi = fu;
    }
    double u_next = u - fu * (u_hi - u_lo) / (f_hi - f_lo);
    if (!(u_next > u_lo) || !(u_next < u_hi)) u_next = 0.5 * (u_lo + u_hi);
    u = u_next;
    fu = f(u);
  }
  return spectral_window(K).e_max - gap_min + std::exp(u);
}

double grid_edge_slope_sum(int d, int n) {
  if (d < 5) throw DomainError("grid_edge_slope_sum: sum diverges with refinement below d = 5");
  FiniteGrid grid(n);
  std::vector<double> t = grid.half_nodes();
  std::vector<double> w(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) w[i] = 2.0 * (1.0 - std::cos(t[i]));

  double dfact = 1.0;
  for (int j = 2; j <= d; ++j) dfact *= j;

  double sum = 0.0, comp = 0.0;
  // Sorted tuples i_1 <= ... <= i_d; each stands for d!/prod(run!) orderings.
  // `denom` accumulates prod(run!) along the current run of equal indices.
  std::function<void(int, std::size_t, std::size_t, double, double)> rec =
      [&](int pos, std::size_t start, std::size_t run, double denom, double part) {
        if (pos == d) {
          neumaier_add(sum, comp, dfact / denom / (part * part));
          return;
        }
        for (std::size_t i = start; i < w.size(); ++i) {
          std::size_t r = (pos > 0 && i == start) ? run + 1 : 1;
          rec(pos + 1, i, r, denom * r, part + w[i]);
        }
      };
  rec(0, 0, 0, 1.0, 0.0);

  double cell = 1.0;
  for (int j = 0; j < d; ++j) cell *= 2.0 * grid.h();
  return cell * (sum + comp);
}

}  // namespace latband
