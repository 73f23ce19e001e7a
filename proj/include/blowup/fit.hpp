#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace blowup {

struct LinearFit {
  std::vector<double> coef;
  double rms_residual = 0;
  double max_residual = 0;
};

// least squares y ~ sum_k coef_k basis_k(x) by Householder QR
inline LinearFit least_squares(const std::vector<double>& x, const std::vector<double>& y,
                               const std::vector<std::function<double(double)>>& basis)
{
  const std::size_t m = x.size(), n = basis.size();
  if (m != y.size() || m < n || n == 0) throw std::invalid_argument("least_squares: bad dimensions");
  std::vector<std::vector<double>> a(n, std::vector<double>(m)); // column major
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < m; ++i) a[j][i] = basis[j](x[i]);
  std::vector<double> b = y;
  for (std::size_t k = 0; k < n; ++k) {
    double norm = 0;
    for (std::size_t i = k; i < m; ++i) norm += a[k][i] * a[k][i];
    norm = std::sqrt(norm);
    if (norm == 0) throw std::domain_error("least_squares: rank deficient basis");
    double alpha = a[k][k] > 0 ? -norm : norm;
    std::vector<double> v(a[k].begin() + k, a[k].end());
    v[0] -= alpha;
    double vv = 0;
    for (double e : v) vv += e * e;
    auto reflect = [&](std::vector<double>& col) {
      double s = 0;
      for (std::size_t i = k; i < m; ++i) s += v[i - k] * col[i];
      s *= 2 / vv;
      for (std::size_t i = k; i < m; ++i) col[i] -= s * v[i - k];
    };
    for (std::size_t j = k; j < n; ++j) reflect(a[j]);
    reflect(b);
  }
  LinearFit out;
  out.coef.assign(n, 0);
  for (std::size_t k = n; k-- > 0;) {
    double s = b[k];
    for (std::size_t j = k + 1; j < n; ++j) s -= a[j][k] * out.coef[j];
    out.coef[k] = s / a[k][k];
  }
  double ss = 0;
  for (std::size_t i = 0; i < m; ++i) {
    double f = 0;
    for (std::size_t j = 0; j < n; ++j) f += out.coef[j] * basis[j](x[i]);
    double r = std::abs(y[i] - f);
    ss += r * r;
    out.max_residual = std::max(out.max_residual, r);
  }
  out.rms_residual = std::sqrt(ss / static_cast<double>(m));
  return out;
}

// slope of log|y| against log x
inline double log_log_slope(const std::vector<double>& x, const std::vector<double>& y)
{
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    lx.push_back(std::log(x[i]));
    ly.push_back(std::log(std::abs(y[i])));
  }
  return least_squares(lx, ly, {[](double) { return 1.0; }, [](double t) { return t; }}).coef[1];
}

// n points log-spaced in [lo, hi]
inline std::vector<double> geometric_points(double lo, double hi, int n)
{
  std::vector<double> out;
  for (int i = 0; i < n; ++i) out.push_back(lo * std::pow(hi / lo, n == 1 ? 0.0 : double(i) / (n - 1)));
  return out;
}

} // namespace blowup
