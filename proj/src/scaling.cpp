#include "wireqfi/scaling.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace wireqfi::scaling {

namespace {

void require_points(const RealVector& x, const RealVector& y) {
  if (x.size() != y.size()) throw std::invalid_argument("length mismatch");
  if (x.size() < 4) throw std::invalid_argument("at least 4 points required");
}

Real rsquared(const RealVector& y, const RealVector& yhat) {
  const Real mean = y.mean();
  Real ssr = 0.0, sst = 0.0;
  for (std::int64_t i = 0; i < y.size(); ++i) {
    ssr += (y(i) - yhat(i)) * (y(i) - yhat(i));
    sst += (y(i) - mean) * (y(i) - mean);
  }
  return sst > 0.0 ? 1.0 - ssr / sst : 1.0;
}

}  // namespace

PowerLawFit fit_power_law(const RealVector& x, const RealVector& y) {
  require_points(x, y);
  const std::int64_t n = x.size();
  RealVector lx(n), ly(n);
  for (std::int64_t i = 0; i < n; ++i) {
    if (x(i) <= 0.0 || y(i) <= 0.0)
      throw std::invalid_argument("power-law fit requires positive data");
    lx(i) = std::log(x(i));
    ly(i) = std::log(y(i));
  }
  const Real mx = lx.mean(), my = ly.mean();
  Real sxx = 0.0, sxy = 0.0;
  for (std::int64_t i = 0; i < n; ++i) {
    sxx += (lx(i) - mx) * (lx(i) - mx);
    sxy += (lx(i) - mx) * (ly(i) - my);
  }
  if (sxx <= 0.0) throw std::invalid_argument("degenerate abscissa");
  PowerLawFit fit;
  fit.exponent = sxy / sxx;
  fit.log_prefactor = my - fit.exponent * mx;
  RealVector yhat(n);
  for (std::int64_t i = 0; i < n; ++i)
    yhat(i) = fit.log_prefactor + fit.exponent * lx(i);
  fit.r2 = rsquared(ly, yhat);
  Real ssr = 0.0;
  for (std::int64_t i = 0; i < n; ++i)
    ssr += (ly(i) - yhat(i)) * (ly(i) - yhat(i));
  const Real s2 = ssr / static_cast<Real>(n - 2);
  fit.stderr_exponent = std::sqrt(s2 / sxx);
  return fit;
}

GapLawFit fit_gap_law(const RealVector& x, const RealVector& y) {
  require_points(x, y);
  const std::int64_t n = x.size();
  for (std::int64_t i = 0; i < n; ++i)
    if (x(i) <= 0.0) throw std::invalid_argument("abscissa must be positive");

  // seed: peel off 99% of the smallest value as the offset, log-log the rest
  const Real b0 = 0.99 * y.minCoeff();
  Real slope = 0.0, inter = 0.0;
  {
    RealVector lx(n), ly(n);
    for (std::int64_t i = 0; i < n; ++i) {
      lx(i) = std::log(x(i));
      ly(i) = std::log(std::max(y(i) - b0, 1e-300));
    }
    const Real mx = lx.mean(), my = ly.mean();
    Real sxx = 0.0, sxy = 0.0;
    for (std::int64_t i = 0; i < n; ++i) {
      sxx += (lx(i) - mx) * (lx(i) - mx);
      sxy += (lx(i) - mx) * (ly(i) - my);
    }
    slope = sxy / sxx;
    inter = my - slope * mx;
  }
  Eigen::Vector3d p(std::exp(inter), -slope, b0);  // (a, mu, b)

  const auto residuals = [&](const Eigen::Vector3d& q, RealVector& r) {
    for (std::int64_t i = 0; i < n; ++i)
      r(i) = y(i) - (q(0) * std::pow(x(i), -q(1)) + q(2));
  };
  RealVector r(n), rtrial(n);
  residuals(p, r);
  Real ssr = r.squaredNorm();
  Real lambda = 1e-3;
  GapLawFit fit;
  Eigen::Matrix3d JtJ;
  int accepted = 0;
  for (int it = 0; it < 500; ++it) {
    fit.iterations = it + 1;
    Eigen::MatrixXd J(n, 3);
    for (std::int64_t i = 0; i < n; ++i) {
      const Real xp = std::pow(x(i), -p(1));
      J(i, 0) = xp;
      J(i, 1) = -p(0) * std::log(x(i)) * xp;
      J(i, 2) = 1.0;
    }
    JtJ = J.transpose() * J;
    const Eigen::Vector3d g = J.transpose() * r;
    Eigen::Matrix3d Aug = JtJ;
    for (int d = 0; d < 3; ++d) Aug(d, d) += lambda * std::max(JtJ(d, d), 1e-30);
    const Eigen::Vector3d step = Aug.ldlt().solve(g);
    const Eigen::Vector3d ptrial = p + step;
    residuals(ptrial, rtrial);
    const Real ssr_trial = rtrial.squaredNorm();
    if (ssr_trial < ssr) {
      const Real rel = std::abs(ssr - ssr_trial) / std::max(ssr, 1e-300);
      p = ptrial;
      r = rtrial;
      ssr = ssr_trial;
      ++accepted;
      lambda = std::max(lambda * 0.3, 1e-12);
      if (rel < 1e-14 || step.norm() < 1e-13 * (1.0 + p.norm())) {
        fit.converged = true;
        break;
      }
    } else {
      // Rejected null proposal or exhausted damping after real progress:
      // the iterate is stationary, which is convergence for noisy data.
      if (step.norm() < 1e-13 * (1.0 + p.norm())) {
        fit.converged = accepted > 0;
        break;
      }
      lambda *= 3.0;
      if (lambda > 1e12) {
        fit.converged = accepted > 0;
        break;
      }
    }
  }
  fit.a = p(0);
  fit.mu = p(1);
  fit.b = p(2);
  RealVector yhat(n);
  for (std::int64_t i = 0; i < n; ++i)
    yhat(i) = fit.a * std::pow(x(i), -fit.mu) + fit.b;
  fit.r2 = rsquared(y, yhat);
  if (n > 3) {
    const Real s2 = ssr / static_cast<Real>(n - 3);
    const Eigen::Matrix3d cov = s2 * JtJ.inverse();
    fit.stderr_mu = std::sqrt(std::max(cov(1, 1), 0.0));
  }
  return fit;
}

}  // namespace wireqfi::scaling
