#include "rivol/stretched_exp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/special_functions/gamma.hpp>

#include "rivol/errors.hpp"
#include "rivol/rng.hpp"

namespace rivol {

namespace {

constexpr double kGammaMin = 1e-3;
constexpr double kGammaMax = 2.0;

// Weighted LS of ln(density) on [1, -x^gamma] for fixed gamma.
// Returns SSE, or +inf when the decay coefficient comes out nonpositive.
double profile_sse(const std::vector<PdfPoint>& pts, double gamma, double* a_out,
                   double* ln_b_out) {
  double sw = 0, swz = 0, swy = 0, swzz = 0, swzy = 0;
  for (const auto& p : pts) {
    const double w = static_cast<double>(p.count);
    const double z = std::pow(p.x, gamma);
    const double y = std::log(p.density);
    sw += w;
    swz += w * z;
    swy += w * y;
    swzz += w * z * z;
    swzy += w * z * y;
  }
  const double det = sw * swzz - swz * swz;
  if (!(std::fabs(det) > 0)) return std::numeric_limits<double>::infinity();
  const double slope = (sw * swzy - swz * swy) / det;  // y ~ ln_b + slope * z
  const double ln_b = (swy - slope * swz) / sw;
  const double a = -slope;
  if (!(a > 0.0)) return std::numeric_limits<double>::infinity();
  double sse = 0;
  for (const auto& p : pts) {
    const double r = std::log(p.density) - (ln_b - a * std::pow(p.x, gamma));
    sse += static_cast<double>(p.count) * r * r;
  }
  if (a_out) *a_out = a;
  if (ln_b_out) *ln_b_out = ln_b;
  return sse;
}

}  // namespace

double StretchedExpFit::norm_c() const {
  return gamma * std::pow(a, 1.0 / gamma) / std::tgamma(1.0 / gamma);
}

double StretchedExpFit::analytic_mean() const {
  return std::tgamma(2.0 / gamma) /
         (std::tgamma(1.0 / gamma) * std::pow(a, 1.0 / gamma));
}

StretchedExpFit fit_se(const EmpiricalDistribution& dist) {
  const auto& pts = dist.pdf_points;
  if (pts.size() < 5) throw fit_error("fit_se needs at least 5 occupied bins");
  for (const auto& p : pts)
    if (!(p.density > 0.0)) throw fit_error("fit_se: nonpositive density");

  // Multistart grid over gamma, then golden-section refinement around the
  // best grid point.
  double best_gamma = 0.0, best_sse = std::numeric_limits<double>::infinity();
  for (double g = 0.05; g <= kGammaMax + 1e-12; g += 0.05) {
    const double sse = profile_sse(pts, g, nullptr, nullptr);
    if (sse < best_sse) {
      best_sse = sse;
      best_gamma = g;
    }
  }
  if (!std::isfinite(best_sse)) throw fit_error("fit_se: no admissible gamma start");

  double lo = std::max(kGammaMin, best_gamma - 0.05);
  double hi = std::min(kGammaMax, best_gamma + 0.05);
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - invphi * (hi - lo);
  double x2 = lo + invphi * (hi - lo);
  double f1 = profile_sse(pts, x1, nullptr, nullptr);
  double f2 = profile_sse(pts, x2, nullptr, nullptr);
  while (hi - lo > 1e-7) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - invphi * (hi - lo);
      f1 = profile_sse(pts, x1, nullptr, nullptr);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + invphi * (hi - lo);
      f2 = profile_sse(pts, x2, nullptr, nullptr);
    }
  }
  StretchedExpFit fit;
  fit.gamma = 0.5 * (lo + hi);
  double ln_b = 0.0;
  fit.fit_error = profile_sse(pts, fit.gamma, &fit.a, &ln_b);
  if (!std::isfinite(fit.fit_error)) throw fit_error("fit_se failed to converge");
  fit.b = std::exp(ln_b);
  fit.gamma_at_bound = fit.gamma <= kGammaMin + 1e-6 || fit.gamma >= kGammaMax - 1e-6;
  return fit;
}

double se_cdf(const StretchedExpFit& fit, double x) {
  if (!(x >= 0.0)) throw data_error("se_cdf: x must be >= 0");
  if (x == 0.0) return 0.0;
  return boost::math::gamma_p(1.0 / fit.gamma, fit.a * std::pow(x, fit.gamma));
}

double se_quantile(const StretchedExpFit& fit, double p) {
  if (!(p >= 0.0 && p < 1.0)) throw data_error("se_quantile: p must be in [0,1)");
  if (p == 0.0) return 0.0;
  const double g = boost::math::gamma_p_inv(1.0 / fit.gamma, p);
  return std::pow(g / fit.a, 1.0 / fit.gamma);
}

std::vector<double> se_sample_scaled(const StretchedExpFit& fit, std::size_t n,
                                     std::uint64_t rng_seed) {
  Rng rng(rng_seed);
  std::vector<double> out(n);
  for (auto& v : out) v = se_quantile(fit, rng.uniform());
  return out;
}

IntervalSample se_sample(const StretchedExpFit& fit, std::size_t n, std::uint64_t rng_seed) {
  std::vector<double> draws = se_sample_scaled(fit, n, rng_seed);
  for (double& v : draws) v = std::max(1.0, std::ceil(v * fit.mean_interval));
  return make_interval_sample(fit.q, std::move(draws));
}

std::vector<GammaVsQPoint> gamma_vs_q(const VolatilitySeries& vol,
                                      const std::vector<double>& q_grid,
                                      int bins_per_decade, std::size_t min_intervals) {
  std::vector<double> qs = q_grid;
  std::sort(qs.begin(), qs.end());
  std::vector<GammaVsQPoint> out;
  for (double q : qs) {
    GammaVsQPoint pt;
    pt.q = q;
    try {
      IntervalSample s = extract_intervals(vol, q);
      pt.n_intervals = s.size();
      if (s.size() < min_intervals) {
        pt.skipped = true;
      } else {
        pt.fit = fit_se(fit_pdf(s, bins_per_decade));
        pt.fit.q = q;
        pt.fit.mean_interval = s.mean_interval;
      }
    } catch (const insufficient_sample_error&) {
      pt.skipped = true;
    } catch (const fit_error&) {
      pt.skipped = true;
    }
    out.push_back(pt);
  }
  return out;
}

}  // namespace rivol
