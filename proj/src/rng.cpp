#include "fluidcorr/rng.hpp"

namespace fluidcorr {

namespace {

double log_factorial(long k) {
  static const double table[] = {0.0,
                                 0.0,
                                 0.6931471805599453,
                                 1.791759469228055,
                                 3.1780538303479458,
                                 4.787491742782046,
                                 6.579251212010101,
                                 8.525161361065415,
                                 10.60460290274525,
                                 12.801827480081469};
  if (k < 10) return table[k];
  double x = static_cast<double>(k) + 1.0;
  // Stirling series, plenty for the acceptance test below
  return (x - 0.5) * std::log(x) - x + 0.9189385332046727 +
         1.0 / (12.0 * x) - 1.0 / (360.0 * x * x * x);
}

}  // namespace

long Rng::poisson(double rate) {
  if (!(rate > 0.0)) return 0;
  if (rate < 30.0) {
    // inversion by sequential search
    double p = std::exp(-rate);
    double cdf = p;
    double u = next_double();
    long k = 0;
    while (u > cdf && k < 10000) {
      ++k;
      p *= rate / static_cast<double>(k);
      cdf += p;
    }
    return k;
  }
  // PTRS (Hormann 1993) transformed rejection
  const double b = 0.931 + 2.53 * std::sqrt(rate);
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double v_r = 0.9277 - 3.6224 / (b - 2.0);
  for (;;) {
    double u = next_double() - 0.5;
    double v = next_open();
    double us = 0.5 - std::fabs(u);
    double k = std::floor((2.0 * a / us + b) * u + rate + 0.43);
    if (us >= 0.07 && v <= v_r) return static_cast<long>(k);
    if (k < 0.0 || (us < 0.013 && v > us)) continue;
    double lhs = std::log(v * inv_alpha / (a / (us * us) + b));
    double rhs = -rate + k * std::log(rate) - log_factorial(static_cast<long>(k));
    if (lhs <= rhs) return static_cast<long>(k);
  }
}

}  // namespace fluidcorr
