#include "constellation/asymptotics.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "constellation/errors.hpp"
#include "constellation/sieve.hpp"

namespace constellation {
namespace {

// Adaptive Simpson with Richardson acceptance. eps is absolute, with a
// machine-precision relative floor so huge integrals terminate.
template <typename F>
double simpson_recurse(const F& f, double a, double b, double fa, double fm, double fb,
                       double whole, double eps, int depth) {
  const double mid = 0.5 * (a + b);
  const double lm = 0.5 * (a + mid), rm = 0.5 * (mid + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (mid - a) / 6 * (fa + 4 * flm + fm);
  const double right = (b - mid) / 6 * (fm + 4 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 ||
      std::fabs(delta) <= 15 * std::max(eps, 1e-14 * std::fabs(left + right)))
    return left + right + delta / 15;
  return simpson_recurse(f, a, mid, fa, flm, fm, left, eps / 2, depth - 1) +
         simpson_recurse(f, mid, b, fm, frm, fb, right, eps / 2, depth - 1);
}

template <typename F>
double integrate(const F& f, double a, double b, double eps) {
  if (!(b > a)) return 0.0;
  // seed with a handful of panels so the error estimate starts honest
  const int panels = 8;
  const double h = (b - a) / panels;
  double total = 0;
  for (int i = 0; i < panels; ++i) {
    const double x0 = a + i * h, x1 = x0 + h;
    const double f0 = f(x0), f1 = f(x1), fm = f(0.5 * (x0 + x1));
    const double whole = h / 6 * (f0 + 4 * fm + f1);
    total += simpson_recurse(f, x0, x1, f0, fm, f1, whole, eps / panels, 48);
  }
  return total;
}

long double int_pow(long double base, unsigned e) {
  long double r = 1;
  while (e--) r *= base;
  return r;
}

}  // namespace

double log_integral(double x, unsigned m) {
  // lower limit m+1, except m = 0 (plain primes) which starts at 2 to avoid
  // the 1/ln(u) singularity at u = 1
  const double lower = m == 0 ? 2.0 : static_cast<double>(m + 1);
  if (!(x > lower)) throw std::domain_error("log_integral: x must exceed the lower limit");
  // substitute u = e^t; the integrand e^t / t^(m+1) is smooth on a short range
  const double a = std::log(lower);
  const double b = std::log(x);
  auto f = [m](double t) { return std::exp(t) / std::pow(t, static_cast<double>(m + 1)); };
  return integrate(f, a, b, 1e-8);
}

double limit_check(double x, unsigned m) {
  if (!(x > static_cast<double>(m + 2)))
    throw std::domain_error("limit_check: x must exceed m+2");
  return std::pow(std::log(x), static_cast<double>(m + 1)) / x * log_integral(x, m);
}

Prediction predicted_count(uint64_t x, const Pattern& pattern, uint64_t trunc) {
  const unsigned m = pattern.m();
  const double li = log_integral(static_cast<double>(x), m);
  ProductValue k = k_constant(m, trunc);
  if (!is_admissible(pattern)) return {x, pattern, k, li, 0.0, INFINITY, false};
  const double pdf = collision_factor(pattern).to_double() / k.value;
  return {x, pattern, k, li, li / pdf, pdf, true};
}

MertensResult mertens(uint64_t x) {
  if (x < 2) throw std::invalid_argument("mertens: x must be >= 2");
  long double sum = 0;
  long double prod = 1;
  for_each_prime(x + 1, [&](uint64_t p) {
    sum += 1.0L / static_cast<long double>(p);
    prod *= 1.0L - 1.0L / static_cast<long double>(p);
  });
  const long double lx = logl(static_cast<long double>(x));
  return {x, static_cast<double>(sum - logl(lx)), static_cast<double>(prod * lx)};
}

double mertens_sum(uint64_t x) {
  if (x < 3) throw std::invalid_argument("mertens_sum: x must be >= 3");
  return mertens(x).sum_minus_loglog;
}

double mertens_product(uint64_t x) { return mertens(x).product_times_log; }

double sieve_model(uint64_t x, unsigned m) {
  if (m > kMaxSupportedM) throw std::domain_error("sieve_model: m must be <= 6");
  if (x < static_cast<uint64_t>(m + 2) * (m + 2))
    throw std::invalid_argument("sieve_model: x must be >= (m+2)^2");
  const uint64_t root = isqrt(x);
  long double prod = 1;
  for_each_prime(root + 1, [&](uint64_t p) {
    if (p > m + 1) prod *= 1.0L - static_cast<long double>(m + 1) / static_cast<long double>(p);
  });
  return static_cast<double>(static_cast<long double>(x) *
                             static_cast<long double>(z_product(m).to_double()) * prod);
}

double r_factor(unsigned m, uint64_t x, uint64_t k_trunc) {
  // m = 0 is the plain prime count, whose asymptotic constant is 1
  const double k = m == 0 ? 1.0 : k_constant(m, k_trunc).value;
  const long double lx = logl(static_cast<long double>(x));
  return static_cast<double>(static_cast<long double>(k) * static_cast<long double>(x) /
                             (int_pow(lx, m + 1) * static_cast<long double>(sieve_model(x, m))));
}

double h_function(uint64_t x, unsigned m) {
  if (x < static_cast<uint64_t>(m + 2) * (m + 2))
    throw std::invalid_argument("h_function: x must be >= (m+2)^2");
  const uint64_t root = isqrt(x);
  long double h = 0;
  for_each_prime(root + 1, [&](uint64_t p) {
    if (p > m + 1) h += log1pl(-static_cast<long double>(m + 1) / static_cast<long double>(p));
  });
  return static_cast<double>(h);
}

ExpansionCheck reciprocal_expansion(unsigned m, uint64_t trunc, uint64_t t_limit) {
  if (trunc < m + 2)
    throw std::invalid_argument("reciprocal_expansion: truncation must be >= m+2");
  if (t_limit < trunc)
    throw std::invalid_argument("reciprocal_expansion: t limit must be >= truncation");
  std::vector<uint64_t> primes;
  for_each_prime(trunc + 1, [&](uint64_t p) {
    if (p > m + 1) primes.push_back(p);
  });
  long double lhs = 1;
  for (uint64_t p : primes)
    lhs /= 1.0L - static_cast<long double>(m + 1) / static_cast<long double>(p);

  long double rhs = 0;
  // depth-first over the allowed-prime-smooth t; weight (m+1)^Omega(t) / t
  std::function<void(size_t, uint64_t, long double)> walk = [&](size_t i, uint64_t t,
                                                                long double w) {
    rhs += w;
    for (size_t j = i; j < primes.size(); ++j) {
      const uint64_t p = primes[j];
      if (t > t_limit / p) break;  // ascending primes: the rest overflow too
      walk(j, t * p, w * static_cast<long double>(m + 1) / static_cast<long double>(p));
    }
  };
  walk(0, 1, 1.0L);
  return {static_cast<double>(lhs), static_cast<double>(rhs)};
}

}  // namespace constellation
