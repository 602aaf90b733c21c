#pragma once

#include "gcap/accuracy.hpp"

namespace gcap {

// Error function family. All throw DomainError on non-finite input.
double erf(double x);
double std_normal_pdf(double x);
double std_normal_cdf(double x);

/// Owen's T function, T(h, k) = (1/2pi) * int_0^k exp(-h^2 (1+s^2)/2) / (1+s^2) ds.
/// Evaluated by adaptive Gauss-Kronrod quadrature of the defining integrand to 1e-12 absolute.
double owen_t(double h, double k);

/// Closed form of int_R exp(-p^2 t^2) erf(t) erf(q t) dt,
/// namely 2/(sqrt(pi) p) * atan(q / (p sqrt(1 + p^2 + q^2))). Even in p, odd in q.
/// Throws DomainError for p == 0, where the integral diverges.
double erf_product_integral_closed(double p, double q);

/// Same integral evaluated by adaptive quadrature over the compactified real line.
/// Throws AccuracyError if the subdivision budget runs out before `acc` is met.
double erf_product_integral_numeric(double p, double q, const AccuracySpec& acc = kDefaultAccuracy);

}  // namespace gcap
