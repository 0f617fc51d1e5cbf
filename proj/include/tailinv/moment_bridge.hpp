#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tailinv/envelope.hpp"
#include "tailinv/phi_function.hpp"
#include "tailinv/saddle.hpp"
#include "tailinv/uni_lower.hpp"

namespace tailinv {

// Envelopes of the p-th norm (E|X|^p)^{1/p} as functions of p on [lo, b).
// lower(p) <= |X|_p <= upper(p).
struct MomentEnvelope {
  PhiFunction lower;
  std::optional<PhiFunction> upper;

  double b() const { return lower.domain().hi; }
};

// lambda -> lambda ln envelope(lambda): bounds on the MGF exponent of
// theta = ln|X|. Tail bounds for theta at t carry over to |X| at x = e^t, x >= e.
struct ExponentialPair {
  PhiFunction phi1;
  std::optional<PhiFunction> phi2;
  bool degenerate = false;  // phi1 vanishes identically
};

// Throws NonPositiveEnvelope when an envelope is not positive on its domain.
ExponentialPair to_exponential(const MomentEnvelope& m);

// Re-express a theta-space envelope on an x grid: value at x is the theta
// envelope at ln x; absent (NaN) below x = e.
TailEnvelope theta_to_x(const std::function<double(double)>& log_theta_env, std::span<const double> x_grid,
                        Side side, const std::string& provenance);

// C (b - p)^(-beta) on [0, b).
MomentEnvelope blowup_moments(double b, double beta, double c);
// c_low p^(1/m) <= |X|_p <= c_high p^(1/m) on [1, inf).
MomentEnvelope power_moments(double m, double c_low, double c_high);

struct PowerTailResult {
  TailEnvelope envelope;        // the chain output carried to x
  TailEnvelope power_envelope;  // C x^(-gamma) on the grid
  double c = 0;
  double gamma = 0;             // in (1, b)
  double gamma_asymptotic = 0;  // decay rate of the chain envelope as x grows
  LowerEnvelopeCertificate certificate;
};

// Lower tail bound of power form C x^(-gamma) from a blow-up moment envelope,
// through the unilateral chain in theta = ln|X|. m_surrogate bounds M[G](eps)
// for the exponential tail function of theta. The power form is certified on
// the grid points only.
PowerTailResult power_tail_lower(double b, double beta, double c, std::span<const double> x_grid, double eps,
                                 double m_surrogate);

struct WeibullRecovery {
  TailEnvelope lower;  // bilateral closure, carried to x
  TailEnvelope upper;  // exp(-phi2*(ln x))
  double c1 = 0;       // exp(-c2 x^m) <= lower <= T <= upper <= exp(-c1 x^m) on the grid
  double c2 = 0;
  double slope_upper = 0;  // log-log slope of -ln envelope
  double slope_lower = 0;  // over points where the closure is not clamped or filled
  // Common slope of both sides, intercepts fitted per side.
  double recovered_exponent = 0;
  CramerCertificate cramer;  // applied to c1 x^m
};

WeibullRecovery weibull_recovery(double m, double c_low, double c_high, std::span<const double> x_grid,
                                 double fit_lo = 2, double fit_hi = 10);

// Least-squares slope of ln(-ln T) against ln x over present points in [lo, hi].
double loglog_slope(const TailEnvelope& env, double lo, double hi);
// One slope shared by several envelopes, each with its own intercept.
double pooled_loglog_slope(std::span<const TailEnvelope> envs, double lo, double hi);

// CSV "p,lower,upper" with the upper column optional.
MomentEnvelope load_moment_csv(const std::filesystem::path& path);
MomentEnvelope moment_csv_text(const std::string& text, const std::string& source = "<memory>");

}  // namespace tailinv
