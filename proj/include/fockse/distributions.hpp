#pragma once

#include <complex>
#include <span>
#include <vector>

#include "fockse/exppoly.hpp"
#include "fockse/kernel.hpp"
#include "fockse/rates.hpp"

namespace fockse {

// --- detection efficiencies -------------------------------------------------

// Probability to detect a single SE photon in [0, T]; xi (1 - e^{-gamma T}).
double efficiency_unfiltered(const RateSet& rates, double T);

// Filtered quantum efficiency; recovers the unfiltered value as Gamma -> inf
// and xi Gamma/Gamma_+ as T -> inf. Valid at Gamma = gamma_a.
double efficiency_filtered(const RateSet& rates, double T);

// Whichever of the two applies to `rates`.
double efficiency(const RateSet& rates, double T);

// --- photon counting ---------------------------------------------------------

// p(n, T; N): binomial counting law over n = 0..N. T may be infinity.
std::vector<double> counting_distribution(const RateSet& rates, int N, double T);

// Exact-mode counting for a rational single-photon success probability.
std::vector<Rational> counting_distribution_exact(const Rational& success, int N);

// Independent oracle: Mandel's alternating normal-ordered series
//   p(n) = sum_{k=n..N} (-1)^{n+k} T^k N!/(N-k)! / (n! (k-n)!).
double counting_mandel_series(const RateSet& rates, int N, double T, int n);
Rational counting_mandel_series_exact(const Rational& success, int N, int n);

// P(k, N) = C(N,k) gamma^{N-k} Gamma^k / Gamma_+^N at infinite time, xi = 1.
double detect_probability(const RateSet& rates, int N, int k);
Rational detect_probability_exact(const RateSetQ& rates, int N, int k);

// N(n, N) = sum_{k>=n} P(k, N); evaluated both through the terminating
// hypergeometric closed form and the direct sum, which must agree exactly.
double detected_fraction(const RateSet& rates, int N, int n);
Rational detected_fraction_exact(const RateSetQ& rates, int N, int n);

// --- temporal structure -------------------------------------------------------

// The nested-integral kernel g(t) and its derivative g'(t) = -(e^{-Gamma t/2}
// - e^{-gamma t/2})^2. At the confluent point Gamma == gamma_a the raw pair
// vanishes identically and the scaled limit is returned instead: the
// normalized density kernel gamma^3 t^2 e^{-gamma t}/4 (as -derivative) and
// its antiderivative.
struct KernelPair {
    double value;
    double derivative;
};
KernelPair kernel_pair(const RateSet& rates, double t);

// Joint pdf phi^(N)(t_1..t_N) of the detection times of a fully detected
// N-photon bundle; zero off the ordered cone. Integrates to P(N, N) over the
// cone (1 when unfiltered).
double joint_density(const RateSet& rates, std::span<const double> times);

// Marginal density of the k-th detection from a fully detected N-photon
// bundle; integrates to P(N, N).
double marginal_density(const RateSet& rates, int N, int k, double t);

// Broken-bundle marginal (law of total probability over the number of
// detected photons); integrates to N(n, N).
double marginal_density_broken(const RateSet& rates, int N, int n, double t);

// Exact counterparts used by the rational moment pipeline.
ExpPolynomial marginal_exact(const RateSetQ& rates, int N, int k);
ExpPolynomial marginal_broken_exact(const RateSetQ& rates, int N, int n);

// Joint density of the first and last detections of a fully detected bundle
// (N >= 2); zero for t1 > tN. `first_last_density` evaluates the compact
// kernel form, `first_last_density_sum` the equivalent ten-index
// combinatorial expansion.
double first_last_density(const RateSet& rates, int N, double t1, double tN);
double first_last_density_sum(const RateSet& rates, int N, double t1, double tN);

// --- field-level objects -------------------------------------------------------

// Filter response Xi(t): the filtered single-photon amplitude, with
// gamma xi integral_0^T |Xi|^2 = efficiency_filtered(T).
std::complex<double> filter_response(const RateSet& rates, double t);

// Multi-time normally ordered Fock correlator
//   <a^dag(t'_1)..a^dag(t'_m) a(t_m)..a(t_1)> on |N>.
// Vanishes (flagged) when m > N.
struct CorrelatorResult {
    std::complex<double> value;
    bool past_fock_cutoff;  // true when m > N annihilated the state
};
CorrelatorResult fock_correlator(const RateSet& rates, int N, std::span<const double> primed,
                                 std::span<const double> unprimed);

}  // namespace fockse
