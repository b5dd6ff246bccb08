#pragma once

#include <utility>

#include "fockse/exppoly.hpp"
#include "fockse/rates.hpp"

namespace fockse {

// Statistical moments of the detection times t_k of an N-photon bundle.
// Two first-class pipelines: the closed combinatorial sums over composition
// indices, and the ExpPolynomial route that integrates the marginal
// symbolically. Both are exact on rational rates; the sums are singular at
// Gamma == gamma_a where the ExpPolynomial route takes over.

enum class MomentPipeline { combinatorial_sum, exp_poly, quadrature };

struct MomentResult {
    Rational exact;
    double value = 0.0;
    MomentPipeline pipeline = MomentPipeline::exp_poly;
};

MomentResult make_moment(Rational exact, MomentPipeline pipeline);

// <t_k^(N)>: mean detection time of the k-th photon of a fully detected
// bundle. The _sum form evaluates the triple composition sum; at the
// confluent point it routes to the ExpPolynomial pipeline.
MomentResult mean_time_sum(const RateSetQ& rates, int N, int k);
MomentResult mean_time_exact(const RateSetQ& rates, int N, int k);

// <(t_k^(N))^2>.
MomentResult second_moment_sum(const RateSetQ& rates, int N, int k);
MomentResult second_moment_exact(const RateSetQ& rates, int N, int k);

// Generic <t_k^j> through the ExpPolynomial pipeline (skewness, kurtosis and
// friends hang off this; no reference values beyond j <= 2).
Rational time_power_moment(const RateSetQ& rates, int N, int k, unsigned j);

Rational variance_exact(const RateSetQ& rates, int N, int k);
double std_dev(const RateSetQ& rates, int N, int k);

// <t_1 t_N> over the joint first/last marginal, N >= 2.
MomentResult cross_moment_first_last(const RateSetQ& rates, int N);
MomentResult cross_moment_first_last_sum(const RateSetQ& rates, int N);

// Correlation coefficients between the first and last detection times.
double pearson(const RateSetQ& rates, int N);
double reflective(const RateSetQ& rates, int N);
Rational pearson_squared_exact(const RateSetQ& rates, int N);
Rational reflective_squared_exact(const RateSetQ& rates, int N);

// Bundle time length tau_N = t_N - t_1.
struct LengthStats {
    Rational mean_exact;
    Rational variance_exact;
    double mean;
    double stddev;
};
LengthStats bundle_length_stats(const RateSetQ& rates, int N);

// Mean of the broken-bundle marginal (n-th detected photon over all
// detection outcomes with at least n photons).
Rational mean_time_broken(const RateSetQ& rates, int N, int n);

// --- unfiltered closed forms (harmonic numbers; gamma_a = 1 units) ----------

Rational unfiltered_mean(int N, int k);              // H_N - H_{N-k}
Rational unfiltered_mean_alternating(int N, int k);  // k C(N,k) sum (-1)^... /(N-l)^2
Rational unfiltered_second_moment(int N, int k);     // sigma^2 + mean^2
Rational unfiltered_second_moment_alternating(int N, int k);
Rational unfiltered_variance(int N, int k);  // H_{N,2} - H_{N-k,2}
double unfiltered_std(int N, int k);
Rational unfiltered_cross_moment(int N);  // H_N/N + 1/N^2
Rational unfiltered_cross_moment_alternating(int N);

// Bundle-length asymptote coefficients: H_{N-1} in units of 1/Gamma (small
// Gamma) and 1/gamma_a (large Gamma).
std::pair<Rational, Rational> length_asymptotes(int N);

// Multiphoton-peak average <tau~>_N of the waiting-time distribution:
// sub-bundle lengths per gap, weighted by the detected-size populations.
Rational peak_average_weighted_exact(const RateSetQ& rates, int N);
double peak_average_weighted(const RateSetQ& rates, int N);

}  // namespace fockse
