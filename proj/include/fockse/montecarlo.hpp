#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "fockse/rates.hpp"

namespace fockse {

// Stochastic oracle for the analytic pipelines: samples filtered N-photon
// detections and CW streams, and reduces event records to estimators with
// standard errors.

// Identifies a reproducible random stream. Identical (seed, stream_id) give
// bit-identical samples, independent of how work is split across threads.
struct RngSpec {
    std::uint64_t seed = 0;
    std::uint64_t stream_id = 0;
};

// Counter-based generator: every draw is a hash of (seed, stream, substream,
// counter), so substreams (one per bundle) are independent and parallel
// generation is deterministic.
class CounterRng {
public:
    CounterRng(const RngSpec& spec, std::uint64_t substream);

    std::uint64_t next_u64();
    double next_unit();  // uniform in [0, 1), 53-bit

private:
    std::uint64_t state_;
};

struct TrajectoryRecord {
    std::uint64_t bundle_id = 0;
    std::vector<double> emitted;          // all N candidate times, sorted
    std::vector<std::uint8_t> detected;   // flags aligned with `emitted`
    std::vector<double> detection_times;  // sorted subset that was detected
};

struct StreamEvent {
    double absolute_time = 0;
    std::uint64_t bundle_id = 0;
    int index_within_bundle = 0;
};

struct CwseStream {
    std::vector<StreamEvent> events;    // sorted by absolute_time
    std::vector<double> trigger_times;  // one entry per launched bundle
    double duration = 0;
    double trigger_rate = 0;
    int bundle_size = 0;
};

// Quantile of the normalized single-photon detection-time density. Closed
// form when unfiltered, bracketed monotone root-finding (bisection plus
// Newton polish on the analytic density) to 1e-12 relative otherwise.
double inverse_cdf_single(const RateSet& rates, double u);

// One bundle: N i.i.d. detection-time draws plus Bernoulli thinning with
// keep probability xi Gamma/Gamma_+, then sorted. The product form of the
// joint pdf makes this exactly the bundle law.
TrajectoryRecord sample_bundle(const RateSet& rates, int N, const RngSpec& spec,
                               std::uint64_t bundle_id);

// Sequential-cascade oracle for unfiltered SE: exponential waits at rates
// (N-j) gamma. A second, mechanism-independent sampler used to cross-check
// the i.i.d.-and-sort one.
TrajectoryRecord sample_bundle_cascade(const RateSet& rates, int N, const RngSpec& spec,
                                       std::uint64_t bundle_id);

std::vector<TrajectoryRecord> sample_bundles(const RateSet& rates, int N, const RngSpec& spec,
                                             std::uint64_t count, unsigned threads = 1);

// Poisson-triggered CW stream of N-photon SE (the bundler toy model).
CwseStream sample_cwse_stream(const RateSet& rates, int N, double trigger_rate, double duration,
                              const RngSpec& spec);

// --- estimators -----------------------------------------------------------

struct Estimate {
    double value = 0;
    double std_error = 0;
    std::uint64_t count = 0;
};

// Mean/variance accumulator; merge is associative so partitioned runs reduce
// to the same counts.
struct MomentAccumulator {
    std::uint64_t n = 0;
    double sum = 0;
    double sum_sq = 0;

    void add(double x);
    void merge(const MomentAccumulator& other);
    double mean() const;
    Estimate estimate() const;
};

// Histogram of the number of detected photons per bundle, bins 0..N.
std::vector<std::uint64_t> detected_count_histogram(std::span<const TrajectoryRecord> records,
                                                    int N);

// Fraction of bundles detected whole.
Estimate estimate_purity(std::span<const TrajectoryRecord> records, int N);

// Mean detection time of the k-th detected photon. `full_only` conditions on
// complete bundles (marginal phi), otherwise on >= k detections (varphi).
Estimate estimate_mean_time(std::span<const TrajectoryRecord> records, int N, int k,
                            bool full_only);

// Sample Pearson correlation of (t_1, t_N) over fully detected bundles;
// standard error from the Fisher approximation (1-r^2)/sqrt(n-3).
Estimate estimate_pearson(std::span<const TrajectoryRecord> records, int N);

// Mean bundle time length t_N - t_1 over fully detected bundles.
Estimate estimate_bundle_length(std::span<const TrajectoryRecord> records, int N);

// Gaps between successive events of a time-sorted stream.
std::vector<double> stream_waiting_times(std::span<const StreamEvent> events);

// Stream purity: fraction of triggered bundles detected whole, ignoring
// bundles triggered within `margin` of the end of the run (their photons may
// fall outside the recorded window).
Estimate estimate_purity_stream(const CwseStream& stream, double margin);

// Multiphoton-peak average of a sampled wtd: fit the uncorrelated background
// exponential on [fit_lo, fit_hi], subtract it, and average tau over the
// nonnegative residual histogram.
double peak_average_from_gaps(std::span<const double> gaps, double fit_lo = 5.0,
                              double fit_hi = 20.0, double bin_width = 0.05);

// --- goodness of fit ---------------------------------------------------------

struct Chi2Result {
    double statistic = 0;
    int dof = 0;
    double p_value = 0;
};

// Pearson chi-squared test of samples against a model CDF, equal-probability
// bins (expected count per bin = n/bins).
Chi2Result chi2_goodness_of_fit(std::span<const double> samples,
                                const std::function<double(double)>& model_cdf, int bins);

}  // namespace fockse
