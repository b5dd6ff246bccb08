#include "fockse/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <thread>

#include <boost/math/distributions/chi_squared.hpp>

#include "fockse/kernel.hpp"

namespace fockse {

namespace {

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

}  // namespace

CounterRng::CounterRng(const RngSpec& spec, std::uint64_t substream) {
    state_ = mix64(spec.seed + 0x9E3779B97F4A7C15ull);
    state_ ^= mix64(spec.stream_id + 0xD1B54A32D192ED03ull);
    state_ ^= mix64(substream + 0x8CB92BA72F3D8DD7ull);
}

std::uint64_t CounterRng::next_u64() {
    state_ += 0x9E3779B97F4A7C15ull;
    return mix64(state_);
}

double CounterRng::next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double inverse_cdf_single(const RateSet& rates, double u) {
    rates.validate();
    if (!(u >= 0.0 && u < 1.0)) throw std::invalid_argument("inverse_cdf_single: u outside [0,1)");
    const double g = rates.gamma_a;
    if (!rates.filtered) return -std::log1p(-u) / g;
    if (u == 0.0) return 0.0;
    const double total = detection_total(rates);
    const double target = total * (1.0 - u);
    double lo = 0.0;
    double hi = 2.0 / std::min(g, rates.Gamma);
    while (detection_tail(rates, hi) > target) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e9 / g) break;  // tail underflow territory; bisection takes over
    }
    double t = 0.5 * (lo + hi);
    for (int iter = 0; iter < 200; ++iter) {
        const double f = detection_tail(rates, t) - target;
        if (f > 0)
            lo = t;
        else
            hi = t;
        const double rho = detection_density(rates, t);
        double next = rho > 0 ? t + f / rho : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - t) <= 1e-12 * std::max(std::abs(next), 1e-30)) return next;
        t = next;
    }
    return t;
}

TrajectoryRecord sample_bundle(const RateSet& rates, int N, const RngSpec& spec,
                               std::uint64_t bundle_id) {
    rates.validate();
    if (N < 1) throw std::invalid_argument("sample_bundle: N must be >= 1");
    CounterRng rng(spec, bundle_id);
    const double keep = rates.xi * detection_total(rates);
    std::vector<std::pair<double, bool>> photons(N);
    for (auto& [time, kept] : photons) {
        kept = rng.next_unit() < keep;
        time = inverse_cdf_single(rates, rng.next_unit());
    }
    std::sort(photons.begin(), photons.end());
    TrajectoryRecord rec;
    rec.bundle_id = bundle_id;
    rec.emitted.reserve(N);
    rec.detected.reserve(N);
    for (const auto& [time, kept] : photons) {
        rec.emitted.push_back(time);
        rec.detected.push_back(kept ? 1 : 0);
        if (kept) rec.detection_times.push_back(time);
    }
    return rec;
}

TrajectoryRecord sample_bundle_cascade(const RateSet& rates, int N, const RngSpec& spec,
                                       std::uint64_t bundle_id) {
    rates.validate();
    if (rates.filtered)
        throw std::invalid_argument("sample_bundle_cascade: cascade oracle is unfiltered-only");
    if (N < 1) throw std::invalid_argument("sample_bundle_cascade: N must be >= 1");
    CounterRng rng(spec, bundle_id);
    TrajectoryRecord rec;
    rec.bundle_id = bundle_id;
    double t = 0.0;
    for (int j = 0; j < N; ++j) {
        // N - j photons still stored: total decay rate (N - j) gamma
        t += -std::log1p(-rng.next_unit()) / ((N - j) * rates.gamma_a);
        rec.emitted.push_back(t);
        rec.detected.push_back(1);
        rec.detection_times.push_back(t);
    }
    return rec;
}

std::vector<TrajectoryRecord> sample_bundles(const RateSet& rates, int N, const RngSpec& spec,
                                             std::uint64_t count, unsigned threads) {
    rates.validate();
    std::vector<TrajectoryRecord> out(count);
    if (threads <= 1 || count < 2 * threads) {
        for (std::uint64_t i = 0; i < count; ++i) out[i] = sample_bundle(rates, N, spec, i);
        return out;
    }
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (count + threads - 1) / threads;
    for (unsigned w = 0; w < threads; ++w) {
        const std::uint64_t begin = w * chunk;
        const std::uint64_t end = std::min<std::uint64_t>(count, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back([&, begin, end] {
            for (std::uint64_t i = begin; i < end; ++i) out[i] = sample_bundle(rates, N, spec, i);
        });
    }
    for (auto& th : pool) th.join();
    return out;
}

CwseStream sample_cwse_stream(const RateSet& rates, int N, double trigger_rate, double duration,
                              const RngSpec& spec) {
    rates.validate();
    if (!(trigger_rate > 0)) throw std::invalid_argument("sample_cwse_stream: rate must be > 0");
    if (duration < 0) throw std::invalid_argument("sample_cwse_stream: negative duration");
    CwseStream stream;
    stream.duration = duration;
    stream.trigger_rate = trigger_rate;
    stream.bundle_size = N;
    CounterRng trigger_rng(spec, ~std::uint64_t{0});
    double t = 0.0;
    for (;;) {
        t += -std::log1p(-trigger_rng.next_unit()) / trigger_rate;
        if (t > duration) break;
        const std::uint64_t id = stream.trigger_times.size();
        stream.trigger_times.push_back(t);
        const TrajectoryRecord rec = sample_bundle(rates, N, spec, id);
        int index = 0;
        for (double dt : rec.detection_times) {
            const double at = t + dt;
            if (at <= duration) stream.events.push_back({at, id, index});
            ++index;
        }
    }
    std::sort(stream.events.begin(), stream.events.end(),
              [](const StreamEvent& a, const StreamEvent& b) {
                  return a.absolute_time < b.absolute_time;
              });
    return stream;
}

void MomentAccumulator::add(double x) {
    ++n;
    sum += x;
    sum_sq += x * x;
}

void MomentAccumulator::merge(const MomentAccumulator& other) {
    n += other.n;
    sum += other.sum;
    sum_sq += other.sum_sq;
}

double MomentAccumulator::mean() const {
    if (n == 0) throw std::runtime_error("estimator: no data");
    return sum / static_cast<double>(n);
}

Estimate MomentAccumulator::estimate() const {
    if (n == 0) throw std::runtime_error("estimator: no data");
    const double m = mean();
    const double var = std::max(0.0, sum_sq / static_cast<double>(n) - m * m);
    const double se = n > 1 ? std::sqrt(var / static_cast<double>(n - 1)) : 0.0;
    return {m, se, n};
}

std::vector<std::uint64_t> detected_count_histogram(std::span<const TrajectoryRecord> records,
                                                    int N) {
    std::vector<std::uint64_t> hist(N + 1, 0);
    for (const auto& rec : records) {
        const std::size_t k = rec.detection_times.size();
        if (k > static_cast<std::size_t>(N))
            throw std::invalid_argument("detected_count_histogram: record larger than N");
        ++hist[k];
    }
    return hist;
}

Estimate estimate_purity(std::span<const TrajectoryRecord> records, int N) {
    if (records.empty()) throw std::runtime_error("estimator: no data");
    std::uint64_t whole = 0;
    for (const auto& rec : records)
        if (rec.detection_times.size() == static_cast<std::size_t>(N)) ++whole;
    const double n = static_cast<double>(records.size());
    const double p = static_cast<double>(whole) / n;
    return {p, std::sqrt(p * (1.0 - p) / n), records.size()};
}

Estimate estimate_mean_time(std::span<const TrajectoryRecord> records, int N, int k,
                            bool full_only) {
    if (k < 1 || k > N) throw std::out_of_range("estimate_mean_time: k out of 1..N");
    MomentAccumulator acc;
    for (const auto& rec : records) {
        const std::size_t det = rec.detection_times.size();
        if (full_only ? det == static_cast<std::size_t>(N) : det >= static_cast<std::size_t>(k))
            acc.add(rec.detection_times[k - 1]);
    }
    if (acc.n == 0) throw std::runtime_error("estimate_mean_time: no qualifying bundles");
    return acc.estimate();
}

Estimate estimate_pearson(std::span<const TrajectoryRecord> records, int N) {
    if (N < 2) throw std::invalid_argument("estimate_pearson: N must be >= 2");
    std::uint64_t n = 0;
    double s1 = 0, sN = 0, s11 = 0, sNN = 0, s1N = 0;
    for (const auto& rec : records) {
        if (rec.detection_times.size() != static_cast<std::size_t>(N)) continue;
        const double a = rec.detection_times.front();
        const double b = rec.detection_times.back();
        ++n;
        s1 += a;
        sN += b;
        s11 += a * a;
        sNN += b * b;
        s1N += a * b;
    }
    if (n < 4) throw std::runtime_error("estimate_pearson: needs full bundles");
    const double dn = static_cast<double>(n);
    const double cov = s1N / dn - (s1 / dn) * (sN / dn);
    const double v1 = s11 / dn - (s1 / dn) * (s1 / dn);
    const double vN = sNN / dn - (sN / dn) * (sN / dn);
    const double r = cov / std::sqrt(v1 * vN);
    return {r, (1.0 - r * r) / std::sqrt(dn - 3.0), n};
}

Estimate estimate_bundle_length(std::span<const TrajectoryRecord> records, int N) {
    if (N < 2) throw std::invalid_argument("estimate_bundle_length: N must be >= 2");
    MomentAccumulator acc;
    for (const auto& rec : records)
        if (rec.detection_times.size() == static_cast<std::size_t>(N))
            acc.add(rec.detection_times.back() - rec.detection_times.front());
    if (acc.n == 0) throw std::runtime_error("estimate_bundle_length: no full bundles");
    return acc.estimate();
}

std::vector<double> stream_waiting_times(std::span<const StreamEvent> events) {
    std::vector<double> gaps;
    if (events.size() < 2) return gaps;
    gaps.reserve(events.size() - 1);
    for (std::size_t i = 1; i < events.size(); ++i)
        gaps.push_back(events[i].absolute_time - events[i - 1].absolute_time);
    return gaps;
}

Estimate estimate_purity_stream(const CwseStream& stream, double margin) {
    const double cutoff = stream.duration - margin;
    std::vector<std::uint64_t> counts(stream.trigger_times.size(), 0);
    for (const auto& ev : stream.events) ++counts[ev.bundle_id];
    std::uint64_t considered = 0, whole = 0;
    for (std::size_t id = 0; id < stream.trigger_times.size(); ++id) {
        if (stream.trigger_times[id] > cutoff) continue;
        ++considered;
        if (counts[id] == static_cast<std::uint64_t>(stream.bundle_size)) ++whole;
    }
    if (considered == 0) throw std::runtime_error("estimate_purity_stream: no bundles in window");
    const double p = static_cast<double>(whole) / static_cast<double>(considered);
    return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(considered)), considered};
}

double peak_average_from_gaps(std::span<const double> gaps, double fit_lo, double fit_hi,
                              double bin_width) {
    if (gaps.empty()) throw std::runtime_error("peak_average_from_gaps: no data");
    if (!(0 < fit_lo && fit_lo < fit_hi) || !(bin_width > 0))
        throw std::invalid_argument("peak_average_from_gaps: bad fit window");
    const int bins = static_cast<int>(std::ceil(fit_hi / bin_width));
    std::vector<double> density(bins, 0.0);
    for (double g : gaps) {
        const int b = static_cast<int>(g / bin_width);
        if (b >= 0 && b < bins) density[b] += 1.0;
    }
    for (double& d : density) d /= static_cast<double>(gaps.size()) * bin_width;
    // log-linear fit of the background over the tail window
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int npts = 0;
    for (int b = 0; b < bins; ++b) {
        const double center = (b + 0.5) * bin_width;
        if (center < fit_lo || density[b] <= 0) continue;
        const double y = std::log(density[b]);
        sx += center;
        sy += y;
        sxx += center * center;
        sxy += center * y;
        ++npts;
    }
    if (npts < 2) throw std::runtime_error("peak_average_from_gaps: tail window has no counts");
    const double slope = (npts * sxy - sx * sy) / (npts * sxx - sx * sx);
    const double intercept = (sy - slope * sx) / npts;
    double wsum = 0, wtau = 0;
    for (int b = 0; b < bins; ++b) {
        const double center = (b + 0.5) * bin_width;
        const double excess = density[b] - std::exp(intercept + slope * center);
        if (excess > 0) {
            wsum += excess;
            wtau += excess * center;
        }
    }
    if (wsum <= 0) throw std::runtime_error("peak_average_from_gaps: no multiphoton excess found");
    return wtau / wsum;
}

Chi2Result chi2_goodness_of_fit(std::span<const double> samples,
                                const std::function<double(double)>& model_cdf, int bins) {
    if (bins < 2) throw std::invalid_argument("chi2: need at least 2 bins");
    if (samples.size() < static_cast<std::size_t>(5 * bins))
        throw std::runtime_error("chi2: too few samples for the requested binning");
    // Probability-transform the samples: under the model they are uniform.
    std::vector<std::uint64_t> observed(bins, 0);
    for (double x : samples) {
        double v = model_cdf(x);
        v = std::clamp(v, 0.0, std::nextafter(1.0, 0.0));
        ++observed[static_cast<int>(v * bins)];
    }
    const double expected = static_cast<double>(samples.size()) / bins;
    double stat = 0;
    for (std::uint64_t o : observed) {
        const double d = static_cast<double>(o) - expected;
        stat += d * d / expected;
    }
    boost::math::chi_squared dist(bins - 1);
    return {stat, bins - 1, boost::math::cdf(boost::math::complement(dist, stat))};
}

}  // namespace fockse
