#ifndef SAD_METRICS_HPP
#define SAD_METRICS_HPP

#include <optional>
#include <vector>

#include "sad/image.hpp"

namespace sad {

// Sum-normalized nonnegative weights over a grid.
struct ProbMap {
    int width = 0;
    int height = 0;
    std::vector<double> weights; // sums to 1

    static ProbMap from_map(const SaliencyMap& map); // rejects all-zero maps

    double at(int row, int col) const {
        return weights[std::size_t(row) * width + col];
    }
};

// Table row: EMD down, CC up, NSS up, KLD down, SIM up.
struct MetricReport {
    double emd = 0;
    double cc = 0;
    std::optional<double> nss; // absent without fixations
    double kld = 0;
    double sim = 0;
};

// Pearson correlation over all pixels. Both maps must be non-constant.
double cc(const SaliencyMap& pred, const SaliencyMap& gt);

// Histogram intersection, sum of per-cell minima; in [0,1].
double sim(const ProbMap& pred, const ProbMap& gt);

// sum(gt * log(gt / (pred + eps) + eps)), eps = DBL_EPSILON.
double kld(const ProbMap& pred, const ProbMap& gt);

// Mean of the standardized prediction (sample std, N-1) at fixations.
double nss(const SaliencyMap& pred, const FixationMap& fix);

// Exact optimal transport between the two distributions after block-average
// downsampling so the longer side <= downsample_to. Ground distance is the
// Euclidean distance between cell centers in downsampled cell units.
double emd(const ProbMap& pred, const ProbMap& gt, int downsample_to = 32);

MetricReport evaluate(const SaliencyMap& pred, const SaliencyMap& gt,
                      const FixationMap* fix = nullptr, int emd_downsample = 32);

namespace detail {
// Minimum transport cost between supply and demand (both sum to the same
// total) with dense per-pair costs, cost[i * demand.size() + j].
double transport_cost(const std::vector<double>& supply, const std::vector<double>& demand,
                      const std::vector<double>& cost);
} // namespace detail

} // namespace sad

#endif
