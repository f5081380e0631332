#include "sad/metrics.hpp"

#include <cfloat>
#include <cmath>
#include <stdexcept>

namespace sad {

ProbMap ProbMap::from_map(const SaliencyMap& map) {
    ProbMap p;
    p.width = map.width;
    p.height = map.height;
    p.weights.resize(map.data.size());
    double sum = 0;
    for (std::uint8_t v : map.data) sum += v;
    if (sum <= 0) throw std::invalid_argument("cannot normalize an all-zero map");
    for (std::size_t i = 0; i < map.data.size(); ++i) p.weights[i] = map.data[i] / sum;
    return p;
}

double cc(const SaliencyMap& pred, const SaliencyMap& gt) {
    if (pred.width != gt.width || pred.height != gt.height)
        throw std::invalid_argument("cc: dimension mismatch");
    const std::size_t n = pred.data.size();
    double mp = 0, mg = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mp += pred.data[i];
        mg += gt.data[i];
    }
    mp /= double(n);
    mg /= double(n);
    double spg = 0, spp = 0, sgg = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double dp = pred.data[i] - mp, dg = gt.data[i] - mg;
        spg += dp * dg;
        spp += dp * dp;
        sgg += dg * dg;
    }
    if (spp <= 0 || sgg <= 0) throw std::invalid_argument("cc: constant input map");
    return spg / std::sqrt(spp * sgg);
}

double sim(const ProbMap& pred, const ProbMap& gt) {
    if (pred.width != gt.width || pred.height != gt.height)
        throw std::invalid_argument("sim: dimension mismatch");
    double s = 0;
    for (std::size_t i = 0; i < pred.weights.size(); ++i)
        s += pred.weights[i] < gt.weights[i] ? pred.weights[i] : gt.weights[i];
    return s;
}

double kld(const ProbMap& pred, const ProbMap& gt) {
    if (pred.width != gt.width || pred.height != gt.height)
        throw std::invalid_argument("kld: dimension mismatch");
    constexpr double eps = DBL_EPSILON;
    double s = 0;
    for (std::size_t i = 0; i < pred.weights.size(); ++i) {
        double g = gt.weights[i];
        if (g > 0) s += g * std::log(g / (pred.weights[i] + eps) + eps);
    }
    return s;
}

double nss(const SaliencyMap& pred, const FixationMap& fix) {
    if (pred.width != fix.width || pred.height != fix.height)
        throw std::invalid_argument("nss: dimension mismatch");
    if (fix.fixations.empty()) throw std::invalid_argument("nss: empty fixation set");
    const std::size_t n = pred.data.size();
    if (n < 2) throw std::invalid_argument("nss: map too small to standardize");
    double mean = 0;
    for (std::uint8_t v : pred.data) mean += v;
    mean /= double(n);
    double ss = 0;
    for (std::uint8_t v : pred.data) ss += (v - mean) * (v - mean);
    double sd = std::sqrt(ss / double(n - 1));
    if (sd <= 0) throw std::invalid_argument("nss: zero-variance prediction");
    double s = 0;
    for (auto [r, c] : fix.fixations) {
        if (r < 0 || r >= pred.height || c < 0 || c >= pred.width)
            throw std::invalid_argument("nss: fixation outside map bounds");
        s += (pred.at(r, c) - mean) / sd;
    }
    return s / double(fix.fixations.size());
}

namespace {

ProbMap downsample(const ProbMap& p, int target) {
    int longer = p.width > p.height ? p.width : p.height;
    int block = (longer + target - 1) / target;
    if (block <= 1) return p;
    ProbMap out;
    out.width = (p.width + block - 1) / block;
    out.height = (p.height + block - 1) / block;
    out.weights.assign(std::size_t(out.width) * out.height, 0.0);
    double total = 0;
    for (int r = 0; r < out.height; ++r)
        for (int c = 0; c < out.width; ++c) {
            double s = 0;
            int count = 0;
            for (int rr = r * block; rr < (r + 1) * block && rr < p.height; ++rr)
                for (int cc = c * block; cc < (c + 1) * block && cc < p.width; ++cc) {
                    s += p.at(rr, cc);
                    ++count;
                }
            double v = s / count;
            out.weights[std::size_t(r) * out.width + c] = v;
            total += v;
        }
    for (auto& w : out.weights) w /= total;
    return out;
}

} // namespace

double emd(const ProbMap& pred, const ProbMap& gt, int downsample_to) {
    if (pred.width != gt.width || pred.height != gt.height)
        throw std::invalid_argument("emd: dimension mismatch");
    if (downsample_to < 1) throw std::invalid_argument("emd: downsample_to must be >= 1");
    ProbMap a = downsample(pred, downsample_to);
    ProbMap b = downsample(gt, downsample_to);

    struct Cell {
        int row, col;
        double w;
    };
    std::vector<Cell> src, dst;
    for (int r = 0; r < a.height; ++r)
        for (int c = 0; c < a.width; ++c)
            if (a.at(r, c) > 0) src.push_back({r, c, a.at(r, c)});
    for (int r = 0; r < b.height; ++r)
        for (int c = 0; c < b.width; ++c)
            if (b.at(r, c) > 0) dst.push_back({r, c, b.at(r, c)});

    std::vector<double> supply(src.size()), demand(dst.size());
    for (std::size_t i = 0; i < src.size(); ++i) supply[i] = src[i].w;
    for (std::size_t j = 0; j < dst.size(); ++j) demand[j] = dst[j].w;
    std::vector<double> cost(src.size() * dst.size());
    for (std::size_t i = 0; i < src.size(); ++i)
        for (std::size_t j = 0; j < dst.size(); ++j) {
            double dr = src[i].row - dst[j].row, dc = src[i].col - dst[j].col;
            cost[i * dst.size() + j] = std::sqrt(dr * dr + dc * dc);
        }
    return detail::transport_cost(supply, demand, cost);
}

MetricReport evaluate(const SaliencyMap& pred, const SaliencyMap& gt, const FixationMap* fix,
                      int emd_downsample) {
    MetricReport rep;
    ProbMap p = ProbMap::from_map(pred);
    ProbMap g = ProbMap::from_map(gt);
    rep.emd = emd(p, g, emd_downsample);
    rep.cc = cc(pred, gt);
    if (fix) rep.nss = nss(pred, *fix);
    rep.kld = kld(p, g);
    rep.sim = sim(p, g);
    return rep;
}

} // namespace sad
