#include "sad/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numeric>
#include <stdexcept>

#include "sad/rng.hpp"

namespace sad {

namespace {

constexpr int kF = TinyClassifier::kFilters;
constexpr int kK = TinyClassifier::kKernel;
constexpr int kC = TinyClassifier::kChannels;

void check_input(const TinyClassifier& m, const std::vector<double>& img) {
    if ((int)img.size() != m.input_count())
        throw std::invalid_argument("classifier input size mismatch");
}

// img layout matches RasterImage: [row][col][channel].
void conv_forward(const TinyClassifier& m, const std::vector<double>& img,
                  std::vector<double>& pre) {
    const int in = m.input_size, cs = m.conv_size();
    pre.assign(std::size_t(kF) * cs * cs, 0.0);
    for (int f = 0; f < kF; ++f) {
        const double* w = &m.conv_w[std::size_t(f) * kC * kK * kK];
        for (int r = 0; r < cs; ++r)
            for (int c = 0; c < cs; ++c) {
                double acc = m.conv_b[f];
                for (int ch = 0; ch < kC; ++ch)
                    for (int ky = 0; ky < kK; ++ky)
                        for (int kx = 0; kx < kK; ++kx)
                            acc += w[(ch * kK + ky) * kK + kx] *
                                   img[(std::size_t(r + ky) * in + (c + kx)) * kC + ch];
                pre[(std::size_t(f) * cs + r) * cs + c] = acc;
            }
    }
}

void pool_forward(const TinyClassifier& m, const std::vector<double>& pre,
                  std::vector<double>& feat) {
    const int cs = m.conv_size(), ps = m.pool_size();
    feat.assign(m.feature_count(), 0.0);
    for (int f = 0; f < kF; ++f)
        for (int pr = 0; pr < ps; ++pr)
            for (int pc = 0; pc < ps; ++pc) {
                double s = 0;
                for (int dr = 0; dr < 2; ++dr)
                    for (int dc = 0; dc < 2; ++dc) {
                        double v = pre[(std::size_t(f) * cs + 2 * pr + dr) * cs + 2 * pc + dc];
                        s += v > 0 ? v : 0;
                    }
                feat[(std::size_t(f) * ps + pr) * ps + pc] = s / 4.0;
            }
}

// Push feature-space gradients back through pool + ReLU into conv-output space.
void pool_backward(const TinyClassifier& m, const std::vector<double>& pre,
                   const std::vector<double>& dfeat, std::vector<double>& dpre) {
    const int cs = m.conv_size(), ps = m.pool_size();
    dpre.assign(pre.size(), 0.0);
    for (int f = 0; f < kF; ++f)
        for (int pr = 0; pr < ps; ++pr)
            for (int pc = 0; pc < ps; ++pc) {
                double g = dfeat[(std::size_t(f) * ps + pr) * ps + pc] / 4.0;
                for (int dr = 0; dr < 2; ++dr)
                    for (int dc = 0; dc < 2; ++dc) {
                        std::size_t i = (std::size_t(f) * cs + 2 * pr + dr) * cs + 2 * pc + dc;
                        if (pre[i] > 0) dpre[i] += g;
                    }
            }
}

std::vector<double> conv_backward_input(const TinyClassifier& m, const std::vector<double>& dpre) {
    const int in = m.input_size, cs = m.conv_size();
    std::vector<double> dimg(m.input_count(), 0.0);
    for (int f = 0; f < kF; ++f) {
        const double* w = &m.conv_w[std::size_t(f) * kC * kK * kK];
        for (int r = 0; r < cs; ++r)
            for (int c = 0; c < cs; ++c) {
                double g = dpre[(std::size_t(f) * cs + r) * cs + c];
                if (g == 0) continue;
                for (int ch = 0; ch < kC; ++ch)
                    for (int ky = 0; ky < kK; ++ky)
                        for (int kx = 0; kx < kK; ++kx)
                            dimg[(std::size_t(r + ky) * in + (c + kx)) * kC + ch] +=
                                g * w[(ch * kK + ky) * kK + kx];
            }
    }
    return dimg;
}

std::vector<double> fc_backward_features(const TinyClassifier& m,
                                         const std::vector<double>& dlogits) {
    const int nf = m.feature_count();
    std::vector<double> dfeat(nf, 0.0);
    for (int k = 0; k < m.class_count; ++k) {
        double g = dlogits[k];
        if (g == 0) continue;
        const double* w = &m.fc_w[std::size_t(k) * nf];
        for (int i = 0; i < nf; ++i) dfeat[i] += g * w[i];
    }
    return dfeat;
}

std::vector<double> backprop_to_input(const TinyClassifier& m, const std::vector<double>& conv_pre,
                                      const std::vector<double>& dlogits) {
    std::vector<double> dfeat = fc_backward_features(m, dlogits);
    std::vector<double> dpre;
    pool_backward(m, conv_pre, dfeat, dpre);
    return conv_backward_input(m, dpre);
}

} // namespace

TinyClassifier TinyClassifier::init(int input_size, int class_count, std::uint64_t seed) {
    if (input_size < kKernel + 1) throw std::invalid_argument("input size too small");
    if (class_count < 2) throw std::invalid_argument("need at least 2 classes");
    TinyClassifier m;
    m.input_size = input_size;
    m.class_count = class_count;
    m.conv_w.resize(std::size_t(kF) * kC * kK * kK);
    m.conv_b.assign(kF, 0.0);
    m.fc_w.resize(std::size_t(class_count) * m.feature_count());
    m.fc_b.assign(class_count, 0.0);
    Rng rng(seed);
    double conv_lim = std::sqrt(6.0 / (kC * kK * kK + kF * kK * kK));
    for (auto& w : m.conv_w) w = (rng.next_double() * 2 - 1) * conv_lim;
    double fc_lim = std::sqrt(6.0 / (m.feature_count() + class_count));
    for (auto& w : m.fc_w) w = (rng.next_double() * 2 - 1) * fc_lim;
    return m;
}

ForwardTrace forward_trace(const TinyClassifier& m, const std::vector<double>& img) {
    check_input(m, img);
    ForwardTrace t;
    conv_forward(m, img, t.conv_pre);
    pool_forward(m, t.conv_pre, t.features);
    const int nf = m.feature_count();
    t.logits.resize(m.class_count);
    for (int k = 0; k < m.class_count; ++k) {
        double acc = m.fc_b[k];
        const double* w = &m.fc_w[std::size_t(k) * nf];
        for (int i = 0; i < nf; ++i) acc += w[i] * t.features[i];
        t.logits[k] = acc;
    }
    return t;
}

std::vector<double> forward(const TinyClassifier& m, const std::vector<double>& img) {
    return forward_trace(m, img).logits;
}

int predict(const TinyClassifier& m, const std::vector<double>& img) {
    std::vector<double> z = forward(m, img);
    return int(std::max_element(z.begin(), z.end()) - z.begin());
}

std::vector<double> softmax(const std::vector<double>& logits) {
    double hi = *std::max_element(logits.begin(), logits.end());
    std::vector<double> p(logits.size());
    double sum = 0;
    for (std::size_t i = 0; i < logits.size(); ++i) {
        p[i] = std::exp(logits[i] - hi);
        sum += p[i];
    }
    for (auto& v : p) v /= sum;
    return p;
}

double cross_entropy(const std::vector<double>& logits, int label) {
    if (label < 0 || label >= (int)logits.size())
        throw std::invalid_argument("label out of range");
    double hi = *std::max_element(logits.begin(), logits.end());
    double sum = 0;
    for (double z : logits) sum += std::exp(z - hi);
    return std::log(sum) - (logits[label] - hi);
}

std::vector<double> input_gradient(const TinyClassifier& m, const std::vector<double>& img,
                                   int true_class) {
    if (true_class < 0 || true_class >= m.class_count)
        throw std::invalid_argument("label out of range");
    ForwardTrace t = forward_trace(m, img);
    std::vector<double> dlogits = softmax(t.logits);
    dlogits[true_class] -= 1.0;
    return backprop_to_input(m, t.conv_pre, dlogits);
}

std::vector<double> logit_input_gradient(const TinyClassifier& m, const std::vector<double>& img,
                                         const ForwardTrace& trace, int k) {
    check_input(m, img);
    if (k < 0 || k >= m.class_count) throw std::invalid_argument("logit index out of range");
    std::vector<double> dlogits(m.class_count, 0.0);
    dlogits[k] = 1.0;
    return backprop_to_input(m, trace.conv_pre, dlogits);
}

double param_gradients(const TinyClassifier& m, const std::vector<double>& img, int label,
                       ParamGradients& out) {
    if (label < 0 || label >= m.class_count) throw std::invalid_argument("label out of range");
    ForwardTrace t = forward_trace(m, img);
    double loss = cross_entropy(t.logits, label);
    std::vector<double> dlogits = softmax(t.logits);
    dlogits[label] -= 1.0;

    const int nf = m.feature_count();
    out.fc_w.assign(m.fc_w.size(), 0.0);
    out.fc_b.assign(m.fc_b.size(), 0.0);
    for (int k = 0; k < m.class_count; ++k) {
        out.fc_b[k] = dlogits[k];
        double* gw = &out.fc_w[std::size_t(k) * nf];
        for (int i = 0; i < nf; ++i) gw[i] = dlogits[k] * t.features[i];
    }

    std::vector<double> dfeat = fc_backward_features(m, dlogits);
    std::vector<double> dpre;
    pool_backward(m, t.conv_pre, dfeat, dpre);

    const int in = m.input_size, cs = m.conv_size();
    out.conv_w.assign(m.conv_w.size(), 0.0);
    out.conv_b.assign(m.conv_b.size(), 0.0);
    for (int f = 0; f < kF; ++f) {
        double* gw = &out.conv_w[std::size_t(f) * kC * kK * kK];
        for (int r = 0; r < cs; ++r)
            for (int c = 0; c < cs; ++c) {
                double g = dpre[(std::size_t(f) * cs + r) * cs + c];
                if (g == 0) continue;
                out.conv_b[f] += g;
                for (int ch = 0; ch < kC; ++ch)
                    for (int ky = 0; ky < kK; ++ky)
                        for (int kx = 0; kx < kK; ++kx)
                            gw[(ch * kK + ky) * kK + kx] +=
                                g * img[(std::size_t(r + ky) * in + (c + kx)) * kC + ch];
            }
    }
    return loss;
}

TrainStats train_tiny(TinyClassifier& m, const std::vector<LabeledImage>& data,
                      const TrainOptions& opt) {
    if (data.empty()) throw std::invalid_argument("empty training set");
    int seen = 0;
    for (const auto& s : data) {
        if (s.label < 0 || s.label >= m.class_count)
            throw std::invalid_argument("label out of range for model");
        seen |= 1 << s.label;
    }
    if ((seen & (seen - 1)) == 0) throw std::invalid_argument("need at least 2 classes present");

    std::vector<std::vector<double>> inputs;
    inputs.reserve(data.size());
    for (const auto& s : data) {
        if (s.image.width != m.input_size || s.image.height != m.input_size)
            throw std::invalid_argument("training image size mismatch");
        inputs.push_back(to_normalized(s.image));
    }

    TrainStats stats;
    Rng rng(opt.seed);
    std::vector<std::size_t> order(data.size());
    std::iota(order.begin(), order.end(), std::size_t(0));
    ParamGradients g;
    for (int epoch = 0; epoch < opt.epochs; ++epoch) {
        for (std::size_t i = order.size(); i > 1; --i)
            std::swap(order[i - 1], order[rng.next_below(i)]);
        double total = 0;
        for (std::size_t idx : order) {
            total += param_gradients(m, inputs[idx], data[idx].label, g);
            const double lr = opt.learning_rate;
            for (std::size_t i = 0; i < m.conv_w.size(); ++i) m.conv_w[i] -= lr * g.conv_w[i];
            for (std::size_t i = 0; i < m.conv_b.size(); ++i) m.conv_b[i] -= lr * g.conv_b[i];
            for (std::size_t i = 0; i < m.fc_w.size(); ++i) m.fc_w[i] -= lr * g.fc_w[i];
            for (std::size_t i = 0; i < m.fc_b.size(); ++i) m.fc_b[i] -= lr * g.fc_b[i];
        }
        stats.epoch_loss.push_back(total / double(data.size()));
    }
    int correct = 0;
    for (std::size_t i = 0; i < data.size(); ++i)
        if (predict(m, inputs[i]) == data[i].label) ++correct;
    stats.train_accuracy = double(correct) / double(data.size());
    return stats;
}

namespace {

void put_u32(std::string& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(char((v >> (8 * i)) & 0xff));
}

void put_f64(std::string& out, double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, 8);
    for (int i = 0; i < 8; ++i) out.push_back(char((bits >> (8 * i)) & 0xff));
}

std::uint32_t get_u32(const std::string& in, std::size_t& pos) {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= std::uint32_t(std::uint8_t(in[pos++])) << (8 * i);
    return v;
}

double get_f64(const std::string& in, std::size_t& pos) {
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) bits |= std::uint64_t(std::uint8_t(in[pos++])) << (8 * i);
    double v;
    std::memcpy(&v, &bits, 8);
    return v;
}

constexpr std::uint32_t kWeightsVersion = 1;

} // namespace

void save_weights(const TinyClassifier& m, const std::string& path) {
    std::string out;
    out += "SADW";
    put_u32(out, kWeightsVersion);
    put_u32(out, std::uint32_t(m.class_count));
    put_u32(out, std::uint32_t(m.input_size));
    for (double v : m.conv_w) put_f64(out, v);
    for (double v : m.conv_b) put_f64(out, v);
    for (double v : m.fc_w) put_f64(out, v);
    for (double v : m.fc_b) put_f64(out, v);
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f.write(out.data(), std::streamsize(out.size()));
    if (!f) throw std::runtime_error("write failed: " + path);
}

TinyClassifier load_weights(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open: " + path);
    std::string in((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    if (in.size() < 16 || in.compare(0, 4, "SADW") != 0)
        throw std::runtime_error("not a weights file: " + path);
    std::size_t pos = 4;
    std::uint32_t version = get_u32(in, pos);
    if (version != kWeightsVersion) throw std::runtime_error("unsupported weights version");
    std::uint32_t classes = get_u32(in, pos);
    std::uint32_t size = get_u32(in, pos);
    if (classes < 2 || size < TinyClassifier::kKernel + 1 || size > 4096)
        throw std::runtime_error("corrupt weights header");
    TinyClassifier m;
    m.input_size = int(size);
    m.class_count = int(classes);
    std::size_t params = std::size_t(kF) * kC * kK * kK + kF +
                         std::size_t(classes) * m.feature_count() + classes;
    if (in.size() != 16 + params * 8) throw std::runtime_error("weights file truncated");
    m.conv_w.resize(std::size_t(kF) * kC * kK * kK);
    m.conv_b.resize(kF);
    m.fc_w.resize(std::size_t(classes) * m.feature_count());
    m.fc_b.resize(classes);
    for (auto& v : m.conv_w) v = get_f64(in, pos);
    for (auto& v : m.conv_b) v = get_f64(in, pos);
    for (auto& v : m.fc_w) v = get_f64(in, pos);
    for (auto& v : m.fc_b) v = get_f64(in, pos);
    return m;
}

std::vector<double> to_normalized(const RasterImage& img) {
    std::vector<double> x(img.data.size());
    for (std::size_t i = 0; i < img.data.size(); ++i) x[i] = img.data[i] / 255.0;
    return x;
}

RasterImage to_u8_image(const std::vector<double>& x, int width, int height) {
    if (x.size() != std::size_t(width) * height * 3)
        throw std::invalid_argument("normalized buffer size mismatch");
    RasterImage img;
    img.width = width;
    img.height = height;
    img.data.resize(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        double v = x[i];
        if (v < 0) v = 0;
        if (v > 1) v = 1;
        img.data[i] = std::uint8_t(std::floor(v * 255.0 + 0.5));
    }
    return img;
}

} // namespace sad
