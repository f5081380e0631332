#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sad/image.hpp"

namespace sad {

// Small convolutional classifier with analytic gradients.
// conv(3 -> 8, 3x3, stride 1, valid) -> ReLU -> 2x2 mean-pool -> fully connected.
struct TinyClassifier {
    static constexpr int kFilters = 8;
    static constexpr int kKernel = 3;
    static constexpr int kChannels = 3;

    int input_size = 32;
    int class_count = 3;
    std::vector<double> conv_w; // [filter][channel][ky][kx]
    std::vector<double> conv_b; // [filter]
    std::vector<double> fc_w;   // [class][feature]
    std::vector<double> fc_b;   // [class]

    int conv_size() const { return input_size - kKernel + 1; }
    int pool_size() const { return conv_size() / 2; }
    int feature_count() const { return kFilters * pool_size() * pool_size(); }
    int input_count() const { return input_size * input_size * kChannels; }

    static TinyClassifier init(int input_size, int class_count, std::uint64_t seed);
};

// Intermediate activations kept for backward passes.
struct ForwardTrace {
    std::vector<double> conv_pre; // [filter][row][col], before ReLU
    std::vector<double> features; // pooled + flattened
    std::vector<double> logits;
};

std::vector<double> forward(const TinyClassifier& m, const std::vector<double>& img);
ForwardTrace forward_trace(const TinyClassifier& m, const std::vector<double>& img);
int predict(const TinyClassifier& m, const std::vector<double>& img);

std::vector<double> softmax(const std::vector<double>& logits);
double cross_entropy(const std::vector<double>& logits, int label);

// d(cross-entropy)/d(input) for the given true class.
std::vector<double> input_gradient(const TinyClassifier& m, const std::vector<double>& img,
                                   int true_class);
// d(logit k)/d(input), reusing a trace of the same input.
std::vector<double> logit_input_gradient(const TinyClassifier& m, const std::vector<double>& img,
                                         const ForwardTrace& trace, int k);

struct ParamGradients {
    std::vector<double> conv_w, conv_b, fc_w, fc_b;
};

// Cross-entropy gradients w.r.t. all parameters; returns the loss.
double param_gradients(const TinyClassifier& m, const std::vector<double>& img, int label,
                       ParamGradients& out);

struct LabeledImage {
    RasterImage image;
    SaliencyMap mask; // 255 on the shape, 0 elsewhere
    int label = 0;
};

// Colored squares / circles / triangles on plain backgrounds, 32x32.
std::vector<LabeledImage> synthetic_shapes(int count, std::uint64_t seed);

struct TrainOptions {
    int epochs = 20;
    double learning_rate = 0.05;
    std::uint64_t seed = 0;
};

struct TrainStats {
    std::vector<double> epoch_loss; // mean per epoch
    double train_accuracy = 0;
};

TrainStats train_tiny(TinyClassifier& m, const std::vector<LabeledImage>& data,
                      const TrainOptions& opt);

void save_weights(const TinyClassifier& m, const std::string& path);
TinyClassifier load_weights(const std::string& path);

// 8-bit <-> normalized [0,1]; u8 conversion rounds half up.
std::vector<double> to_normalized(const RasterImage& img);
RasterImage to_u8_image(const std::vector<double>& x, int width, int height);

} // namespace sad
