#include "sad/attack.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace sad {

namespace {

double l2_distance(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

void check_finite(const std::vector<double>& v, const char* what) {
    for (double x : v)
        if (!std::isfinite(x)) throw std::runtime_error(std::string("non-finite ") + what);
}

} // namespace

AttackResult fgsm(const TinyClassifier& m, const std::vector<double>& img, int true_class,
                  double epsilon) {
    if (epsilon < 0 || !std::isfinite(epsilon))
        throw std::invalid_argument("epsilon must be finite and nonnegative");
    AttackResult res;
    res.original_class = predict(m, img);
    std::vector<double> grad = input_gradient(m, img, true_class);
    check_finite(grad, "gradient");
    res.image = img;
    for (std::size_t i = 0; i < img.size(); ++i) {
        double g = grad[i];
        double v = img[i] + (g > 0 ? epsilon : g < 0 ? -epsilon : 0.0);
        if (v < 0) v = 0;
        if (v > 1) v = 1;
        res.image[i] = v;
    }
    res.adversarial_class = predict(m, res.image);
    res.iterations = 1;
    res.perturbation_l2 = l2_distance(res.image, img);
    return res;
}

AttackResult deepfool(const TinyClassifier& m, const std::vector<double>& img, int max_iters,
                      double overshoot) {
    if (overshoot < 0 || !std::isfinite(overshoot))
        throw std::invalid_argument("overshoot must be finite and nonnegative");
    if (max_iters < 1) throw std::invalid_argument("max_iters must be positive");

    AttackResult res;
    const int orig = predict(m, img);
    res.original_class = orig;

    std::vector<double> x = img;
    std::vector<double> r_total(img.size(), 0.0);
    int iters = 0;
    while (iters < max_iters) {
        ForwardTrace t = forward_trace(m, x);
        int cur = int(std::max_element(t.logits.begin(), t.logits.end()) - t.logits.begin());
        if (iters > 0 && cur != orig) break;

        std::vector<double> grad_orig = logit_input_gradient(m, x, t, orig);
        double best_dist = std::numeric_limits<double>::infinity();
        std::vector<double> best_w;
        double best_f = 0;
        for (int k = 0; k < m.class_count; ++k) {
            if (k == orig) continue;
            std::vector<double> w = logit_input_gradient(m, x, t, k);
            for (std::size_t i = 0; i < w.size(); ++i) w[i] -= grad_orig[i];
            double norm = 0;
            for (double v : w) norm += v * v;
            norm = std::sqrt(norm);
            if (norm == 0) continue;
            double f = t.logits[k] - t.logits[orig];
            double dist = std::abs(f) / norm;
            if (dist < best_dist) {
                best_dist = dist;
                best_w = std::move(w);
                best_f = f;
            }
        }
        if (best_w.empty()) throw std::runtime_error("degenerate gradients, no usable direction");
        check_finite(best_w, "gradient");

        double norm = 0;
        for (double v : best_w) norm += v * v;
        norm = std::sqrt(norm);
        // Nudge past the linearized boundary so the class actually changes.
        double step = (std::abs(best_f) / norm + 1e-4) / norm;
        for (std::size_t i = 0; i < x.size(); ++i) r_total[i] += step * best_w[i];
        for (std::size_t i = 0; i < x.size(); ++i)
            x[i] = img[i] + (1.0 + overshoot) * r_total[i];
        ++iters;
    }

    res.image = std::move(x);
    res.iterations = iters;
    res.adversarial_class = predict(m, res.image);
    res.perturbation_l2 = l2_distance(res.image, img);
    return res;
}

AttackResult run_attack(const TinyClassifier& m, const std::vector<double>& img, int true_class,
                        const AttackConfig& cfg) {
    if (cfg.method == AttackMethod::fgsm) return fgsm(m, img, true_class, cfg.epsilon);
    return deepfool(m, img, cfg.max_iters, cfg.overshoot);
}

const char* attack_method_name(AttackMethod method) {
    return method == AttackMethod::fgsm ? "fgsm" : "deepfool";
}

} // namespace sad
