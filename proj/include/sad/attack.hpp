#pragma once

#include <string>
#include <vector>

#include "sad/classifier.hpp"

namespace sad {

enum class AttackMethod { fgsm, deepfool };

struct AttackConfig {
    AttackMethod method = AttackMethod::fgsm;
    double epsilon = 8.0 / 255.0; // fgsm step, normalized units
    double overshoot = 0.02;      // deepfool boundary overshoot
    int max_iters = 50;           // deepfool iteration cap
};

struct AttackResult {
    std::vector<double> image; // normalized [0,1] unless clamping is skipped
    int original_class = 0;
    int adversarial_class = 0;
    int iterations = 0;
    double perturbation_l2 = 0;
};

// x' = clamp(x + epsilon * sign(grad CE), 0, 1).
AttackResult fgsm(const TinyClassifier& m, const std::vector<double>& img, int true_class,
                  double epsilon);

// Iterative minimal-perturbation linearization; the iterates are not clamped.
AttackResult deepfool(const TinyClassifier& m, const std::vector<double>& img, int max_iters = 50,
                      double overshoot = 0.02);

AttackResult run_attack(const TinyClassifier& m, const std::vector<double>& img, int true_class,
                        const AttackConfig& cfg);

const char* attack_method_name(AttackMethod method);

} // namespace sad
