#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sad/attack.hpp"
#include "sad/defense.hpp"
#include "sad/metrics.hpp"
#include "sad/saliency.hpp"

namespace sad {

inline constexpr const char* kVersion = "1.0.0";

struct ExperimentConfig {
    std::string corpus_dir;
    std::string gt_map_template;
    std::string fixation_template; // empty = no fixation data, NSS omitted
    SaliencySource saliency_source; // defense-side maps (SAD input)
    SaliencySource eval_map_source; // evaluation-side predicted maps
    std::string weights_path;       // empty = train from seed
    std::vector<AttackConfig> attacks;
    std::vector<DefenseConfig> defenses;
    std::string output_dir;
    std::uint64_t seed = 0;
    int emd_downsample = 32;
};

// Flat key=value text, '#' comments; `attack` and `defense` keys accumulate.
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig parse_config_file(const std::string& path);

std::string attack_label(const AttackConfig& a);
std::string defense_label(const DefenseConfig& d);
std::string condition_label(const AttackConfig* a, const DefenseConfig* d);

struct ConditionResult {
    std::string label;
    std::vector<MetricReport> per_image; // corpus order
    MetricReport aggregate;              // arithmetic mean over images
};

struct ExperimentResult {
    std::vector<std::string> ids; // corpus order
    std::vector<ConditionResult> conditions;
};

// Runs all conditions and writes per_image.csv, aggregate.csv, manifest.txt
// plus the attacked/cleaned images under <output_dir>/images.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

std::string per_image_csv(const ExperimentResult& r);
std::string aggregate_csv(const ExperimentResult& r);

// Aggregate-table form used by min-max normalization; empty cells allowed.
struct AggregateTable {
    std::vector<std::string> columns; // metric names, label column excluded
    std::vector<std::string> labels;
    std::vector<std::vector<std::optional<double>>> rows;
};

AggregateTable parse_table_csv(const std::string& text);
std::string table_csv(const AggregateTable& t);
// (v - min) / (max - min) per column; constant columns map to 0.
void min_max_normalize(AggregateTable& t);

std::string format_double(double v); // 10 significant digits

} // namespace sad
