#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sad/attack.hpp"
#include "sad/classifier.hpp"
#include "sad/defense.hpp"
#include "sad/harness.hpp"
#include "sad/image.hpp"
#include "sad/metrics.hpp"
#include "sad/saliency.hpp"

namespace fs = std::filesystem;

namespace {

std::vector<int> parse_quality_list(const std::string& s) {
    std::vector<int> out;
    std::string tok;
    std::istringstream in(s);
    while (std::getline(in, tok, ','))
        out.push_back(std::stoi(tok));
    return out;
}

int cmd_clean(const std::string& method, int bits, int quality, const std::string& qualities,
              std::uint64_t seed, const std::string& saliency_map, const std::string& saliency,
              const std::string& input, const std::string& output) {
    sad::DefenseConfig cfg;
    cfg.rng_seed = seed;
    if (method == "bitdepth") {
        cfg.method = sad::DefenseMethod::bitdepth;
        cfg.bits = bits;
    } else if (method == "jpeg") {
        cfg.method = sad::DefenseMethod::jpeg;
        cfg.quality = quality;
    } else if (method == "shield") {
        cfg.method = sad::DefenseMethod::shield;
        if (!qualities.empty()) cfg.shield_qualities = sad::QualityList(parse_quality_list(qualities));
    } else if (method == "sad") {
        cfg.method = sad::DefenseMethod::sad;
        if (!qualities.empty()) cfg.sad_qualities = sad::QualityList(parse_quality_list(qualities));
    } else {
        throw std::invalid_argument("unknown defense method '" + method + "'");
    }

    sad::RasterImage img = sad::load_image(input);
    sad::SaliencyMap map;
    const sad::SaliencyMap* mapp = nullptr;
    if (cfg.method == sad::DefenseMethod::sad) {
        if (!saliency_map.empty()) {
            map = sad::load_saliency_map(saliency_map);
        } else if (saliency == "spectral" || saliency == "spectral_residual") {
            map = sad::spectral_residual(img);
        } else {
            throw std::invalid_argument(
                "sad defense needs --saliency-map <file> or --saliency spectral");
        }
        mapp = &map;
    }
    sad::save_image(sad::clean(img, cfg, mapp).image, output);
    return 0;
}

int cmd_attack(const std::string& method, const std::string& weights, double epsilon,
               double overshoot, int max_iters, int label, const std::string& input,
               const std::string& output) {
    sad::TinyClassifier model = sad::load_weights(weights);
    sad::RasterImage img = sad::load_image(input);
    if (img.width != model.input_size || img.height != model.input_size)
        throw std::invalid_argument("image is " + std::to_string(img.width) + "x" +
                                    std::to_string(img.height) + " but the model expects " +
                                    std::to_string(model.input_size) + "x" +
                                    std::to_string(model.input_size));
    std::vector<double> x = sad::to_normalized(img);

    sad::AttackConfig cfg;
    cfg.epsilon = epsilon;
    cfg.overshoot = overshoot;
    cfg.max_iters = max_iters;
    cfg.method = method == "fgsm" ? sad::AttackMethod::fgsm : sad::AttackMethod::deepfool;
    if (method != "fgsm" && method != "deepfool")
        throw std::invalid_argument("unknown attack method '" + method + "'");

    int true_class = label >= 0 ? label : sad::predict(model, x);
    sad::AttackResult res = sad::run_attack(model, x, true_class, cfg);
    sad::save_image(sad::to_u8_image(res.image, img.width, img.height), output);
    std::cout << "class " << res.original_class << " -> " << res.adversarial_class
              << ", iterations " << res.iterations << ", L2 "
              << sad::format_double(res.perturbation_l2) << "\n";
    return 0;
}

int cmd_saliency(const std::string& input, const std::string& output) {
    sad::save_saliency_map(sad::spectral_residual(sad::load_image(input)), output);
    return 0;
}

int cmd_evaluate(const std::string& pred_path, const std::string& gt_path,
                 const std::string& fix_path, int emd_downsample) {
    sad::SaliencyMap pred = sad::load_saliency_map(pred_path);
    sad::SaliencyMap gt = sad::load_saliency_map(gt_path);
    sad::FixationMap fix;
    const sad::FixationMap* fixp = nullptr;
    if (!fix_path.empty()) {
        fix = sad::load_fixation_map(fix_path);
        fixp = &fix;
    }
    sad::MetricReport m = sad::evaluate(pred, gt, fixp, emd_downsample);
    std::cout << sad::format_double(m.emd) << ',' << sad::format_double(m.cc) << ','
              << (m.nss ? sad::format_double(*m.nss) : std::string()) << ','
              << sad::format_double(m.kld) << ',' << sad::format_double(m.sim) << "\n";
    return 0;
}

int cmd_train(const std::string& out, int samples, int epochs, double lr, std::uint64_t seed,
              const std::string& export_dir, int export_count) {
    std::vector<sad::LabeledImage> data = sad::synthetic_shapes(samples, seed);
    sad::TinyClassifier model = sad::TinyClassifier::init(32, 3, seed);
    sad::TrainOptions opt;
    opt.epochs = epochs;
    opt.learning_rate = lr;
    opt.seed = seed;
    sad::TrainStats stats = sad::train_tiny(model, data, opt);
    if (fs::path(out).has_parent_path()) fs::create_directories(fs::path(out).parent_path());
    sad::save_weights(model, out);
    std::cout << "train accuracy " << sad::format_double(stats.train_accuracy) << " after "
              << epochs << " epochs\n";

    if (!export_dir.empty()) {
        int n = export_count > 0 ? std::min<int>(export_count, int(data.size())) : int(data.size());
        fs::create_directories(fs::path(export_dir) / "images");
        fs::create_directories(fs::path(export_dir) / "maps");
        for (int i = 0; i < n; ++i) {
            char name[32];
            std::snprintf(name, sizeof name, "shape%03d.png", i);
            sad::save_image(data[std::size_t(i)].image,
                            (fs::path(export_dir) / "images" / name).string());
            sad::save_saliency_map(data[std::size_t(i)].mask,
                                   (fs::path(export_dir) / "maps" / name).string());
        }
        std::cout << "exported " << n << " samples to " << export_dir << "\n";
    }
    return 0;
}

int cmd_run(const std::string& config_path) {
    sad::ExperimentConfig cfg = sad::parse_config_file(config_path);
    sad::ExperimentResult res = sad::run_experiment(cfg);
    std::cout << res.conditions.size() << " conditions x " << res.ids.size() << " images\n";
    std::cout << "wrote " << cfg.output_dir << "/per_image.csv\n";
    std::cout << "wrote " << cfg.output_dir << "/aggregate.csv\n";
    std::cout << "wrote " << cfg.output_dir << "/manifest.txt\n";
    return 0;
}

int cmd_normalize(const std::string& input, const std::string& output) {
    std::ifstream f(input);
    if (!f) throw std::runtime_error("cannot open: " + input);
    std::stringstream buf;
    buf << f.rdbuf();
    sad::AggregateTable t = sad::parse_table_csv(buf.str());
    sad::min_max_normalize(t);
    std::string text = sad::table_csv(t);
    if (output.empty()) {
        std::cout << text;
    } else {
        std::ofstream o(output, std::ios::binary);
        if (!o) throw std::runtime_error("cannot open for writing: " + output);
        o << text;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"saliency-indexed compression defense toolkit"};
    app.require_subcommand(1);

    auto* clean = app.add_subcommand("clean", "run one defense over one image");
    std::string cl_method, cl_qualities, cl_map, cl_saliency, cl_in, cl_out;
    int cl_bits = 3, cl_quality = 80;
    std::uint64_t cl_seed = 0;
    clean->add_option("--method", cl_method, "bitdepth | jpeg | shield | sad")->required();
    clean->add_option("--bits", cl_bits, "bit depth for bitdepth (default 3)");
    clean->add_option("--quality", cl_quality, "jpeg quality (default 80)");
    clean->add_option("--qualities", cl_qualities, "comma-separated quality list (shield, sad)");
    clean->add_option("--seed", cl_seed, "shield window seed");
    clean->add_option("--saliency-map", cl_map, "saliency map file (sad)");
    clean->add_option("--saliency", cl_saliency, "'spectral' to estimate the map (sad)");
    clean->add_option("input", cl_in, "input image")->required();
    clean->add_option("output", cl_out, "output image")->required();

    auto* attack = app.add_subcommand("attack", "run one attack over one image");
    std::string at_method, at_weights, at_in, at_out;
    double at_epsilon = 8.0 / 255.0, at_overshoot = 0.02;
    int at_iters = 50, at_label = -1;
    attack->add_option("--method", at_method, "fgsm | deepfool")->required();
    attack->add_option("--weights", at_weights, "model weights file")->required();
    attack->add_option("--epsilon", at_epsilon, "fgsm step size (default 8/255)");
    attack->add_option("--overshoot", at_overshoot, "deepfool overshoot (default 0.02)");
    attack->add_option("--max-iters", at_iters, "deepfool iteration cap (default 50)");
    attack->add_option("--label", at_label, "true class (default: model prediction)");
    attack->add_option("input", at_in, "input image")->required();
    attack->add_option("output", at_out, "output image")->required();

    auto* saliency = app.add_subcommand("saliency", "emit a spectral-residual saliency map");
    std::string sa_in, sa_out;
    saliency->add_option("input", sa_in, "input image")->required();
    saliency->add_option("output", sa_out, "output map (png or pgm)")->required();

    auto* evaluate = app.add_subcommand("evaluate", "score a predicted map against ground truth");
    std::string ev_pred, ev_gt, ev_fix;
    int ev_ds = 32;
    evaluate->add_option("--pred", ev_pred, "predicted map")->required();
    evaluate->add_option("--gt", ev_gt, "ground-truth map")->required();
    evaluate->add_option("--fixations", ev_fix, "fixation map (enables NSS)");
    evaluate->add_option("--emd-downsample", ev_ds, "EMD grid bound (default 32)");

    auto* train = app.add_subcommand("train", "train the built-in classifier on synthetic shapes");
    std::string tr_out, tr_export;
    int tr_samples = 600, tr_epochs = 20, tr_export_count = 0;
    double tr_lr = 0.05;
    std::uint64_t tr_seed = 0;
    train->add_option("--out", tr_out, "weights output file")->required();
    train->add_option("--samples", tr_samples, "training set size (default 600)");
    train->add_option("--epochs", tr_epochs, "epochs (default 20)");
    train->add_option("--lr", tr_lr, "step size (default 0.05)");
    train->add_option("--seed", tr_seed, "seed (default 0)");
    train->add_option("--export-dir", tr_export, "also write sample images + masks here");
    train->add_option("--export-count", tr_export_count, "how many samples to export (default all)");

    auto* run = app.add_subcommand("run", "run a full experiment from a config file");
    std::string rn_config;
    run->add_option("config", rn_config, "experiment config file")->required();

    auto* normalize = app.add_subcommand("normalize", "min-max normalize an aggregate table");
    std::string no_in, no_out;
    normalize->add_option("input", no_in, "aggregate CSV")->required();
    normalize->add_option("output", no_out, "output CSV (default: stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (clean->parsed())
            return cmd_clean(cl_method, cl_bits, cl_quality, cl_qualities, cl_seed, cl_map,
                             cl_saliency, cl_in, cl_out);
        if (attack->parsed())
            return cmd_attack(at_method, at_weights, at_epsilon, at_overshoot, at_iters, at_label,
                              at_in, at_out);
        if (saliency->parsed()) return cmd_saliency(sa_in, sa_out);
        if (evaluate->parsed()) return cmd_evaluate(ev_pred, ev_gt, ev_fix, ev_ds);
        if (train->parsed())
            return cmd_train(tr_out, tr_samples, tr_epochs, tr_lr, tr_seed, tr_export,
                             tr_export_count);
        if (run->parsed()) return cmd_run(rn_config);
        if (normalize->parsed()) return cmd_normalize(no_in, no_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
