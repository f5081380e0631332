#include "sad/harness.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include <zlib.h>

#include "sad/classifier.hpp"
#include "sad/image.hpp"
#include "sad/rng.hpp"

namespace fs = std::filesystem;

namespace sad {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

namespace {

std::string format_full(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

long long parse_int(const std::string& s, long long lo, long long hi, const std::string& what) {
    std::size_t pos = 0;
    long long v;
    try {
        v = std::stoll(s, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument(what + ": not an integer: '" + s + "'");
    }
    if (pos != s.size()) throw std::invalid_argument(what + ": not an integer: '" + s + "'");
    if (v < lo || v > hi)
        throw std::invalid_argument(what + ": " + s + " outside [" + std::to_string(lo) + ", " +
                                    std::to_string(hi) + "]");
    return v;
}

double parse_real(const std::string& s, const std::string& what) {
    std::size_t pos = 0;
    double v;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument(what + ": not a number: '" + s + "'");
    }
    if (pos != s.size() || !std::isfinite(v))
        throw std::invalid_argument(what + ": not a finite number: '" + s + "'");
    return v;
}

std::vector<int> parse_quality_csv(const std::string& s, const std::string& what) {
    std::vector<int> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, ','))
        out.push_back(int(parse_int(trim(cur), 1, 100, what)));
    if (out.empty()) throw std::invalid_argument(what + ": empty list");
    return out;
}

struct KeyValue {
    std::string key, value;
};

KeyValue split_kv(const std::string& tok, const std::string& context) {
    std::size_t eq = tok.find('=');
    if (eq == std::string::npos || eq == 0)
        throw std::invalid_argument(context + ": expected key=value, got '" + tok + "'");
    return {tok.substr(0, eq), tok.substr(eq + 1)};
}

AttackConfig parse_attack_line(const std::string& value) {
    std::vector<std::string> toks = split_ws(value);
    if (toks.empty()) throw std::invalid_argument("attack: missing method");
    AttackConfig a;
    if (toks[0] == "fgsm")
        a.method = AttackMethod::fgsm;
    else if (toks[0] == "deepfool")
        a.method = AttackMethod::deepfool;
    else
        throw std::invalid_argument("attack: unknown method '" + toks[0] + "'");
    for (std::size_t i = 1; i < toks.size(); ++i) {
        KeyValue kv = split_kv(toks[i], "attack " + toks[0]);
        if (a.method == AttackMethod::fgsm && kv.key == "epsilon") {
            a.epsilon = parse_real(kv.value, "attack epsilon");
            if (a.epsilon < 0) throw std::invalid_argument("attack epsilon must be >= 0");
        } else if (a.method == AttackMethod::deepfool && kv.key == "overshoot") {
            a.overshoot = parse_real(kv.value, "attack overshoot");
            if (a.overshoot < 0) throw std::invalid_argument("attack overshoot must be >= 0");
        } else if (a.method == AttackMethod::deepfool && kv.key == "max_iters") {
            a.max_iters = int(parse_int(kv.value, 1, 100000, "attack max_iters"));
        } else {
            throw std::invalid_argument("attack " + toks[0] + ": unknown option '" + kv.key + "'");
        }
    }
    return a;
}

struct ParsedDefense {
    DefenseConfig cfg;
    bool seed_set = false;
};

ParsedDefense parse_defense_line(const std::string& value) {
    std::vector<std::string> toks = split_ws(value);
    if (toks.empty()) throw std::invalid_argument("defense: missing method");
    ParsedDefense p;
    DefenseConfig& d = p.cfg;
    if (toks[0] == "bitdepth")
        d.method = DefenseMethod::bitdepth;
    else if (toks[0] == "jpeg")
        d.method = DefenseMethod::jpeg;
    else if (toks[0] == "shield")
        d.method = DefenseMethod::shield;
    else if (toks[0] == "sad")
        d.method = DefenseMethod::sad;
    else
        throw std::invalid_argument("defense: unknown method '" + toks[0] + "'");
    for (std::size_t i = 1; i < toks.size(); ++i) {
        KeyValue kv = split_kv(toks[i], "defense " + toks[0]);
        if (d.method == DefenseMethod::bitdepth && kv.key == "bits") {
            d.bits = int(parse_int(kv.value, 1, 8, "defense bits"));
        } else if (d.method == DefenseMethod::jpeg && kv.key == "quality") {
            d.quality = int(parse_int(kv.value, 1, 100, "defense quality"));
        } else if (d.method == DefenseMethod::shield && kv.key == "qualities") {
            d.shield_qualities = QualityList(parse_quality_csv(kv.value, "defense qualities"));
        } else if (d.method == DefenseMethod::shield && kv.key == "seed") {
            d.rng_seed = std::uint64_t(parse_int(kv.value, 0, INT64_MAX, "defense seed"));
            p.seed_set = true;
        } else if (d.method == DefenseMethod::sad && kv.key == "qualities") {
            d.sad_qualities = QualityList(parse_quality_csv(kv.value, "defense qualities"));
        } else {
            throw std::invalid_argument("defense " + toks[0] + ": unknown option '" + kv.key +
                                        "'");
        }
    }
    return p;
}

SaliencySource parse_source(const std::string& value, const std::string& what) {
    SaliencySource src;
    if (value == "spectral" || value == "spectral_residual") {
        src.kind = SaliencySource::Kind::spectral_residual;
        return src;
    }
    if (value.rfind("template:", 0) == 0) {
        src.kind = SaliencySource::Kind::file;
        src.path_template = trim(value.substr(9));
        if (src.path_template.empty())
            throw std::invalid_argument(what + ": empty template path");
        return src;
    }
    throw std::invalid_argument(what + ": expected 'spectral' or 'template:<path>', got '" +
                                value + "'");
}

std::string source_to_string(const SaliencySource& src) {
    if (src.kind == SaliencySource::Kind::spectral_residual) return "spectral";
    return "template:" + src.path_template;
}

std::string slugify(const std::string& label) {
    std::string out;
    for (char c : label) {
        if (std::isalnum(static_cast<unsigned char>(c)))
            out.push_back(char(std::tolower(static_cast<unsigned char>(c))));
        else if (!out.empty() && out.back() != '-')
            out.push_back('-');
    }
    while (!out.empty() && out.back() == '-') out.pop_back();
    return out;
}

std::string join_qualities(const QualityList& q, char sep) {
    std::string out;
    for (int i = 0; i < q.size(); ++i) {
        if (i) out.push_back(sep);
        out += std::to_string(q[i]);
    }
    return out;
}

std::string attack_to_config(const AttackConfig& a) {
    if (a.method == AttackMethod::fgsm) return "fgsm epsilon=" + format_full(a.epsilon);
    return "deepfool overshoot=" + format_full(a.overshoot) +
           " max_iters=" + std::to_string(a.max_iters);
}

std::string defense_to_config(const DefenseConfig& d) {
    switch (d.method) {
    case DefenseMethod::bitdepth: return "bitdepth bits=" + std::to_string(d.bits);
    case DefenseMethod::jpeg: return "jpeg quality=" + std::to_string(d.quality);
    case DefenseMethod::shield:
        return "shield qualities=" + join_qualities(d.shield_qualities, ',') +
               " seed=" + std::to_string(d.rng_seed);
    case DefenseMethod::sad: return "sad qualities=" + join_qualities(d.sad_qualities, ',');
    }
    return "";
}

} // namespace

std::string attack_label(const AttackConfig& a) {
    return a.method == AttackMethod::fgsm ? "FGSM" : "DeepFool";
}

std::string defense_label(const DefenseConfig& d) {
    switch (d.method) {
    case DefenseMethod::bitdepth: return "Bit-depth Reduction";
    case DefenseMethod::jpeg: return "JPEG" + std::to_string(d.quality) + " Compression";
    case DefenseMethod::shield: return "SHIELD";
    case DefenseMethod::sad: return "SAD (" + join_qualities(d.sad_qualities, ' ') + ")";
    }
    return "";
}

std::string condition_label(const AttackConfig* a, const DefenseConfig* d) {
    if (!a && !d) return "Original";
    if (a && !d) return attack_label(*a);
    if (!a) return defense_label(*d);
    return attack_label(*a) + " + " + defense_label(*d);
}

ExperimentConfig parse_config_text(const std::string& text) {
    ExperimentConfig cfg;
    std::vector<std::string> attack_lines, defense_lines;
    std::map<std::string, bool> seen;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    std::vector<ParsedDefense> parsed_defenses;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw.substr(0, raw.find('#'));
        line = trim(line);
        if (line.empty()) continue;
        std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw std::invalid_argument("config line " + std::to_string(lineno) +
                                                     ": empty key");
        if (key == "attack") {
            attack_lines.push_back(value);
            continue;
        }
        if (key == "defense") {
            defense_lines.push_back(value);
            continue;
        }
        if (seen[key])
            throw std::invalid_argument("config: duplicate key '" + key + "'");
        seen[key] = true;
        if (key == "corpus_dir")
            cfg.corpus_dir = value;
        else if (key == "gt_map_template")
            cfg.gt_map_template = value;
        else if (key == "fixation_template")
            cfg.fixation_template = value;
        else if (key == "saliency_source")
            cfg.saliency_source = parse_source(value, "saliency_source");
        else if (key == "eval_map_source")
            cfg.eval_map_source = parse_source(value, "eval_map_source");
        else if (key == "weights")
            cfg.weights_path = value;
        else if (key == "output_dir")
            cfg.output_dir = value;
        else if (key == "seed")
            cfg.seed = std::uint64_t(parse_int(value, 0, INT64_MAX, "seed"));
        else if (key == "emd_downsample")
            cfg.emd_downsample = int(parse_int(value, 1, 4096, "emd_downsample"));
        else
            throw std::invalid_argument("config: unknown key '" + key + "'");
    }
    for (const auto& l : attack_lines) cfg.attacks.push_back(parse_attack_line(l));
    for (const auto& l : defense_lines) parsed_defenses.push_back(parse_defense_line(l));
    for (auto& p : parsed_defenses) {
        if (!p.seed_set) p.cfg.rng_seed = cfg.seed;
        cfg.defenses.push_back(p.cfg);
    }
    if (cfg.corpus_dir.empty()) throw std::invalid_argument("config: corpus_dir is required");
    if (cfg.gt_map_template.empty())
        throw std::invalid_argument("config: gt_map_template is required");
    if (cfg.output_dir.empty()) throw std::invalid_argument("config: output_dir is required");
    if (!cfg.defenses.empty() && cfg.attacks.empty())
        throw std::invalid_argument("config: defenses without attacks clean nothing");
    return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open config: " + path);
    std::stringstream buf;
    buf << f.rdbuf();
    return parse_config_text(buf.str());
}

namespace {

struct Condition {
    std::string label;
    int attack = -1;  // index into cfg.attacks, -1 = none
    int defense = -1; // index into cfg.defenses, -1 = none
};

std::vector<Condition> build_conditions(const ExperimentConfig& cfg) {
    std::vector<Condition> out;
    out.push_back({"Original", -1, -1});
    for (std::size_t a = 0; a < cfg.attacks.size(); ++a)
        out.push_back({condition_label(&cfg.attacks[a], nullptr), int(a), -1});
    for (std::size_t a = 0; a < cfg.attacks.size(); ++a)
        for (std::size_t d = 0; d < cfg.defenses.size(); ++d)
            out.push_back(
                {condition_label(&cfg.attacks[a], &cfg.defenses[d]), int(a), int(d)});
    return out;
}

struct CorpusEntry {
    std::string id;
    std::string filename;
};

std::vector<CorpusEntry> scan_corpus(const std::string& dir) {
    if (!fs::is_directory(dir)) throw std::runtime_error("corpus_dir is not a directory: " + dir);
    std::vector<CorpusEntry> out;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        std::string ext = entry.path().extension().string();
        if (ext != ".png" && ext != ".ppm" && ext != ".pgm") continue;
        out.push_back({entry.path().stem().string(), entry.path().filename().string()});
    }
    std::sort(out.begin(), out.end(),
              [](const CorpusEntry& a, const CorpusEntry& b) { return a.id < b.id; });
    for (std::size_t i = 1; i < out.size(); ++i)
        if (out[i].id == out[i - 1].id)
            throw std::runtime_error("duplicate corpus id: " + out[i].id);
    if (out.empty()) throw std::runtime_error("corpus is empty: " + dir);
    return out;
}

MetricReport mean_report(const std::vector<MetricReport>& rows) {
    MetricReport m;
    double nss_sum = 0;
    bool has_nss = !rows.empty() && rows[0].nss.has_value();
    for (const auto& r : rows) {
        m.emd += r.emd;
        m.cc += r.cc;
        m.kld += r.kld;
        m.sim += r.sim;
        if (has_nss) nss_sum += r.nss.value();
    }
    double n = double(rows.size());
    m.emd /= n;
    m.cc /= n;
    m.kld /= n;
    m.sim /= n;
    if (has_nss) m.nss = nss_sum / n;
    return m;
}

void write_text_file(const fs::path& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path.string());
    f.write(text.data(), std::streamsize(text.size()));
    if (!f) throw std::runtime_error("write failed: " + path.string());
}

std::string csv_cell(const std::optional<double>& v) {
    return v ? format_double(*v) : std::string();
}

} // namespace

std::string per_image_csv(const ExperimentResult& r) {
    std::string out = "condition,image,EMD,CC,NSS,KLD,SIM\n";
    for (const auto& cond : r.conditions)
        for (std::size_t i = 0; i < r.ids.size(); ++i) {
            const MetricReport& m = cond.per_image[i];
            out += cond.label + ',' + r.ids[i] + ',' + format_double(m.emd) + ',' +
                   format_double(m.cc) + ',' + csv_cell(m.nss) + ',' + format_double(m.kld) +
                   ',' + format_double(m.sim) + '\n';
        }
    return out;
}

std::string aggregate_csv(const ExperimentResult& r) {
    std::string out = "condition,EMD,CC,NSS,KLD,SIM\n";
    for (const auto& cond : r.conditions) {
        const MetricReport& m = cond.aggregate;
        out += cond.label + ',' + format_double(m.emd) + ',' + format_double(m.cc) + ',' +
               csv_cell(m.nss) + ',' + format_double(m.kld) + ',' + format_double(m.sim) + '\n';
    }
    return out;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    if (cfg.emd_downsample < 1) throw std::invalid_argument("emd_downsample must be >= 1");
    std::vector<CorpusEntry> corpus = scan_corpus(cfg.corpus_dir);
    std::vector<Condition> conditions = build_conditions(cfg);

    TinyClassifier model;
    if (!cfg.attacks.empty()) {
        if (!cfg.weights_path.empty()) {
            model = load_weights(cfg.weights_path);
        } else {
            model = TinyClassifier::init(32, 3, cfg.seed);
            TrainOptions opt;
            opt.seed = cfg.seed;
            train_tiny(model, synthetic_shapes(600, cfg.seed), opt);
        }
    }

    fs::create_directories(cfg.output_dir);
    fs::path images_dir = fs::path(cfg.output_dir) / "images";
    if (!cfg.attacks.empty()) fs::create_directories(images_dir);

    ExperimentResult result;
    for (const auto& e : corpus) result.ids.push_back(e.id);
    result.conditions.resize(conditions.size());
    for (std::size_t c = 0; c < conditions.size(); ++c)
        result.conditions[c].label = conditions[c].label;

    std::vector<std::string> image_files;
    for (std::size_t idx = 0; idx < corpus.size(); ++idx) {
        const std::string& id = corpus[idx].id;
        RasterImage original;
        SaliencyMap gt;
        FixationMap fix;
        bool has_fix = !cfg.fixation_template.empty();
        try {
            original = load_image((fs::path(cfg.corpus_dir) / corpus[idx].filename).string());
            gt = load_saliency_map(resolve_template(cfg.gt_map_template, id));
            if (gt.width != original.width || gt.height != original.height)
                throw std::runtime_error("ground-truth map dimensions do not match the image");
            if (has_fix) {
                fix = load_fixation_map(resolve_template(cfg.fixation_template, id));
                if (fix.width != original.width || fix.height != original.height)
                    throw std::runtime_error("fixation map dimensions do not match the image");
            }
            if (!cfg.attacks.empty() &&
                (original.width != model.input_size || original.height != model.input_size))
                throw std::runtime_error(
                    "attacks require corpus images sized to the classifier input (" +
                    std::to_string(model.input_size) + "x" + std::to_string(model.input_size) +
                    ")");
        } catch (const std::exception& ex) {
            throw std::runtime_error("image " + id + ": " + ex.what());
        }

        std::vector<RasterImage> attacked(cfg.attacks.size());
        for (std::size_t c = 0; c < conditions.size(); ++c) {
            const Condition& cond = conditions[c];
            try {
                const RasterImage* subject = &original;
                RasterImage cleaned;
                if (cond.attack >= 0) {
                    RasterImage& att = attacked[std::size_t(cond.attack)];
                    if (att.data.empty()) {
                        std::vector<double> x = to_normalized(original);
                        int label = predict(model, x);
                        AttackResult res =
                            run_attack(model, x, label, cfg.attacks[std::size_t(cond.attack)]);
                        att = to_u8_image(res.image, original.width, original.height);
                        std::string name =
                            id + ".a" + std::to_string(cond.attack) + "-" +
                            attack_method_name(cfg.attacks[std::size_t(cond.attack)].method) +
                            ".png";
                        save_image(att, (images_dir / name).string());
                        image_files.push_back("images/" + name);
                    }
                    subject = &att;
                }
                if (cond.defense >= 0) {
                    const DefenseConfig& dref = cfg.defenses[std::size_t(cond.defense)];
                    DefenseConfig d = dref;
                    // Vary SHIELD draws across images, reproducibly.
                    d.rng_seed = hash_combine(dref.rng_seed, idx, 0);
                    SaliencyMap sal;
                    const SaliencyMap* salp = nullptr;
                    if (d.method == DefenseMethod::sad) {
                        sal = get_saliency(*subject, cfg.saliency_source, id);
                        salp = &sal;
                    }
                    cleaned = clean(*subject, d, salp).image;
                    std::string name =
                        id + ".a" + std::to_string(cond.attack) + "-" +
                        attack_method_name(cfg.attacks[std::size_t(cond.attack)].method) + ".d" +
                        std::to_string(cond.defense) + "-" + slugify(defense_label(dref)) +
                        ".png";
                    save_image(cleaned, (images_dir / name).string());
                    image_files.push_back("images/" + name);
                    subject = &cleaned;
                }
                SaliencyMap pred = get_saliency(*subject, cfg.eval_map_source, id);
                result.conditions[c].per_image.push_back(
                    evaluate(pred, gt, has_fix ? &fix : nullptr, cfg.emd_downsample));
            } catch (const std::exception& ex) {
                throw std::runtime_error("image " + id + ", condition \"" + cond.label +
                                         "\": " + ex.what());
            }
        }
    }

    for (auto& cond : result.conditions) cond.aggregate = mean_report(cond.per_image);

    std::string manifest;
    manifest += "sad " + std::string(kVersion) + "\n";
    manifest += "zlib " + std::string(ZLIB_VERSION) + "\n";
    manifest += "config:\n";
    manifest += "  corpus_dir = " + cfg.corpus_dir + "\n";
    manifest += "  gt_map_template = " + cfg.gt_map_template + "\n";
    if (!cfg.fixation_template.empty())
        manifest += "  fixation_template = " + cfg.fixation_template + "\n";
    manifest += "  saliency_source = " + source_to_string(cfg.saliency_source) + "\n";
    manifest += "  eval_map_source = " + source_to_string(cfg.eval_map_source) + "\n";
    if (!cfg.weights_path.empty()) manifest += "  weights = " + cfg.weights_path + "\n";
    manifest += "  output_dir = " + cfg.output_dir + "\n";
    manifest += "  seed = " + std::to_string(cfg.seed) + "\n";
    manifest += "  emd_downsample = " + std::to_string(cfg.emd_downsample) + "\n";
    for (const auto& a : cfg.attacks) manifest += "  attack = " + attack_to_config(a) + "\n";
    for (const auto& d : cfg.defenses) manifest += "  defense = " + defense_to_config(d) + "\n";
    manifest += "corpus: " + std::to_string(corpus.size()) + " images\n";
    for (const auto& e : corpus) manifest += "  " + e.id + " " + e.filename + "\n";
    manifest += "conditions: " + std::to_string(conditions.size()) + "\n";
    for (const auto& c : conditions) manifest += "  " + c.label + "\n";
    manifest += "outputs:\n";
    manifest += "  per_image.csv\n";
    manifest += "  aggregate.csv\n";
    for (const auto& f : image_files) manifest += "  " + f + "\n";

    write_text_file(fs::path(cfg.output_dir) / "per_image.csv", per_image_csv(result));
    write_text_file(fs::path(cfg.output_dir) / "aggregate.csv", aggregate_csv(result));
    write_text_file(fs::path(cfg.output_dir) / "manifest.txt", manifest);
    return result;
}

AggregateTable parse_table_csv(const std::string& text) {
    AggregateTable t;
    std::istringstream in(text);
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (line.back() == ',') cells.push_back("");
        if (header) {
            if (cells.size() < 2) throw std::invalid_argument("table: header needs >= 2 columns");
            t.columns.assign(cells.begin() + 1, cells.end());
            header = false;
            continue;
        }
        if (cells.size() != t.columns.size() + 1)
            throw std::invalid_argument("table: row width does not match header");
        t.labels.push_back(cells[0]);
        std::vector<std::optional<double>> row;
        for (std::size_t i = 1; i < cells.size(); ++i) {
            std::string v = trim(cells[i]);
            if (v.empty())
                row.push_back(std::nullopt);
            else
                row.push_back(parse_real(v, "table cell"));
        }
        t.rows.push_back(std::move(row));
    }
    if (header) throw std::invalid_argument("table: empty input");
    return t;
}

std::string table_csv(const AggregateTable& t) {
    std::string out = "condition";
    for (const auto& c : t.columns) out += "," + c;
    out += "\n";
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        out += t.labels[r];
        for (const auto& v : t.rows[r]) out += "," + csv_cell(v);
        out += "\n";
    }
    return out;
}

void min_max_normalize(AggregateTable& t) {
    if (t.rows.size() < 2) throw std::invalid_argument("normalize: need at least 2 rows");
    for (std::size_t j = 0; j < t.columns.size(); ++j) {
        double lo = 0, hi = 0;
        bool any = false;
        for (const auto& row : t.rows)
            if (row[j]) {
                double v = *row[j];
                if (!any || v < lo) lo = v;
                if (!any || v > hi) hi = v;
                any = true;
            }
        if (!any) continue;
        for (auto& row : t.rows)
            if (row[j]) row[j] = hi > lo ? (*row[j] - lo) / (hi - lo) : 0.0;
    }
}

} // namespace sad
