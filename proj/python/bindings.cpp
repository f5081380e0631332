#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sad/attack.hpp"
#include "sad/classifier.hpp"
#include "sad/defense.hpp"
#include "sad/harness.hpp"
#include "sad/image.hpp"
#include "sad/metrics.hpp"
#include "sad/saliency.hpp"

namespace py = pybind11;

namespace {

sad::RasterImage image_from_bytes(int width, int height, py::bytes data) {
    std::string buf = data;
    if (buf.size() != std::size_t(width) * height * 3)
        throw std::invalid_argument("expected width*height*3 bytes");
    sad::RasterImage img;
    img.width = width;
    img.height = height;
    img.data.assign(buf.begin(), buf.end());
    return img;
}

sad::SaliencyMap map_from_bytes(int width, int height, py::bytes data) {
    std::string buf = data;
    if (buf.size() != std::size_t(width) * height)
        throw std::invalid_argument("expected width*height bytes");
    sad::SaliencyMap map;
    map.width = width;
    map.height = height;
    map.data.assign(buf.begin(), buf.end());
    return map;
}

sad::QualityList quality_list(const std::vector<int>& qs) {
    return sad::QualityList(qs);
}

py::dict report_to_dict(const sad::MetricReport& m) {
    py::dict d;
    d["emd"] = m.emd;
    d["cc"] = m.cc;
    d["nss"] = m.nss ? py::object(py::float_(*m.nss)) : py::object(py::none());
    d["kld"] = m.kld;
    d["sim"] = m.sim;
    return d;
}

} // namespace

PYBIND11_MODULE(_sad, m) {
    m.doc() = "saliency-indexed compression defense core";

    py::class_<sad::RasterImage>(m, "Image")
        .def(py::init(&image_from_bytes), py::arg("width"), py::arg("height"), py::arg("data"))
        .def_readonly("width", &sad::RasterImage::width)
        .def_readonly("height", &sad::RasterImage::height)
        .def("tobytes",
             [](const sad::RasterImage& img) {
                 return py::bytes(reinterpret_cast<const char*>(img.data.data()),
                                  img.data.size());
             })
        .def("__eq__", [](const sad::RasterImage& a, const sad::RasterImage& b) { return a == b; });

    py::class_<sad::SaliencyMap>(m, "Map")
        .def(py::init(&map_from_bytes), py::arg("width"), py::arg("height"), py::arg("data"))
        .def_readonly("width", &sad::SaliencyMap::width)
        .def_readonly("height", &sad::SaliencyMap::height)
        .def("tobytes",
             [](const sad::SaliencyMap& map) {
                 return py::bytes(reinterpret_cast<const char*>(map.data.data()),
                                  map.data.size());
             })
        .def("__eq__", [](const sad::SaliencyMap& a, const sad::SaliencyMap& b) { return a == b; });

    m.def("load_image", &sad::load_image, py::arg("path"));
    m.def("save_image", &sad::save_image, py::arg("image"), py::arg("path"));
    m.def("load_saliency_map", &sad::load_saliency_map, py::arg("path"));
    m.def("save_saliency_map", &sad::save_saliency_map, py::arg("map"), py::arg("path"));

    m.def("sad_quality_index", &sad::sad_quality_index, py::arg("sal"), py::arg("q_len"));
    m.def(
        "compress_uniform",
        [](const sad::RasterImage& img, int quality) {
            return sad::compress_image_uniform(img, quality);
        },
        py::arg("image"), py::arg("quality"));
    m.def(
        "bit_depth_reduce",
        [](const sad::RasterImage& img, int bits) { return sad::bit_depth_reduce(img, bits); },
        py::arg("image"), py::arg("bits") = 3);
    m.def(
        "shield_clean",
        [](const sad::RasterImage& img, const std::vector<int>& qualities, std::uint64_t seed) {
            return sad::shield_clean(img, quality_list(qualities), seed).image;
        },
        py::arg("image"), py::arg("qualities"), py::arg("seed") = 0);
    m.def(
        "sad_clean",
        [](const sad::RasterImage& img, const sad::SaliencyMap& map,
           const std::vector<int>& qualities) {
            return sad::sad_clean(img, map, quality_list(qualities)).image;
        },
        py::arg("image"), py::arg("saliency"), py::arg("qualities"));

    m.def("spectral_residual", &sad::spectral_residual, py::arg("image"));

    m.def(
        "evaluate",
        [](const sad::SaliencyMap& pred, const sad::SaliencyMap& gt,
           const std::optional<std::vector<std::pair<int, int>>>& fixations, int emd_downsample) {
            if (!fixations) return report_to_dict(sad::evaluate(pred, gt, nullptr, emd_downsample));
            sad::FixationMap fix;
            fix.width = pred.width;
            fix.height = pred.height;
            fix.fixations = *fixations;
            return report_to_dict(sad::evaluate(pred, gt, &fix, emd_downsample));
        },
        py::arg("pred"), py::arg("gt"), py::arg("fixations") = py::none(),
        py::arg("emd_downsample") = 32);

    m.def(
        "train",
        [](const std::string& weights_path, int samples, int epochs, double lr,
           std::uint64_t seed) {
            sad::TinyClassifier model = sad::TinyClassifier::init(32, 3, seed);
            sad::TrainOptions opt;
            opt.epochs = epochs;
            opt.learning_rate = lr;
            opt.seed = seed;
            sad::TrainStats stats =
                sad::train_tiny(model, sad::synthetic_shapes(samples, seed), opt);
            sad::save_weights(model, weights_path);
            return stats.train_accuracy;
        },
        py::arg("weights_path"), py::arg("samples") = 600, py::arg("epochs") = 20,
        py::arg("lr") = 0.05, py::arg("seed") = 0);

    m.def(
        "fgsm",
        [](const std::string& weights_path, const sad::RasterImage& img, double epsilon) {
            sad::TinyClassifier model = sad::load_weights(weights_path);
            std::vector<double> x = sad::to_normalized(img);
            sad::AttackResult res = sad::fgsm(model, x, sad::predict(model, x), epsilon);
            return sad::to_u8_image(res.image, img.width, img.height);
        },
        py::arg("weights_path"), py::arg("image"), py::arg("epsilon") = 8.0 / 255.0);
    m.def(
        "deepfool",
        [](const std::string& weights_path, const sad::RasterImage& img, int max_iters,
           double overshoot) {
            sad::TinyClassifier model = sad::load_weights(weights_path);
            std::vector<double> x = sad::to_normalized(img);
            sad::AttackResult res = sad::deepfool(model, x, max_iters, overshoot);
            return sad::to_u8_image(res.image, img.width, img.height);
        },
        py::arg("weights_path"), py::arg("image"), py::arg("max_iters") = 50,
        py::arg("overshoot") = 0.02);

    m.def("run_experiment", [](const std::string& config_path) {
        sad::ExperimentResult res = sad::run_experiment(sad::parse_config_file(config_path));
        py::list labels;
        for (const auto& c : res.conditions) labels.append(c.label);
        return labels;
    });

    m.attr("__version__") = sad::kVersion;
}
