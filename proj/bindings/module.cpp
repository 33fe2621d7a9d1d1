#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "isomark/bench.hpp"
#include "isomark/circle.hpp"
#include "isomark/fast_scan.hpp"
#include "isomark/parallel.hpp"
#include "isomark/postprocess.hpp"
#include "isomark/reference.hpp"
#include "isomark/streaming.hpp"

namespace py = pybind11;
using namespace isomark;

namespace {

Frame frame_from_bytes(int width, int height, py::bytes data) {
    const std::string raw = data;
    Frame frame(width, height);
    if (raw.size() != frame.pixel_count())
        throw std::invalid_argument("byte count does not match width*height");
    std::copy(raw.begin(), raw.end(),
              reinterpret_cast<char*>(frame.pixels.data()));
    return frame;
}

py::bytes frame_to_bytes(const Frame& frame) {
    return py::bytes(reinterpret_cast<const char*>(frame.pixels.data()),
                     frame.pixel_count());
}

}  // namespace

PYBIND11_MODULE(_isomark, m) {
    m.doc() = "Isolated bright-marker and sun-point detection toolkit";

    py::register_exception<IoError>(m, "IoError");
    py::register_exception<DegenerateFitError>(m, "DegenerateFitError");

    py::class_<Frame>(m, "Frame")
        .def(py::init<int, int, std::uint8_t>(), py::arg("width"),
             py::arg("height"), py::arg("fill") = 0)
        .def_readonly("width", &Frame::width)
        .def_readonly("height", &Frame::height)
        .def("at", [](const Frame& f, int r, int c) {
            if (!f.in_bounds(r, c)) throw py::index_error("pixel out of bounds");
            return f.at(r, c);
        })
        .def("set",
             [](Frame& f, int r, int c, int v) {
                 if (!f.in_bounds(r, c)) throw py::index_error("pixel out of bounds");
                 if (v < 0 || v > 255) throw py::value_error("pixel value out of range");
                 f.at(r, c) = static_cast<std::uint8_t>(v);
             })
        .def("tobytes", &frame_to_bytes)
        .def_static("frombytes", &frame_from_bytes, py::arg("width"),
                    py::arg("height"), py::arg("data"))
        .def("__eq__", [](const Frame& a, const Frame& b) { return a == b; });

    py::class_<Thresholds>(m, "Thresholds")
        .def(py::init([](int marker, int sun, int diff) {
                 Thresholds t{marker, sun, diff};
                 t.validate();
                 return t;
             }),
             py::arg("marker") = 120, py::arg("sun") = 240, py::arg("diff") = 60)
        .def_readwrite("marker", &Thresholds::marker)
        .def_readwrite("sun", &Thresholds::sun)
        .def_readwrite("diff", &Thresholds::diff);

    py::class_<DetectorConfig>(m, "DetectorConfig")
        .def(py::init([](int radius, Thresholds thresholds, int max_markers,
                         int max_sun_points, double sun_filter_distance) {
                 DetectorConfig c{radius, thresholds, max_markers, max_sun_points,
                                  sun_filter_distance};
                 c.validate();
                 return c;
             }),
             py::arg("radius") = 3, py::arg("thresholds") = Thresholds{},
             py::arg("max_markers") = 30, py::arg("max_sun_points") = 30,
             py::arg("sun_filter_distance") = 50.0)
        .def_readwrite("radius", &DetectorConfig::radius)
        .def_readwrite("thresholds", &DetectorConfig::thresholds)
        .def_readwrite("max_markers", &DetectorConfig::max_markers)
        .def_readwrite("max_sun_points", &DetectorConfig::max_sun_points)
        .def_readwrite("sun_filter_distance", &DetectorConfig::sun_filter_distance);

    py::enum_<DetectionKind>(m, "DetectionKind")
        .value("MARKER", DetectionKind::Marker)
        .value("SUN", DetectionKind::Sun);

    py::class_<Detection>(m, "Detection")
        .def_readonly("kind", &Detection::kind)
        .def_readonly("row", &Detection::row)
        .def_readonly("col", &Detection::col)
        .def_readonly("radius", &Detection::radius)
        .def("__repr__", [](const Detection& d) {
            std::ostringstream out;
            out << "Detection(" << (d.kind == DetectionKind::Marker ? "marker" : "sun")
                << ", row=" << d.row << ", col=" << d.col << ", radius=" << d.radius
                << ")";
            return out.str();
        });

    py::class_<DetectionSet>(m, "DetectionSet")
        .def_readonly("markers", &DetectionSet::markers)
        .def_readonly("sun_points", &DetectionSet::sun_points)
        .def_readonly("truncated", &DetectionSet::truncated);

    py::class_<SynthBlob>(m, "SynthBlob")
        .def(py::init([](int row, int col, int peak, double sigma) {
                 return SynthBlob{row, col, peak, sigma};
             }),
             py::arg("row"), py::arg("col"), py::arg("peak") = 255,
             py::arg("sigma") = 1.0)
        .def_readwrite("row", &SynthBlob::row)
        .def_readwrite("col", &SynthBlob::col)
        .def_readwrite("peak", &SynthBlob::peak)
        .def_readwrite("sigma", &SynthBlob::sigma);

    py::class_<SynthSun>(m, "SynthSun")
        .def(py::init([](int row, int col, int disc_radius, int intensity) {
                 return SynthSun{row, col, disc_radius, intensity};
             }),
             py::arg("row"), py::arg("col"), py::arg("disc_radius") = 5,
             py::arg("intensity") = 255)
        .def_readwrite("row", &SynthSun::row)
        .def_readwrite("col", &SynthSun::col)
        .def_readwrite("disc_radius", &SynthSun::disc_radius)
        .def_readwrite("intensity", &SynthSun::intensity);

    py::class_<SynthSpec>(m, "SynthSpec")
        .def(py::init<>())
        .def_readwrite("blobs", &SynthSpec::blobs)
        .def_readwrite("sun_disc", &SynthSpec::sun_disc)
        .def_readwrite("noise_max", &SynthSpec::noise_max)
        .def_readwrite("seed", &SynthSpec::seed)
        .def_readwrite("well_separated", &SynthSpec::well_separated)
        .def_readwrite("separation_radius", &SynthSpec::separation_radius);

    py::enum_<FrameFormat>(m, "FrameFormat")
        .value("RAW8", FrameFormat::Raw8)
        .value("PGM", FrameFormat::Pgm);

    m.def("load_frame",
          [](const std::string& path, FrameFormat format, int width, int height) {
              return load_frame(path, format, width, height);
          },
          py::arg("path"), py::arg("format"), py::arg("width") = 0,
          py::arg("height") = 0);
    m.def("write_frame",
          [](const Frame& frame, const std::string& path, FrameFormat format) {
              write_frame(frame, path, format);
          },
          py::arg("frame"), py::arg("path"), py::arg("format"));
    m.def("synthesize_frame", &synthesize_frame, py::arg("width"),
          py::arg("height"), py::arg("spec"));
    m.def("random_scene", &random_scene, py::arg("width"), py::arg("height"),
          py::arg("max_blobs"), py::arg("seed"), py::arg("radius") = 3,
          py::arg("noise_max") = 0);

    m.def("reference_detect",
          [](const Frame& frame, const DetectorConfig& cfg) {
              return reference_detect(frame, cfg);
          },
          py::arg("frame"), py::arg("config") = DetectorConfig{});
    m.def("fast_scan_detect", &fast_scan_detect, py::arg("frame"),
          py::arg("config") = DetectorConfig{});
    m.def("parallel_detect", &parallel_detect, py::arg("frame"),
          py::arg("config") = DetectorConfig{}, py::arg("threads") = 0);
    m.def("streaming_detect",
          [](const Frame& frame, const DetectorConfig& cfg) {
              const int radii[1] = {cfg.radius};
              return streaming_run_frame(frame, cfg, radii).detections;
          },
          py::arg("frame"), py::arg("config") = DetectorConfig{});

    m.def("cluster_points",
          [](const std::vector<std::pair<int, int>>& points) {
              std::vector<std::pair<int, int>> out;
              for (const auto& c : cluster_detections(points))
                  out.emplace_back(c.rounded_row, c.rounded_col);
              return out;
          },
          py::arg("points"),
          "Rounded centroids of the 8-connected components of the given pixels.");
    m.def("filter_markers_by_sun",
          [](const std::vector<Detection>& markers,
             const std::vector<Detection>& sun_points, double min_distance) {
              return filter_markers_by_sun(markers, sun_points, min_distance);
          },
          py::arg("markers"), py::arg("sun_points"), py::arg("min_distance"));
    m.def("concentrate_detections", &concentrate_detections, py::arg("detections"));

    m.def("circle_boundary",
          [](int radius) {
              std::vector<std::pair<int, int>> out;
              for (const auto& p : boundary_points(radius)) out.emplace_back(p.y, p.x);
              return out;
          },
          py::arg("radius"));
    m.def("circle_interior",
          [](int radius) {
              std::vector<std::pair<int, int>> out;
              for (const auto& p : interior_points(radius)) out.emplace_back(p.y, p.x);
              return out;
          },
          py::arg("radius"));
    m.def("uncovered_fraction", &uncovered_fraction, py::arg("max_radius"));

    py::class_<CostModel>(m, "CostModel")
        .def_readonly("t_none", &CostModel::t_none)
        .def_readonly("t_det", &CostModel::t_det)
        .def_readonly("r_squared", &CostModel::r_squared);

    m.def("fit_time_model",
          [](const std::vector<std::tuple<double, std::uint64_t, std::uint64_t>>& rows) {
              std::vector<BenchRecord> records;
              records.reserve(rows.size());
              for (const auto& [mean_s, n_det, pixels] : rows) {
                  BenchRecord r;
                  r.mean_seconds = mean_s;
                  r.detected_pixels = n_det;
                  r.frame_pixels = pixels;
                  records.push_back(std::move(r));
              }
              return fit_time_model(records);
          },
          py::arg("rows"),
          "Fit the per-pixel cost model to (mean_seconds, n_det, pixels) rows.");
}
