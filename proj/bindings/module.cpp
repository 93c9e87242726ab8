#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "evego/errors.hpp"
#include "evego/event_io.hpp"
#include "evego/fisheye.hpp"
#include "evego/heatmaps.hpp"
#include "evego/lnes.hpp"
#include "evego/losses.hpp"
#include "evego/metrics.hpp"
#include "evego/repm.hpp"
#include "evego/rigid.hpp"
#include "evego/simulator.hpp"

namespace py = pybind11;
using namespace evego;

namespace {

DenseMap map_from_array(const py::array_t<float, py::array::c_style | py::array::forcecast>& a) {
  if (a.ndim() != 2) throw usage_error("ShapeMismatch: expected a 2D (H, W) array");
  DenseMap m(static_cast<int>(a.shape(1)), static_cast<int>(a.shape(0)));
  std::copy(a.data(), a.data() + a.size(), m.values.begin());
  return m;
}

py::array_t<float> map_to_array(const DenseMap& m) {
  py::array_t<float> a({m.height, m.width});
  std::copy(m.values.begin(), m.values.end(), a.mutable_data());
  return a;
}

LnesFrame frame_from_array(
    const py::array_t<float, py::array::c_style | py::array::forcecast>& a) {
  if (a.ndim() != 3 || a.shape(0) != 2)
    throw usage_error("ShapeMismatch: expected a (2, H, W) array");
  LnesFrame f(static_cast<int>(a.shape(2)), static_cast<int>(a.shape(1)));
  std::copy(a.data(), a.data() + a.size(), f.data().begin());
  return f;
}

py::array_t<float> planes_to_array(const std::vector<float>& data, int width, int height) {
  py::array_t<float> a({2, height, width});
  std::copy(data.begin(), data.end(), a.mutable_data());
  return a;
}

std::vector<Event> events_from_arrays(const py::array_t<std::uint16_t>& x,
                                      const py::array_t<std::uint16_t>& y,
                                      const py::array_t<std::uint64_t>& t,
                                      const py::array_t<std::int8_t>& p) {
  const auto n = x.size();
  if (y.size() != n || t.size() != n || p.size() != n)
    throw usage_error("ShapeMismatch: event component arrays differ in length");
  std::vector<Event> events(static_cast<std::size_t>(n));
  auto xr = x.unchecked<1>();
  auto yr = y.unchecked<1>();
  auto tr = t.unchecked<1>();
  auto pr = p.unchecked<1>();
  for (py::ssize_t i = 0; i < n; ++i) events[i] = Event{xr(i), yr(i), tr(i), pr(i)};
  return events;
}

py::dict events_to_dict(const EventStream& stream) {
  const auto n = static_cast<py::ssize_t>(stream.size());
  py::array_t<std::uint16_t> x(n), y(n);
  py::array_t<std::uint64_t> t(n);
  py::array_t<std::int8_t> p(n);
  for (py::ssize_t i = 0; i < n; ++i) {
    const Event& e = stream.events()[static_cast<std::size_t>(i)];
    x.mutable_at(i) = e.x;
    y.mutable_at(i) = e.y;
    t.mutable_at(i) = e.t;
    p.mutable_at(i) = e.p;
  }
  py::dict out;
  out["x"] = x;
  out["y"] = y;
  out["t"] = t;
  out["p"] = p;
  out["width"] = stream.sensor_width();
  out["height"] = stream.sensor_height();
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "event-camera motion-capture toolkit core";

  py::register_exception<Error>(m, "ToolkitError");

  m.def(
      "load_evt",
      [](const std::string& path) { return events_to_dict(load_evt(path)); },
      py::arg("path"), "Load an .evt stream as arrays of x, y, t, p plus sensor size.");

  m.def(
      "save_evt",
      [](const std::string& path, const py::array_t<std::uint16_t>& x,
         const py::array_t<std::uint16_t>& y, const py::array_t<std::uint64_t>& t,
         const py::array_t<std::int8_t>& p, int width, int height) {
        save_evt(path, EventStream(events_from_arrays(x, y, t, p), width, height));
      },
      py::arg("path"), py::arg("x"), py::arg("y"), py::arg("t"), py::arg("p"), py::arg("width"),
      py::arg("height"));

  m.def(
      "encode_lnes",
      [](const py::array_t<std::uint16_t>& x, const py::array_t<std::uint16_t>& y,
         const py::array_t<std::uint64_t>& t, const py::array_t<std::int8_t>& p,
         std::uint64_t t_start, std::uint64_t duration, int sensor_width, int sensor_height,
         int out_width, int out_height) {
        const std::vector<Event> events = events_from_arrays(x, y, t, p);
        EventWindow window{std::span<const Event>(events), t_start, duration, false};
        const LnesFrame f =
            encode_lnes(window, sensor_width, sensor_height, out_width, out_height);
        return planes_to_array(f.data(), f.width(), f.height());
      },
      py::arg("x"), py::arg("y"), py::arg("t"), py::arg("p"), py::arg("t_start"),
      py::arg("duration"), py::arg("sensor_width"), py::arg("sensor_height"),
      py::arg("out_width") = kLnesWidth, py::arg("out_height") = kLnesHeight,
      "Encode an event window into a (2, H, W) time-surface array.");

  m.def(
      "make_confidence_map",
      [](const py::array_t<float, py::array::c_style | py::array::forcecast>& seg,
         const py::array_t<float, py::array::c_style | py::array::forcecast>& feat) {
        return map_to_array(make_confidence_map(map_from_array(seg), map_from_array(feat)));
      },
      py::arg("seg_mask"), py::arg("feature_map"));

  py::class_<FrameBuffer>(m, "FrameBuffer")
      .def(py::init<int, int>(), py::arg("width") = kLnesWidth, py::arg("height") = kLnesHeight)
      .def(
          "step",
          [](FrameBuffer& self,
             const py::array_t<float, py::array::c_style | py::array::forcecast>& frame,
             const py::array_t<float, py::array::c_style | py::array::forcecast>&
                 next_confidence) {
            const DenseMap conf = map_from_array(next_confidence);
            const NetworkInput out = self.step(
                frame_from_array(frame), [&conf](const NetworkInput&) { return conf; });
            return planes_to_array(out.data, out.width, out.height);
          },
          py::arg("frame"), py::arg("next_confidence"),
          "Combine a (2, H, W) frame into the buffer; next_confidence (48x64) is stored for "
          "the following step.")
      .def("reset", &FrameBuffer::reset)
      .def_property_readonly("stored_sum",
                             [](const FrameBuffer& self) {
                               return planes_to_array(self.stored_sum(), self.width(),
                                                      self.height());
                             })
      .def_property_readonly("stored_confidence", [](const FrameBuffer& self) {
        return map_to_array(self.stored_confidence());
      });

  py::class_<FisheyeIntrinsics>(m, "FisheyeIntrinsics")
      .def_readonly("width", &FisheyeIntrinsics::width)
      .def_readonly("height", &FisheyeIntrinsics::height)
      .def_readonly("fov_deg", &FisheyeIntrinsics::fov_deg)
      .def_readonly("max_radius", &FisheyeIntrinsics::max_radius)
      .def(
          "project",
          [](const FisheyeIntrinsics& intr, const Eigen::MatrixX3d& points) {
            Eigen::MatrixX2d out(points.rows(), 2);
            for (Eigen::Index i = 0; i < points.rows(); ++i)
              out.row(i) = project(intr, points.row(i).transpose()).transpose();
            return out;
          },
          py::arg("points"), "Project (N, 3) camera-frame points (mm) to (N, 2) pixels.")
      .def(
          "unproject",
          [](const FisheyeIntrinsics& intr, const Eigen::MatrixX2d& pixels) {
            Eigen::MatrixX3d out(pixels.rows(), 3);
            for (Eigen::Index i = 0; i < pixels.rows(); ++i)
              out.row(i) = unproject(intr, pixels.row(i).transpose()).transpose();
            return out;
          },
          py::arg("pixels"), "Lift (N, 2) pixels to (N, 3) unit ray directions.");

  m.def("load_intrinsics", [](const std::string& path) { return load_intrinsics(path); },
        py::arg("path"));

  m.def("mpjpe", &mpjpe, py::arg("pred"), py::arg("gt"),
        "Mean per-joint position error (mm) between (16, 3) poses.");
  m.def("pa_mpjpe", &pa_mpjpe, py::arg("pred"), py::arg("gt"),
        "MPJPE after optimal similarity alignment of pred onto gt.");
  m.def("smpl_joint_map", &smpl_joint_map, py::arg("smpl_joints"),
        "Select the 16 canonical joints from (45, 3) SMPL-derived joints.");

  py::class_<LossWeights>(m, "LossWeights")
      .def(py::init<>())
      .def_readwrite("joint3d", &LossWeights::joint3d)
      .def_readwrite("reproj2d", &LossWeights::reproj2d)
      .def_readwrite("bone", &LossWeights::bone)
      .def_readwrite("bone_orientation", &LossWeights::bone_orientation)
      .def_readwrite("bone_length", &LossWeights::bone_length)
      .def_readwrite("joints", &LossWeights::joints)
      .def_readwrite("heatmap", &LossWeights::heatmap)
      .def_readwrite("segmentation", &LossWeights::segmentation);

  m.def("joints_total_loss", &joints_total_loss, py::arg("j3d"), py::arg("j2d"),
        py::arg("bone_combined"), py::arg("weights") = LossWeights{});
  m.def("total_loss", &total_loss, py::arg("joints"), py::arg("heatmap"),
        py::arg("segmentation"), py::arg("weights") = LossWeights{});

  m.def(
      "simulate_events",
      [](const py::array_t<double, py::array::c_style | py::array::forcecast>& frames,
         const py::array_t<std::uint64_t>& timestamps, double threshold) {
        if (frames.ndim() != 3) throw usage_error("ShapeMismatch: expected (F, H, W) frames");
        if (timestamps.size() != frames.shape(0))
          throw usage_error("ShapeMismatch: one timestamp per frame required");
        std::vector<IntensityFrame> seq;
        const int h = static_cast<int>(frames.shape(1));
        const int w = static_cast<int>(frames.shape(2));
        auto ts = timestamps.unchecked<1>();
        for (py::ssize_t f = 0; f < frames.shape(0); ++f) {
          IntensityFrame frame(w, h, ts(f));
          std::copy(frames.data(f, 0, 0), frames.data(f, 0, 0) + static_cast<std::size_t>(w) * h,
                    frame.values.begin());
          seq.push_back(std::move(frame));
        }
        return events_to_dict(simulate_events(seq, SimulatorConfig{threshold}));
      },
      py::arg("frames"), py::arg("timestamps_us"), py::arg("threshold"),
      "Run the brightness-threshold model over (F, H, W) intensity frames.");
}
