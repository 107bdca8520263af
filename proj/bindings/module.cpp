#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sigtron/classify.hpp"

namespace py = pybind11;
using namespace sigtron;

namespace {

Dataset dataset_from_lists(const std::vector<std::vector<double>>& x,
                           const std::vector<int>& y) {
  if (x.size() != y.size())
    throw ConfigError("features and labels must have the same length");
  Dataset ds;
  ds.rows = x.size();
  ds.cols = x.empty() ? 0 : x[0].size();
  for (const auto& row : x) {
    if (row.size() != ds.cols) throw ConfigError("ragged feature rows");
    ds.x.insert(ds.x.end(), row.begin(), row.end());
  }
  ds.y = y;
  ds.n_classes = 2;
  return ds;
}

}  // namespace

PYBIND11_MODULE(_sigtron, m) {
  m.doc() = "SIGTRON sigmoid family, induced losses, and SIC model training";

  py::class_<SigtronParams>(m, "SigtronParams")
      .def(py::init<double, double>(), py::arg("alpha"), py::arg("c"))
      .def_static("from_c_alpha", &SigtronParams::from_c_alpha,
                  py::arg("alpha"), py::arg("c_alpha_mag"))
      .def_static("from_order", &SigtronParams::from_order, py::arg("k"),
                  py::arg("c_alpha_mag"), py::arg("above_one"))
      .def_readonly("alpha", &SigtronParams::alpha)
      .def_readonly("c", &SigtronParams::c)
      .def_readonly("c_alpha", &SigtronParams::c_alpha)
      .def_readonly("order", &SigtronParams::order);

  m.def("sigtron", &sigtron::sigtron, py::arg("params"), py::arg("x"));
  m.def("sigtron_grad", &sigtron_grad, py::arg("params"), py::arg("x"));
  m.def("sigtron_loss", &sigtron_loss, py::arg("params"), py::arg("x"));
  m.def("sigtron_loss_grad", &sigtron_loss_grad, py::arg("params"),
        py::arg("x"));
  m.def("inflection_point", &inflection_point, py::arg("params"));
  m.def("f_integral", &f_integral, py::arg("z"), py::arg("b"));
  m.def("logistic_loss", &logistic_loss, py::arg("x"));

  m.def("lambda_grid", &lambda_grid);
  m.def("alpha_grid", &alpha_grid, py::arg("kmax") = 10);

  py::class_<Hyperplane>(m, "Hyperplane")
      .def_readonly("w", &Hyperplane::w)
      .def_readonly("b", &Hyperplane::b)
      .def("decision", [](const Hyperplane& h, const std::vector<double>& x) {
        return h.decision(x);
      });

  m.def(
      "train_sic",
      [](const std::vector<std::vector<double>>& x, const std::vector<int>& y,
         double alpha_pos, double alpha_neg, double c_alpha_mag,
         double lambda) {
        Dataset ds = dataset_from_lists(x, y);
        SicSpec spec{SigtronParams::from_c_alpha(alpha_pos, c_alpha_mag),
                     SigtronParams::from_c_alpha(alpha_neg, c_alpha_mag)};
        OptimConfig cfg;
        return train_binary(ds, spec, lambda, cfg).h;
      },
      py::arg("x"), py::arg("y"), py::arg("alpha_pos"), py::arg("alpha_neg"),
      py::arg("c_alpha_mag") = 2.0, py::arg("lambda_") = 1.0 / 1024.0);

  m.def(
      "train_logistic",
      [](const std::vector<std::vector<double>>& x, const std::vector<int>& y,
         double lambda) {
        Dataset ds = dataset_from_lists(x, y);
        OptimConfig cfg;
        return train_binary(ds, LogisticSpec{}, lambda, cfg).h;
      },
      py::arg("x"), py::arg("y"), py::arg("lambda_") = 1.0 / 1024.0);

  m.def(
      "predict",
      [](const Hyperplane& h, const std::vector<std::vector<double>>& x) {
        std::vector<int> out;
        out.reserve(x.size());
        for (const auto& row : x) out.push_back(predict_binary(h, row));
        return out;
      },
      py::arg("hyperplane"), py::arg("x"));

  m.def(
      "imbalance_ratios",
      [](const std::vector<std::vector<double>>& x, const std::vector<int>& y) {
        ImbalanceStats st = imbalance_stats(dataset_from_lists(x, y), 1);
        return py::make_tuple(st.r_c, st.r_sc);
      },
      py::arg("x"), py::arg("y"));

  py::register_exception<ParseError>(m, "ParseError");
  py::register_exception<ConfigError>(m, "ConfigError");
}
