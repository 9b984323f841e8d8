#include "davies/adfamily.hpp"
#include "davies/builder.hpp"
#include "davies/funcio.hpp"
#include "davies/rank.hpp"
#include "davies/reportjson.hpp"
#include "davies/theta.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace py = pybind11;

namespace {

using davies::PairFunction;
using davies::Rational;
using davies::Representation;
using davies::Row;
using davies::RowPtr;

py::object loads(const std::string& json_text) {
  return py::module_::import("json").attr("loads")(json_text);
}

std::vector<Rational> parse_rationals(const std::vector<std::string>& texts) {
  std::vector<Rational> out;
  out.reserve(texts.size());
  for (const auto& t : texts) out.push_back(davies::parse_rational(t));
  return out;
}

davies::RationalMatrix matrix_from_rows(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::vector<Rational>> entries;
  entries.reserve(rows.size());
  for (const auto& row : rows) entries.push_back(parse_rationals(row));
  return davies::RationalMatrix::from_rows(entries);
}

void add_point_py(Representation& rep, const std::string& label, const py::object& payload) {
  if (payload.is_none()) {
    rep.add_point(label);
  } else if (py::isinstance<py::str>(payload)) {
    rep.add_point(label, davies::parse_rational(payload.cast<std::string>()));
  } else if (py::isinstance<py::tuple>(payload)) {
    const auto [prefix, tail] = payload.cast<std::pair<std::string, int>>();
    rep.add_point(label, davies::make_e0_point(prefix, tail));
  } else {
    throw std::invalid_argument(
        "payload must be None, a rational string, or a (prefix, tail) pair");
  }
}

std::vector<std::size_t> all_positions(const Representation& rep) {
  std::vector<std::size_t> all(rep.point_count());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return all;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "exact finite-support sum representations of pair functions";

  m.def("cantor_pair", &davies::cantor_pair, py::arg("n"), py::arg("k"));
  m.def("cantor_unpair", &davies::cantor_unpair, py::arg("p"));
  m.def("ad_member", &davies::ad_member, py::arg("n"), py::arg("m"));
  m.def("ad_enumerate", &davies::ad_enumerate, py::arg("n"), py::arg("bound"));

  m.def(
      "exp_enclosure",
      [](const std::string& x, const std::string& eps) {
        const auto v = davies::exp_enclosure(davies::parse_rational(x),
                                             davies::parse_rational(eps));
        return std::make_pair(davies::to_string(v.lo), davies::to_string(v.hi));
      },
      py::arg("x"), py::arg("eps") = "1/1000000",
      "Enclosure of e^x as a (lo, hi) pair of rational strings.");

  py::class_<Row, RowPtr>(m, "Run")
      .def("value", [](Row& r, std::size_t i) { return davies::to_string(r.value(i)); },
           py::arg("i"))
      .def(
          "prefix",
          [](Row& r, std::size_t length) {
            std::vector<std::string> out;
            out.reserve(length);
            for (std::size_t i = 0; i < length; ++i) out.push_back(davies::to_string(r.value(i)));
            return out;
          },
          py::arg("length"))
      .def("in_support", &Row::in_support, py::arg("i"))
      .def("milestone", &Row::milestone, py::arg("k"))
      .def("milestones", [](const Row& r) { return r.milestones(); })
      .def("stage_count", &Row::stage_count)
      .def("ensure_stages", &Row::ensure_stages, py::arg("count"))
      .def_property_readonly("label", &Row::label);

  m.def(
      "theta_new",
      [](const std::vector<std::string>& targets, std::vector<RowPtr> g_args,
         std::vector<RowPtr> h_args, const std::string& label) {
        return davies::theta_new(parse_rationals(targets), std::move(g_args),
                                 std::move(h_args), label);
      },
      py::arg("targets") = std::vector<std::string>{},
      py::arg("g_args") = std::vector<RowPtr>{}, py::arg("h_args") = std::vector<RowPtr>{},
      py::arg("label") = "");

  m.def(
      "check_run_conclusions",
      [](Row& row, std::size_t horizon, std::size_t min_stages) {
        return loads(davies::to_json_string(
            davies::to_json(davies::check_run_conclusions(row, horizon, min_stages))));
      },
      py::arg("run"), py::arg("horizon"), py::arg("min_stages") = 0);

  py::class_<Representation>(m, "Representation")
      .def_property_readonly("point_count", &Representation::point_count)
      .def_property_readonly("function_descriptor",
                             [](const Representation& r) { return r.function().descriptor(); })
      .def_property_readonly("labels",
                             [](const Representation& r) {
                               std::vector<std::string> out;
                               for (const auto& p : r.points()) out.push_back(p.label);
                               return out;
                             })
      .def("add_point", &add_point_py, py::arg("label"), py::arg("payload") = py::none())
      .def("position_of", &Representation::position_of, py::arg("label"))
      .def("eval_g",
           [](Representation& r, std::size_t i, std::size_t n) {
             return davies::to_string(r.eval_g(i, n));
           },
           py::arg("i"), py::arg("n"))
      .def("eval_h",
           [](Representation& r, std::size_t i, std::size_t n) {
             return davies::to_string(r.eval_h(i, n));
           },
           py::arg("i"), py::arg("n"))
      .def("g_row", &Representation::g_row, py::arg("i"))
      .def("h_row", &Representation::h_row, py::arg("i"))
      .def("pair_cutoff", &Representation::pair_cutoff, py::arg("i"), py::arg("j"))
      .def("default_stress_horizon", &Representation::default_stress_horizon)
      .def(
          "verify_pair",
          [](Representation& r, std::size_t i, std::size_t j,
             std::optional<std::size_t> horizon) {
            const auto h = horizon.value_or(r.default_stress_horizon());
            return loads(davies::to_json_string(davies::to_json(r.verify_pair(i, j, h))));
          },
          py::arg("i"), py::arg("j"), py::arg("horizon") = py::none())
      .def(
          "verify_all",
          [](Representation& r, std::optional<std::size_t> horizon) {
            const auto h = horizon.value_or(r.default_stress_horizon());
            return loads(davies::to_json_string(davies::to_json(r.verify_all(h))));
          },
          py::arg("horizon") = py::none())
      .def(
          "check_s",
          [](Representation& r, std::size_t required_stages) {
            return loads(davies::to_json_string(davies::to_json(r.check_S(required_stages))));
          },
          py::arg("required_stages") = 3)
      .def("last_nonzero_index", &Representation::last_nonzero_index, py::arg("i"),
           py::arg("j"))
      .def(
          "active_index_set",
          [](Representation& r, std::optional<std::vector<std::size_t>> rows,
             std::optional<std::vector<std::size_t>> cols) {
            const auto rs = rows.value_or(all_positions(r));
            const auto cs = cols.value_or(all_positions(r));
            return r.active_index_set(rs, cs);
          },
          py::arg("rows") = py::none(), py::arg("cols") = py::none())
      .def(
          "lowerbound",
          [](Representation& r, std::optional<std::vector<std::size_t>> rows,
             std::optional<std::vector<std::size_t>> cols) {
            const auto rs = rows.value_or(all_positions(r));
            const auto cs = cols.value_or(all_positions(r));
            return loads(
                davies::to_json_string(davies::to_json(davies::lowerbound_check(r, rs, cs))));
          },
          py::arg("rows") = py::none(), py::arg("cols") = py::none())
      .def("to_json", [](Representation& r) { return davies::representation_to_json(r); });

  m.def(
      "new_representation",
      [](const std::string& function_spec) {
        return Representation(davies::function_from_spec(function_spec));
      },
      py::arg("function"),
      "Representation over a builtin descriptor or table:PATH function.");

  m.def(
      "representation_from_table",
      [](const std::vector<std::vector<std::string>>& rows) {
        std::vector<std::vector<Rational>> entries;
        for (const auto& row : rows) entries.push_back(parse_rationals(row));
        return Representation(PairFunction::from_table(std::move(entries)));
      },
      py::arg("rows"));

  m.def("representation_from_json", &davies::representation_from_json, py::arg("text"));

  m.def(
      "exact_rank",
      [](const std::vector<std::vector<std::string>>& rows) {
        return davies::exact_rank(matrix_from_rows(rows));
      },
      py::arg("rows"));

  m.def(
      "certify_exp_matrix_nonsingular",
      [](const std::vector<std::string>& a, const std::vector<std::string>& b,
         const std::string& eps, unsigned max_refinements) {
        const auto cert = davies::certify_exp_matrix_nonsingular(
            parse_rationals(a), parse_rationals(b), davies::parse_rational(eps),
            max_refinements);
        return loads(davies::to_json_string(davies::to_json(cert)));
      },
      py::arg("a"), py::arg("b"), py::arg("eps") = "1/1000000",
      py::arg("max_refinements") = 20);

  py::register_exception<davies::validation_error>(m, "ValidationError");
}
