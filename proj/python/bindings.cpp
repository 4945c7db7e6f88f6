#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "smuga/error.hpp"
#include "smuga/harness.hpp"

namespace py = pybind11;
using namespace smuga;

namespace {

BitString bits(const std::string& s) { return BitString::fromString(s); }

Parasite makeParasite(std::size_t position, const std::string& genome) { return Parasite{position, bits(genome)}; }

py::dict statsDict(const AggregateStats& s) {
  py::dict d;
  d["mean_evals"] = s.meanEvals;
  d["std_evals"] = s.stdEvals;
  d["mean_best"] = s.meanBest;
  d["std_best"] = s.stdBest;
  d["success_rate_percent"] = s.successRatePercent;
  d["median_evals"] = s.medianEvals;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Core of the smuga package";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<StructuralError>(m, "StructuralError", PyExc_ValueError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);

  py::class_<Problem>(m, "Problem")
      .def_readonly("name", &Problem::name)
      .def_readonly("length", &Problem::length)
      .def_readonly("optimum_value", &Problem::optimumValue)
      .def_property_readonly("optimum", [](const Problem& p) { return p.optimum.toString(); })
      .def("__call__", [](const Problem& p, const std::string& g) { return p(bits(g)); }, py::arg("genotype"))
      .def("__repr__", [](const Problem& p) { return "<Problem " + p.name + ">"; });

  m.def("make_problem", &makeProblem, py::arg("id"));
  m.def("list_problems", [] {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& f : problemFamilies()) out.emplace_back(f.pattern, f.description);
    return out;
  });

  py::class_<Parasite>(m, "Parasite")
      .def(py::init(&makeParasite), py::arg("position"), py::arg("genome"))
      .def_readonly("position", &Parasite::position)
      .def_property_readonly("genome", [](const Parasite& p) { return p.genome.toString(); })
      .def_readonly("fitness", &Parasite::fitness)
      .def("__eq__", [](const Parasite& a, const Parasite& b) { return a == b; })
      .def("__repr__", [](const Parasite& p) {
        return "Parasite(" + std::to_string(p.position) + ", '" + p.genome.toString() + "')";
      });

  m.def(
      "apply_parasite", [](const std::string& host, const Parasite& p) { return applyParasite(bits(host), p).toString(); },
      py::arg("host"), py::arg("parasite"));
  m.def(
      "compatible",
      [](const std::vector<Parasite>& applied, const Parasite& cand, std::size_t length) {
        return compatible(applied, cand, length);
      },
      py::arg("applied"), py::arg("candidate"), py::arg("host_length"));
  m.def(
      "recombine_parasites",
      [](const Parasite& a, const Parasite& b, std::size_t length, const std::string& mask) {
        return recombineParasites(a, b, length, bits(mask));
      },
      py::arg("a"), py::arg("b"), py::arg("host_length"), py::arg("mask") = "");
  m.def("split_at", &splitAt, py::arg("parasite"), py::arg("cut"), py::arg("host_length"));
  m.def("split_probability", &splitProbability, py::arg("length"), py::arg("host_length"), py::arg("k"),
        py::arg("n"));
  m.def("shifted_rank", &shiftedRank, py::arg("rank"), py::arg("n"));
  m.def("infection_probability", &infectionProbability, py::arg("rank_index"), py::arg("pop_size"), py::arg("n"));
  m.def(
      "wave_function",
      [](std::size_t copy, double roughness, double thinness) {
        return waveFunction(copy, MwmConfig{roughness, thinness, 0.0});
      },
      py::arg("copy"), py::arg("roughness") = 2.0, py::arg("thinness") = 3.0);

  py::class_<ExperimentResult>(m, "ExperimentResult")
      .def_property_readonly("stats", [](const ExperimentResult& r) { return statsDict(r.stats); })
      .def_property_readonly("records",
                             [](const ExperimentResult& r) {
                               py::list out;
                               for (const auto& rec : r.records) {
                                 py::dict d;
                                 d["seed"] = rec.seed;
                                 d["evals_to_best"] = rec.evalsToBest;
                                 d["best_value"] = rec.bestValue;
                                 d["success"] = rec.success;
                                 out.append(d);
                               }
                               return out;
                             })
      .def_property_readonly("runs_csv", [](const ExperimentResult& r) { return formatRunsCsv(r.records); })
      .def_property_readonly("curve_tsv", [](const ExperimentResult& r) { return formatCurveTsv(r.curve); })
      .def_property_readonly("summary_json", [](const ExperimentResult& r) { return formatSummaryJson(r); })
      .def("write", [](const ExperimentResult& r, const std::string& dir) { emitOutputs(r, dir); }, py::arg("out_dir"));

  m.def(
      "run_experiment",
      [](const std::string& toml, std::size_t jobs) {
        const ExperimentConfig cfg = parseConfig(toml);
        py::gil_scoped_release release;
        return runExperiment(cfg, RunOptions{.jobs = jobs});
      },
      py::arg("config_toml"), py::arg("jobs") = 1,
      "Runs the experiment described by a TOML document.");
}
