// Copyright 2026 The qatsp authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qatsp/annealer.hpp"
#include "qatsp/embedding.hpp"
#include "qatsp/hybrid.hpp"
#include "qatsp/oracle.hpp"
#include "qatsp/qubo.hpp"
#include "qatsp/stats.hpp"
#include "qatsp/sweep.hpp"
#include "qatsp/tsp.hpp"

namespace py = pybind11;
using namespace qatsp;

namespace {

std::vector<std::array<double, 2>> to_coords(
    const std::vector<std::pair<double, double>>& pairs) {
  std::vector<std::array<double, 2>> out;
  out.reserve(pairs.size());
  for (const auto& [a, b] : pairs) out.push_back({a, b});
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "QUBO annealing experimentation toolkit for TSP instances";

  py::class_<Instance>(m, "Instance")
      .def_readonly("name", &Instance::name)
      .def_readonly("n", &Instance::n)
      .def_readonly("coords", &Instance::coords)
      .def_readonly("dist", &Instance::dist)
      .def_readonly("dist_norm", &Instance::dist_norm)
      .def_readonly("max_dist", &Instance::max_dist)
      .def("__repr__", [](const Instance& i) {
        return "<Instance " + i.name + " n=" + std::to_string(i.n) + ">";
      });

  py::class_<Tour>(m, "Tour")
      .def_readonly("order", &Tour::order)
      .def_readonly("length", &Tour::length);

  m.def("geo_distance", &geo_distance, py::arg("lat1"), py::arg("lon1"),
        py::arg("lat2"), py::arg("lon2"),
        "TSPLIB GEO arc distance between DD.MM coordinates, integer km.");
  m.def(
      "make_instance",
      [](const std::string& name,
         const std::vector<std::pair<double, double>>& coords) {
        return make_instance(name, to_coords(coords));
      },
      py::arg("name"), py::arg("coords"));
  m.def("parse_tsplib", &parse_tsplib, py::arg("text"));
  m.def("load_tsplib", &load_tsplib, py::arg("path"));
  m.def(
      "subset",
      [](const Instance& inst, const std::vector<int>& nodes) {
        return subset(inst, nodes);
      },
      py::arg("instance"), py::arg("nodes"));
  m.def(
      "tour_length",
      [](const Instance& inst, const std::vector<int>& order) {
        return tour_length(inst, order);
      },
      py::arg("instance"), py::arg("order"));

  py::enum_<QuboType>(m, "QuboType")
      .value("reference", QuboType::reference)
      .value("heuristic", QuboType::heuristic);

  py::class_<ModelMeta>(m, "ModelMeta")
      .def_readonly("qubo_type", &ModelMeta::qubo_type)
      .def_readonly("n", &ModelMeta::n)
      .def_readonly("A", &ModelMeta::A)
      .def_readonly("B", &ModelMeta::B)
      .def_readonly("C", &ModelMeta::C)
      .def_readonly("penalized", &ModelMeta::penalized)
      .def("is_penalized", &ModelMeta::is_penalized);

  py::class_<QuadTerm>(m, "QuadTerm")
      .def_readonly("u", &QuadTerm::u)
      .def_readonly("v", &QuadTerm::v)
      .def_readonly("value", &QuadTerm::value);

  py::class_<Qubo>(m, "Qubo")
      .def_readonly("n_vars", &Qubo::n_vars)
      .def_readonly("linear", &Qubo::linear)
      .def_readonly("quadratic", &Qubo::quadratic)
      .def_readonly("offset", &Qubo::offset)
      .def_readonly("meta", &Qubo::meta)
      .def(
          "energy",
          [](const Qubo& q, const std::vector<std::uint8_t>& bits) {
            return q.energy(bits);
          },
          py::arg("bits"));

  py::class_<IsingModel>(m, "IsingModel")
      .def_readonly("sites", &IsingModel::sites)
      .def_readonly("h", &IsingModel::h)
      .def_readonly("couplings", &IsingModel::couplings)
      .def_readonly("offset", &IsingModel::offset)
      .def_readonly("meta", &IsingModel::meta)
      .def_property_readonly("num_sites", &IsingModel::num_sites)
      .def("max_abs_h", &IsingModel::max_abs_h)
      .def("max_abs_coupling", &IsingModel::max_abs_coupling)
      .def(
          "energy",
          [](const IsingModel& model, const std::vector<std::int8_t>& spins) {
            return model.energy(spins);
          },
          py::arg("spins"));

  py::class_<ScaledParams>(m, "ScaledParams")
      .def_readonly("scale", &ScaledParams::scale)
      .def_readonly("A_real", &ScaledParams::A_real)
      .def_readonly("B_real", &ScaledParams::B_real)
      .def_readonly("cs_real", &ScaledParams::cs_real);

  py::class_<TourDecode>(m, "TourDecode")
      .def_readonly("feasible", &TourDecode::feasible)
      .def_readonly("order", &TourDecode::order)
      .def_readonly("penalized", &TourDecode::penalized)
      .def_property_readonly("violation",
                             [](const TourDecode& d) {
                               switch (d.violation) {
                                 case TourDecode::Violation::row:
                                   return "row";
                                 case TourDecode::Violation::column:
                                   return "column";
                                 default:
                                   return "none";
                               }
                             })
      .def_readonly("violation_index", &TourDecode::violation_index);

  m.def("build_r_qubo", &build_r_qubo, py::arg("dist_norm"), py::arg("A"),
        py::arg("B"));
  m.def("build_h_qubo", &build_h_qubo, py::arg("dist_norm"), py::arg("A"),
        py::arg("B"));
  m.def("build_qubo", &build_qubo, py::arg("dist_norm"), py::arg("qubo_type"),
        py::arg("A"), py::arg("B"));
  m.def("qubo_to_ising", &qubo_to_ising, py::arg("qubo"));
  m.def("auto_scale", &auto_scale, py::arg("model"), py::arg("chain_strength"));
  m.def(
      "decode_state",
      [](const std::vector<std::uint8_t>& bits, const ModelMeta& meta) {
        return decode_state(bits, meta);
      },
      py::arg("bits"), py::arg("meta"));
  m.def("row_medians", &row_medians, py::arg("dist"));

  py::class_<ExtremeRecord>(m, "ExtremeRecord")
      .def_readonly("energy", &ExtremeRecord::energy)
      .def_readonly("b_coeff", &ExtremeRecord::b_coeff)
      .def_readonly("constraint_energy", &ExtremeRecord::constraint_energy)
      .def_readonly("sequence", &ExtremeRecord::sequence);

  py::class_<LandscapeSummary>(m, "LandscapeSummary")
      .def_readonly("n_feasible", &LandscapeSummary::n_feasible)
      .def_readonly("n_nonpenalized", &LandscapeSummary::n_nonpenalized)
      .def_readonly("n_penalized", &LandscapeSummary::n_penalized)
      .def_readonly("best_feasible", &LandscapeSummary::best_feasible)
      .def_readonly("worst_feasible", &LandscapeSummary::worst_feasible)
      .def_readonly("best_nonpenalized", &LandscapeSummary::best_nonpenalized)
      .def_readonly("worst_nonpenalized",
                    &LandscapeSummary::worst_nonpenalized)
      .def_readonly("best_infeasible", &LandscapeSummary::best_infeasible)
      .def_readonly("optimal_tours", &LandscapeSummary::optimal_tours);

  m.def(
      "enumerate_tours",
      [](const Instance& inst, const Qubo& q, int jobs) {
        return enumerate_tours(inst, q, jobs);
      },
      py::arg("instance"), py::arg("qubo"), py::arg("jobs") = 0);
  m.def(
      "enumerate_column_functions",
      [](const Instance& inst, const Qubo& q, int jobs) {
        return enumerate_column_functions(inst, q, jobs);
      },
      py::arg("instance"), py::arg("qubo"), py::arg("jobs") = 0);
  m.def("brute_optimum", &brute_optimum, py::arg("instance"),
        py::arg("jobs") = 0);

  py::class_<Schedule>(m, "Schedule")
      .def(py::init<>())
      .def_readwrite("beta_hot", &Schedule::beta_hot)
      .def_readwrite("beta_cold", &Schedule::beta_cold)
      .def_readwrite("sweeps", &Schedule::sweeps);

  py::class_<SampleRecord>(m, "SampleRecord")
      .def_readonly("state", &SampleRecord::state)
      .def_readonly("energy", &SampleRecord::energy)
      .def_readonly("occurrences", &SampleRecord::occurrences)
      .def_readonly("chain_break_fraction",
                    &SampleRecord::chain_break_fraction);

  py::class_<SampleSet>(m, "SampleSet")
      .def_readonly("records", &SampleSet::records)
      .def_readonly("num_reads", &SampleSet::num_reads)
      .def_readonly("seed", &SampleSet::seed);

  m.def("default_schedule", &default_schedule, py::arg("model"));
  m.def("sample", &sample, py::arg("model"), py::arg("num_reads"),
        py::arg("schedule"), py::arg("seed"), py::arg("jobs") = 0);

  py::class_<ChimeraGraph>(m, "ChimeraGraph")
      .def_readonly("m", &ChimeraGraph::m)
      .def_readonly("num_nodes", &ChimeraGraph::num_nodes)
      .def_readonly("edges", &ChimeraGraph::edges)
      .def("has_edge", &ChimeraGraph::has_edge);

  py::class_<Embedding>(m, "Embedding")
      .def_readonly("chains", &Embedding::chains);

  py::class_<EmbeddedIsing>(m, "EmbeddedIsing")
      .def_readonly("physical", &EmbeddedIsing::physical)
      .def_readonly("chain_strength", &EmbeddedIsing::chain_strength)
      .def_readonly("embedding", &EmbeddedIsing::embedding)
      .def_readonly("chain_bond_count", &EmbeddedIsing::chain_bond_count);

  py::class_<UnembedResult>(m, "UnembedResult")
      .def_readonly("logical", &UnembedResult::logical)
      .def_readonly("chain_break_fraction",
                    &UnembedResult::chain_break_fraction);

  m.def("chimera_graph", &chimera_graph, py::arg("m"));
  m.def("min_chimera_m", &min_chimera_m, py::arg("num_logical"));
  m.def("clique_embedding", &clique_embedding, py::arg("num_logical"),
        py::arg("graph"));
  m.def("verify_embedding", &verify_embedding, py::arg("embedding"),
        py::arg("graph"), py::arg("require_all_pairs") = true);
  m.def("embed_ising", &embed_ising, py::arg("logical"), py::arg("embedding"),
        py::arg("graph"), py::arg("chain_strength"));
  m.def(
      "unembed",
      [](const std::vector<std::int8_t>& state, const EmbeddedIsing& e,
         std::uint64_t seed) { return unembed(state, e, seed); },
      py::arg("physical_state"), py::arg("embedded"), py::arg("seed"));

  py::class_<GridSpec>(m, "GridSpec")
      .def(py::init<>())
      .def_readwrite("A_values", &GridSpec::A_values)
      .def_readwrite("qubo_types", &GridSpec::qubo_types)
      .def_readwrite("num_reads", &GridSpec::num_reads)
      .def_readwrite("sweeps", &GridSpec::sweeps)
      .def_readwrite("seed", &GridSpec::seed);

  py::class_<GridCell>(m, "GridCell")
      .def_readonly("qubo_type", &GridCell::qubo_type)
      .def_readonly("A", &GridCell::A)
      .def_readonly("B", &GridCell::B)
      .def_readonly("chain_strength", &GridCell::chain_strength);

  py::class_<PipelineConfig>(m, "PipelineConfig")
      .def(py::init<>())
      .def_readwrite("qubo_type", &PipelineConfig::qubo_type)
      .def_readwrite("A", &PipelineConfig::A)
      .def_readwrite("B", &PipelineConfig::B)
      .def_readwrite("chain_strength", &PipelineConfig::chain_strength)
      .def_readwrite("num_reads", &PipelineConfig::num_reads)
      .def_readwrite("sweeps", &PipelineConfig::sweeps)
      .def_readwrite("chimera_m", &PipelineConfig::chimera_m)
      .def_readwrite("seed", &PipelineConfig::seed)
      .def_readwrite("jobs", &PipelineConfig::jobs);

  py::class_<RunRecord>(m, "RunRecord")
      .def_readonly("qubo_type", &RunRecord::qubo_type)
      .def_readonly("A", &RunRecord::A)
      .def_readonly("B", &RunRecord::B)
      .def_readonly("chain_strength", &RunRecord::chain_strength)
      .def_readonly("A_real", &RunRecord::A_real)
      .def_readonly("B_real", &RunRecord::B_real)
      .def_readonly("cs_real", &RunRecord::cs_real)
      .def_readonly("scale", &RunRecord::scale)
      .def_readonly("num_reads", &RunRecord::num_reads)
      .def_readonly("n_feasible", &RunRecord::n_feasible)
      .def_readonly("n_optimum", &RunRecord::n_optimum)
      .def_readonly("n_nonpenalized", &RunRecord::n_nonpenalized)
      .def_readonly("feasible_ratio", &RunRecord::feasible_ratio)
      .def_readonly("optimum_ratio", &RunRecord::optimum_ratio)
      .def_readonly("optimum_by_feasible", &RunRecord::optimum_by_feasible)
      .def_readonly("min_energy", &RunRecord::min_energy)
      .def_readonly("mean_chain_break", &RunRecord::mean_chain_break)
      .def_readonly("seed", &RunRecord::seed)
      .def_readonly("error", &RunRecord::error);

  m.def("grid_b_values", &grid_b_values, py::arg("A"));
  m.def("grid_chain_values", &grid_chain_values, py::arg("A"));
  m.def("default_a_values", &default_a_values);
  m.def("build_grid", &build_grid, py::arg("spec"));
  m.def(
      "run_cell",
      [](const Instance& inst, const PipelineConfig& config,
         long long optimum_length) {
        SampleSet samples;
        RunRecord rec = run_cell(inst, config, optimum_length, &samples);
        return py::make_tuple(rec, samples);
      },
      py::arg("instance"), py::arg("config"), py::arg("optimum_length"),
      "Returns (RunRecord, SampleSet).");

  py::class_<SweepResult>(m, "SweepResult")
      .def_readonly("records", &SweepResult::records)
      .def_readonly("optimum_length", &SweepResult::optimum_length)
      .def_readonly("cells_total", &SweepResult::cells_total)
      .def_readonly("cells_failed", &SweepResult::cells_failed)
      .def_readonly("distinct_real_configs",
                    &SweepResult::distinct_real_configs);

  m.def("run_sweep", &run_sweep, py::arg("instance"), py::arg("spec"),
        py::arg("chimera_m") = 0, py::arg("jobs") = 0,
        py::arg("optimum") = std::nullopt);

  py::class_<Histogram>(m, "Histogram")
      .def_readonly("edges", &Histogram::edges)
      .def_readonly("feasible", &Histogram::feasible)
      .def_readonly("penalized", &Histogram::penalized)
      .def_readonly("infeasible", &Histogram::infeasible);

  m.def("energy_histogram", &energy_histogram, py::arg("samples"),
        py::arg("meta"), py::arg("bins"));

  py::enum_<Verdict>(m, "Verdict")
      .value("no_significance", Verdict::no_significance)
      .value("first_better", Verdict::first_better)
      .value("second_better", Verdict::second_better);

  py::class_<ComparisonResult>(m, "ComparisonResult")
      .def_readonly("z", &ComparisonResult::z)
      .def_readonly("p_two_sided", &ComparisonResult::p_two_sided)
      .def_readonly("verdict", &ComparisonResult::verdict)
      .def_readonly("mean_first", &ComparisonResult::mean_first)
      .def_readonly("sigma_first", &ComparisonResult::sigma_first)
      .def_readonly("mean_second", &ComparisonResult::mean_second)
      .def_readonly("sigma_second", &ComparisonResult::sigma_second);

  m.def(
      "wilcoxon_rank_sum",
      [](const std::vector<double>& xs, const std::vector<double>& ys) {
        return wilcoxon_rank_sum(xs, ys);
      },
      py::arg("xs"), py::arg("ys"));

  py::class_<Aggregate>(m, "Aggregate")
      .def_readonly("mean", &Aggregate::mean)
      .def_readonly("sigma", &Aggregate::sigma)
      .def_readonly("sigma_sample", &Aggregate::sigma_sample);

  m.def(
      "aggregate",
      [](const std::vector<double>& values) { return aggregate(values); },
      py::arg("values"));

  py::class_<Decomposition>(m, "Decomposition")
      .def_readonly("subsets", &Decomposition::subsets)
      .def_readonly("max_size", &Decomposition::max_size);

  py::class_<SubSolve>(m, "SubSolve")
      .def_readonly("nodes", &SubSolve::nodes)
      .def_readonly("tour", &SubSolve::tour)
      .def_readonly("length", &SubSolve::length)
      .def_readonly("feasible_reads", &SubSolve::feasible_reads)
      .def_readonly("fallback", &SubSolve::fallback);

  py::class_<HybridRun>(m, "HybridRun")
      .def_readonly("tour", &HybridRun::tour)
      .def_readonly("subs", &HybridRun::subs);

  m.def("decompose", &decompose, py::arg("instance"), py::arg("max_size"));
  m.def("solve_hybrid", &solve_hybrid, py::arg("instance"), py::arg("config"),
        py::arg("max_size"));

#ifdef QATSP_VERSION
  m.attr("__version__") = QATSP_VERSION;
#else
  m.attr("__version__") = "dev";
#endif
}
