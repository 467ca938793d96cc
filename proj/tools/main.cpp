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

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qatsp/errors.hpp"
#include "qatsp/hybrid.hpp"
#include "qatsp/oracle.hpp"
#include "qatsp/rng.hpp"
#include "qatsp/serialize.hpp"
#include "qatsp/stats.hpp"
#include "qatsp/sweep.hpp"

namespace {

using qatsp::Json;

#ifndef QATSP_VERSION
#define QATSP_VERSION "dev"
#endif

// "a..b" (inclusive) or a comma list of node ids.
std::vector<int> parse_subset(const std::string& spec) {
  std::vector<int> out;
  if (spec.empty()) return out;
  const auto dots = spec.find("..");
  if (dots != std::string::npos) {
    const int lo = std::stoi(spec.substr(0, dots));
    const int hi = std::stoi(spec.substr(dots + 2));
    if (hi < lo) throw std::invalid_argument("bad subset range '" + spec + "'");
    for (int i = lo; i <= hi; ++i) out.push_back(i);
    return out;
  }
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(std::stoi(item));
  }
  if (out.empty()) throw std::invalid_argument("empty subset '" + spec + "'");
  return out;
}

qatsp::Instance load_instance(const std::string& path,
                              const std::string& subset_spec) {
  qatsp::Instance inst = qatsp::load_tsplib(path);
  const auto nodes = parse_subset(subset_spec);
  if (!nodes.empty()) inst = qatsp::subset(inst, nodes);
  return inst;
}

std::string join_path(const std::string& dir, const std::string& file) {
  if (dir.empty() || dir == ".") return file;
  return dir + "/" + file;
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  Json j;
  in >> j;
  return j;
}

void write_manifest(const std::string& out_dir, const std::string& command,
                    const Json& config) {
  Json m;
  m["tool"] = "qatsp";
  m["version"] = QATSP_VERSION;
  m["command"] = command;
  m["config"] = config;
  qatsp::atomic_write(join_path(out_dir, command + "_manifest.json"),
                      m.dump(2) + "\n");
}

Json manifest_config(const std::string& path, const std::string& command) {
  const Json m = load_json_file(path);
  if (!m.contains("command") || m["command"] != command) {
    throw std::invalid_argument("manifest at '" + path +
                                "' is not for subcommand '" + command + "'");
  }
  return m["config"];
}

// Options every pipeline-running subcommand shares.
struct CommonOpts {
  std::string instance_path;
  std::string subset;
  std::string out_dir = ".";
  std::string manifest;
  int jobs = 0;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool instance_required = true) {
  auto* inst = cmd->add_option("--instance", o.instance_path,
                               "TSPLIB .tsp file (GEO)");
  if (instance_required) inst->check(CLI::ExistingFile);
  cmd->add_option("--subset", o.subset,
                  "node subset, e.g. 0..6 or 0,2,5 (default: all nodes)");
  cmd->add_option("--out-dir", o.out_dir, "output directory")
      ->envname("QATSP_OUT_DIR");
  cmd->add_option("--jobs", o.jobs, "worker threads (0 = auto)");
  cmd->add_option("--manifest", o.manifest,
                  "re-run from a saved manifest; replaces all configuration "
                  "flags except --out-dir/--jobs")
      ->check(CLI::ExistingFile);
}

struct ModelOpts {
  std::string qubo_type = "r";
  double A = 1.0;
  double B = 0.25;
};

void add_model(CLI::App* cmd, ModelOpts& o) {
  cmd->add_option("--qubo", o.qubo_type, "qubo type: r|h")
      ->check(CLI::IsMember({"r", "h", "reference", "heuristic"}));
  cmd->add_option("--A", o.A, "constraint penalty A");
  cmd->add_option("--B", o.B, "distance penalty B");
}

struct SampleOpts {
  double chain_strength = 1.0;
  int reads = 200;
  int sweeps = 1000;
  int chimera_m = 0;  // 0 = smallest fitting grid
  bool no_embed = false;
  std::uint64_t seed = 1;
};

void add_sampling(CLI::App* cmd, SampleOpts& o) {
  cmd->add_option("--chain-strength", o.chain_strength, "chain coupler");
  cmd->add_option("--reads", o.reads, "independent anneals per run");
  cmd->add_option("--sweeps", o.sweeps, "Metropolis sweeps per read");
  cmd->add_option("--chimera-m", o.chimera_m,
                  "Chimera grid size (0 = smallest that fits)");
  cmd->add_flag("--no-embed", o.no_embed, "sample the logical model directly");
  cmd->add_option("--seed", o.seed, "master seed");
}

void emit(const Json& summary) { std::cout << summary.dump(2) << "\n"; }

// ---------------------------------------------------------------------------

int cmd_build_qubo(const CommonOpts& common, const ModelOpts& model) {
  Json config;
  CommonOpts c = common;
  ModelOpts m = model;
  if (!common.manifest.empty()) {
    config = manifest_config(common.manifest, "build-qubo");
    c.instance_path = config["instance"];
    c.subset = config["subset"];
    m.qubo_type = config["qubo"];
    m.A = config["A"];
    m.B = config["B"];
  } else {
    config["instance"] = c.instance_path;
    config["subset"] = c.subset;
    config["qubo"] = m.qubo_type;
    config["A"] = m.A;
    config["B"] = m.B;
  }
  const qatsp::Instance inst = load_instance(c.instance_path, c.subset);
  const qatsp::Qubo q = qatsp::build_qubo(
      inst.dist_norm, qatsp::qubo_type_from_string(m.qubo_type), m.A, m.B);
  const qatsp::IsingModel ising = qatsp::qubo_to_ising(q);

  qatsp::atomic_write(join_path(c.out_dir, "qubo.json"),
                      qatsp::qubo_to_json(q).dump(2) + "\n");
  qatsp::atomic_write(join_path(c.out_dir, "ising.json"),
                      qatsp::ising_to_json(ising).dump(2) + "\n");
  qatsp::atomic_write(join_path(c.out_dir, "instance.json"),
                      qatsp::instance_to_json(inst).dump(2) + "\n");
  write_manifest(c.out_dir, "build-qubo", config);

  Json summary;
  summary["command"] = "build-qubo";
  summary["instance"] = inst.name;
  summary["n"] = inst.n;
  summary["n_vars"] = q.n_vars;
  summary["quadratic_terms"] = q.quadratic.size();
  summary["offset"] = qatsp::sig12(q.offset);
  summary["penalized_edges"] = q.meta.penalized.size();
  summary["files"] = {join_path(c.out_dir, "qubo.json"),
                      join_path(c.out_dir, "ising.json"),
                      join_path(c.out_dir, "instance.json")};
  emit(summary);
  return 0;
}

int cmd_oracle(const CommonOpts& common, const ModelOpts& model,
               bool column_functions, bool energies_csv) {
  Json config;
  CommonOpts c = common;
  ModelOpts m = model;
  bool cols = column_functions;
  bool dump = energies_csv;
  if (!common.manifest.empty()) {
    config = manifest_config(common.manifest, "oracle");
    c.instance_path = config["instance"];
    c.subset = config["subset"];
    m.qubo_type = config["qubo"];
    m.A = config["A"];
    m.B = config["B"];
    cols = config["column_functions"];
    dump = config["energies_csv"];
  } else {
    config["instance"] = c.instance_path;
    config["subset"] = c.subset;
    config["qubo"] = m.qubo_type;
    config["A"] = m.A;
    config["B"] = m.B;
    config["column_functions"] = cols;
    config["energies_csv"] = dump;
  }
  const qatsp::Instance inst = load_instance(c.instance_path, c.subset);
  const qatsp::Qubo q = qatsp::build_qubo(
      inst.dist_norm, qatsp::qubo_type_from_string(m.qubo_type), m.A, m.B);

  std::vector<qatsp::EnergyRow> rows;
  qatsp::LandscapeSummary summary =
      qatsp::enumerate_tours(inst, q, c.jobs, dump ? &rows : nullptr);
  if (cols) {
    summary.best_infeasible = qatsp::enumerate_column_functions(
        inst, q, c.jobs, dump ? &rows : nullptr);
  }
  const qatsp::Tour opt = qatsp::brute_optimum(inst, c.jobs);

  Json out = qatsp::landscape_summary_to_json(summary);
  out["brute_optimum"] = {{"order", opt.order}, {"length", opt.length}};
  qatsp::atomic_write(join_path(c.out_dir, "oracle.json"), out.dump(2) + "\n");
  if (dump) {
    qatsp::atomic_write(join_path(c.out_dir, "energies.csv"),
                        qatsp::energy_rows_to_csv(rows, inst.n));
  }
  write_manifest(c.out_dir, "oracle", config);

  Json js;
  js["command"] = "oracle";
  js["instance"] = inst.name;
  js["qubo_type"] = qatsp::to_string(q.meta.qubo_type);
  js["n_feasible"] = summary.n_feasible;
  js["n_nonpenalized"] = summary.n_nonpenalized;
  js["n_penalized"] = summary.n_penalized;
  js["best_feasible_b_coeff"] = qatsp::sig12(summary.best_feasible.b_coeff);
  js["worst_feasible_b_coeff"] = qatsp::sig12(summary.worst_feasible.b_coeff);
  if (summary.best_infeasible) {
    js["best_infeasible_b_coeff"] =
        qatsp::sig12(summary.best_infeasible->b_coeff);
  }
  js["brute_optimum_length"] = opt.length;
  js["files"] = {join_path(c.out_dir, "oracle.json")};
  emit(js);
  return 0;
}

int cmd_sample(const CommonOpts& common, const ModelOpts& model,
               const SampleOpts& sampling) {
  Json config;
  CommonOpts c = common;
  ModelOpts m = model;
  SampleOpts s = sampling;
  if (!common.manifest.empty()) {
    config = manifest_config(common.manifest, "sample");
    c.instance_path = config["instance"];
    c.subset = config["subset"];
    m.qubo_type = config["qubo"];
    m.A = config["A"];
    m.B = config["B"];
    s.chain_strength = config["chain_strength"];
    s.reads = config["reads"];
    s.sweeps = config["sweeps"];
    s.chimera_m = config["chimera_m"];
    s.no_embed = config["no_embed"];
    s.seed = config["seed"].get<std::uint64_t>();
  } else {
    config["instance"] = c.instance_path;
    config["subset"] = c.subset;
    config["qubo"] = m.qubo_type;
    config["A"] = m.A;
    config["B"] = m.B;
    config["chain_strength"] = s.chain_strength;
    config["reads"] = s.reads;
    config["sweeps"] = s.sweeps;
    config["chimera_m"] = s.chimera_m;
    config["no_embed"] = s.no_embed;
    config["seed"] = s.seed;
  }
  const qatsp::Instance inst = load_instance(c.instance_path, c.subset);

  qatsp::PipelineConfig pc;
  pc.qubo_type = qatsp::qubo_type_from_string(m.qubo_type);
  pc.A = m.A;
  pc.B = m.B;
  pc.chain_strength = s.chain_strength;
  pc.num_reads = s.reads;
  pc.sweeps = s.sweeps;
  pc.chimera_m = s.no_embed ? -1 : s.chimera_m;
  pc.seed = s.seed;
  pc.jobs = c.jobs;

  const qatsp::Tour opt = qatsp::brute_optimum(inst, c.jobs);
  qatsp::SampleSet samples;
  const qatsp::RunRecord rec = qatsp::run_cell(inst, pc, opt.length, &samples);

  qatsp::atomic_write(join_path(c.out_dir, "samples.csv"),
                      qatsp::sampleset_to_csv(samples));
  write_manifest(c.out_dir, "sample", config);

  Json js = qatsp::run_record_to_json(rec);
  js["command"] = "sample";
  js["instance"] = inst.name;
  js["optimum_length"] = opt.length;
  js["files"] = {join_path(c.out_dir, "samples.csv")};
  emit(js);
  return 0;
}

int cmd_sweep(const CommonOpts& common, const std::string& grid_name,
              const std::string& qubo_sel, const SampleOpts& sampling,
              std::vector<double> a_values, std::int64_t optimum) {
  Json config;
  CommonOpts c = common;
  SampleOpts s = sampling;
  std::string grid = grid_name;
  std::string qsel = qubo_sel;
  std::vector<double> avals = a_values;
  std::int64_t opt_override = optimum;
  if (!common.manifest.empty()) {
    config = manifest_config(common.manifest, "sweep");
    c.instance_path = config["instance"];
    c.subset = config["subset"];
    grid = config["grid"];
    qsel = config["qubo"];
    avals = config["a_values"].get<std::vector<double>>();
    s.reads = config["reads"];
    s.sweeps = config["sweeps"];
    s.chimera_m = config["chimera_m"];
    s.no_embed = config["no_embed"];
    s.seed = config["seed"].get<std::uint64_t>();
    opt_override = config["optimum"];
  } else {
    config["instance"] = c.instance_path;
    config["subset"] = c.subset;
    config["grid"] = grid;
    config["qubo"] = qsel;
    config["a_values"] = avals;
    config["reads"] = s.reads;
    config["sweeps"] = s.sweeps;
    config["chimera_m"] = s.chimera_m;
    config["no_embed"] = s.no_embed;
    config["seed"] = s.seed;
    config["optimum"] = opt_override;
  }
  const qatsp::Instance inst = load_instance(c.instance_path, c.subset);

  qatsp::GridSpec spec;
  if (grid == "paper") {
    spec.A_values = qatsp::default_a_values();
  } else if (!avals.empty()) {
    spec.A_values = avals;
  } else {
    throw std::invalid_argument("need --grid paper or --a-values");
  }
  if (qsel == "r" || qsel == "reference") {
    spec.qubo_types = {qatsp::QuboType::reference};
  } else if (qsel == "h" || qsel == "heuristic") {
    spec.qubo_types = {qatsp::QuboType::heuristic};
  } else {
    spec.qubo_types = {qatsp::QuboType::reference, qatsp::QuboType::heuristic};
  }
  spec.num_reads = s.reads;
  spec.sweeps = s.sweeps;
  spec.seed = s.seed;

  const std::optional<long long> opt =
      opt_override >= 0 ? std::optional<long long>(opt_override)
                        : std::nullopt;
  const qatsp::SweepResult result = qatsp::run_sweep(
      inst, spec, s.no_embed ? -1 : s.chimera_m, c.jobs, opt);

  qatsp::atomic_write(join_path(c.out_dir, "sweep.csv"),
                      qatsp::run_records_to_csv(result.records));
  Json records = Json::array();
  for (const auto& r : result.records) {
    records.push_back(qatsp::run_record_to_json(r));
  }
  Json full;
  full["optimum_length"] = result.optimum_length;
  full["cells_total"] = result.cells_total;
  full["cells_failed"] = result.cells_failed;
  full["distinct_real_configs"] = result.distinct_real_configs;
  full["records"] = std::move(records);
  qatsp::atomic_write(join_path(c.out_dir, "sweep.json"), full.dump(2) + "\n");
  write_manifest(c.out_dir, "sweep", config);

  Json js;
  js["command"] = "sweep";
  js["instance"] = inst.name;
  js["cells_total"] = result.cells_total;
  js["cells_failed"] = result.cells_failed;
  js["distinct_real_configs"] = result.distinct_real_configs;
  js["optimum_length"] = result.optimum_length;
  js["files"] = {join_path(c.out_dir, "sweep.csv"),
                 join_path(c.out_dir, "sweep.json")};
  emit(js);
  return 0;
}

int cmd_hybrid(const CommonOpts& common, const ModelOpts& model,
               const SampleOpts& sampling, int max_sub_size, int runs) {
  Json config;
  CommonOpts c = common;
  ModelOpts m = model;
  SampleOpts s = sampling;
  int max_size = max_sub_size;
  int n_runs = runs;
  if (!common.manifest.empty()) {
    config = manifest_config(common.manifest, "hybrid");
    c.instance_path = config["instance"];
    c.subset = config["subset"];
    m.qubo_type = config["qubo"];
    m.A = config["A"];
    m.B = config["B"];
    s.chain_strength = config["chain_strength"];
    s.reads = config["reads"];
    s.sweeps = config["sweeps"];
    s.chimera_m = config["chimera_m"];
    s.no_embed = config["no_embed"];
    s.seed = config["seed"].get<std::uint64_t>();
    max_size = config["max_sub_size"];
    n_runs = config["runs"];
  } else {
    config["instance"] = c.instance_path;
    config["subset"] = c.subset;
    config["qubo"] = m.qubo_type;
    config["A"] = m.A;
    config["B"] = m.B;
    config["chain_strength"] = s.chain_strength;
    config["reads"] = s.reads;
    config["sweeps"] = s.sweeps;
    config["chimera_m"] = s.chimera_m;
    config["no_embed"] = s.no_embed;
    config["seed"] = s.seed;
    config["max_sub_size"] = max_size;
    config["runs"] = n_runs;
  }
  const qatsp::Instance inst = load_instance(c.instance_path, c.subset);

  qatsp::PipelineConfig pc;
  pc.qubo_type = qatsp::qubo_type_from_string(m.qubo_type);
  pc.A = m.A;
  pc.B = m.B;
  pc.chain_strength = s.chain_strength;
  pc.num_reads = s.reads;
  pc.sweeps = s.sweeps;
  pc.chimera_m = s.no_embed ? -1 : s.chimera_m;
  pc.jobs = c.jobs;

  Json runs_json = Json::array();
  std::vector<double> lengths;
  std::ostringstream lengths_csv;
  lengths_csv << "run,length\n";
  for (int r = 0; r < n_runs; ++r) {
    pc.seed = qatsp::substream_seed(s.seed, r, qatsp::rng_tag::kHybridRun);
    const qatsp::HybridRun run = qatsp::solve_hybrid(inst, pc, max_size);
    Json jr;
    jr["run"] = r;
    jr["seed"] = pc.seed;
    jr["length"] = run.tour.length;
    jr["tour"] = run.tour.order;
    Json subs = Json::array();
    for (const auto& sub : run.subs) {
      subs.push_back({{"nodes", sub.nodes},
                      {"tour", sub.tour},
                      {"length", sub.length},
                      {"feasible_reads", sub.feasible_reads},
                      {"fallback", sub.fallback}});
    }
    jr["subs"] = std::move(subs);
    runs_json.push_back(std::move(jr));
    lengths.push_back(static_cast<double>(run.tour.length));
    lengths_csv << r << ',' << run.tour.length << '\n';
  }
  qatsp::atomic_write(join_path(c.out_dir, "hybrid.json"),
                      Json{{"runs", runs_json}}.dump(2) + "\n");
  qatsp::atomic_write(join_path(c.out_dir, "hybrid_lengths.csv"),
                      lengths_csv.str());
  write_manifest(c.out_dir, "hybrid", config);

  const qatsp::Aggregate agg = qatsp::aggregate(lengths);
  Json js;
  js["command"] = "hybrid";
  js["instance"] = inst.name;
  js["runs"] = n_runs;
  js["mean_length"] = qatsp::sig12(agg.mean);
  js["sigma_length"] = qatsp::sig12(agg.sigma);
  js["files"] = {join_path(c.out_dir, "hybrid.json"),
                 join_path(c.out_dir, "hybrid_lengths.csv")};
  emit(js);
  return 0;
}

std::vector<double> read_lengths_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::vector<double> out;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (first) {
      first = false;
      if (line.find("length") != std::string::npos) continue;  // header
    }
    const auto comma = line.rfind(',');
    out.push_back(std::stod(comma == std::string::npos
                                ? line
                                : line.substr(comma + 1)));
  }
  if (out.empty()) throw std::runtime_error("no values in '" + path + "'");
  return out;
}

int cmd_stats(const CommonOpts& common, const std::string& r_csv,
              const std::string& h_csv, const std::string& label,
              std::int64_t optimum) {
  Json config;
  CommonOpts c = common;
  std::string rpath = r_csv, hpath = h_csv, name = label;
  std::int64_t opt = optimum;
  if (!common.manifest.empty()) {
    config = manifest_config(common.manifest, "stats");
    c.instance_path = config["instance"];
    c.subset = config["subset"];
    rpath = config["r_csv"];
    hpath = config["h_csv"];
    name = config["label"];
    opt = config["optimum"];
  } else {
    config["instance"] = c.instance_path;
    config["subset"] = c.subset;
    config["r_csv"] = rpath;
    config["h_csv"] = hpath;
    config["label"] = name;
    config["optimum"] = opt;
  }
  const std::vector<double> r_lengths = read_lengths_csv(rpath);
  const std::vector<double> h_lengths = read_lengths_csv(hpath);

  if (opt < 0 && !c.instance_path.empty()) {
    const qatsp::Instance inst = load_instance(c.instance_path, c.subset);
    opt = qatsp::brute_optimum(inst, c.jobs).length;
    if (name.empty()) name = inst.name;
  }
  if (name.empty()) name = "instance";

  // First sample = h-QUBO, so a negative z marks the heuristic as better,
  // rendered like the reference table's filled-triangle column.
  const qatsp::ComparisonResult cmp =
      qatsp::wilcoxon_rank_sum(h_lengths, r_lengths);
  const qatsp::Aggregate r_agg = qatsp::aggregate(r_lengths);
  const qatsp::Aggregate h_agg = qatsp::aggregate(h_lengths);

  std::ostringstream csv;
  csv << "instance,optimum,r_mean,r_sigma,h_mean,h_sigma,verdict,z\n";
  csv << name << ',' << (opt >= 0 ? std::to_string(opt) : "nan") << ','
      << qatsp::fmt_double(r_agg.mean) << ',' << qatsp::fmt_double(r_agg.sigma)
      << ',' << qatsp::fmt_double(h_agg.mean) << ','
      << qatsp::fmt_double(h_agg.sigma) << ','
      << (cmp.verdict == qatsp::Verdict::first_better ? "h-better"
          : cmp.verdict == qatsp::Verdict::second_better ? "r-better"
                                                         : "-")
      << ',' << qatsp::fmt_double(cmp.z) << '\n';
  qatsp::atomic_write(join_path(c.out_dir, "stats.csv"), csv.str());
  write_manifest(c.out_dir, "stats", config);

  Json js;
  js["command"] = "stats";
  js["instance"] = name;
  js["optimum"] = opt;
  js["r_mean"] = qatsp::sig12(r_agg.mean);
  js["r_sigma"] = qatsp::sig12(r_agg.sigma);
  js["h_mean"] = qatsp::sig12(h_agg.mean);
  js["h_sigma"] = qatsp::sig12(h_agg.sigma);
  js["z"] = qatsp::sig12(cmp.z);
  js["p_two_sided"] = qatsp::sig12(cmp.p_two_sided);
  js["verdict"] = qatsp::to_string(cmp.verdict);
  js["files"] = {join_path(c.out_dir, "stats.csv")};
  emit(js);
  return 0;
}

qatsp::SampleSet read_sampleset_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  qatsp::SampleSet s;
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string bits, energy, occ, cbf;
    std::getline(ss, bits, ',');
    std::getline(ss, energy, ',');
    std::getline(ss, occ, ',');
    std::getline(ss, cbf, ',');
    qatsp::SampleRecord rec;
    rec.state.reserve(bits.size());
    for (char ch : bits) rec.state.push_back(ch == '1' ? 1 : -1);
    rec.energy = std::stod(energy);
    rec.occurrences = std::stoll(occ);
    rec.chain_break_fraction = cbf.empty() ? 0.0 : std::stod(cbf);
    s.num_reads += rec.occurrences;
    s.records.push_back(std::move(rec));
  }
  return s;
}

std::vector<qatsp::RunRecord> read_run_records_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::vector<qatsp::RunRecord> out;
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::vector<std::string> f;
    std::string item;
    while (std::getline(ss, item, ',')) f.push_back(item);
    if (f.size() != 18) {
      throw std::runtime_error("bad sweep csv row: '" + line + "'");
    }
    qatsp::RunRecord r;
    r.qubo_type = qatsp::qubo_type_from_string(f[0]);
    r.A = std::stod(f[1]);
    r.B = std::stod(f[2]);
    r.chain_strength = std::stod(f[3]);
    r.A_real = std::stod(f[4]);
    r.B_real = std::stod(f[5]);
    r.cs_real = std::stod(f[6]);
    r.scale = std::stod(f[7]);
    r.num_reads = std::stoll(f[8]);
    r.n_feasible = std::stoll(f[9]);
    r.n_optimum = std::stoll(f[10]);
    r.n_nonpenalized = std::stoll(f[11]);
    r.feasible_ratio = std::stod(f[12]);
    r.optimum_ratio = std::stod(f[13]);
    r.optimum_by_feasible = std::stod(f[14]);
    r.min_energy = std::stod(f[15]);
    r.mean_chain_break = std::stod(f[16]);
    r.seed = std::stoull(f[17]);
    if (std::isnan(r.A_real)) r.error = "failed";
    out.push_back(std::move(r));
  }
  return out;
}

int cmd_plot_data(const CommonOpts& common, const std::string& kind,
                  const std::string& sweep_csv, const std::string& samples_csv,
                  const std::string& metric_name, const std::string& qubo_sel,
                  double min_cs_real, int bins, bool svg,
                  const ModelOpts& model) {
  Json config;
  CommonOpts c = common;
  std::string k = kind, scsv = sweep_csv, pcsv = samples_csv;
  std::string metric = metric_name, qsel = qubo_sel;
  ModelOpts m = model;
  double min_cs = min_cs_real;
  int nb = bins;
  bool render = svg;
  if (!common.manifest.empty()) {
    config = manifest_config(common.manifest, "plot-data");
    k = config["kind"];
    scsv = config["sweep_csv"];
    pcsv = config["samples_csv"];
    metric = config["metric"];
    qsel = config["qubo_filter"];
    min_cs = config["min_cs_real"];
    nb = config["bins"];
    render = config["svg"];
    c.instance_path = config["instance"];
    c.subset = config["subset"];
    m.qubo_type = config["qubo"];
    m.A = config["A"];
    m.B = config["B"];
  } else {
    config["kind"] = k;
    config["sweep_csv"] = scsv;
    config["samples_csv"] = pcsv;
    config["metric"] = metric;
    config["qubo_filter"] = qsel;
    config["min_cs_real"] = min_cs;
    config["bins"] = nb;
    config["svg"] = render;
    config["instance"] = c.instance_path;
    config["subset"] = c.subset;
    config["qubo"] = m.qubo_type;
    config["A"] = m.A;
    config["B"] = m.B;
  }

  Json js;
  js["command"] = "plot-data";
  js["kind"] = k;
  if (k == "landscape") {
    if (scsv.empty()) throw std::invalid_argument("need --sweep-csv");
    const auto records = read_run_records_csv(scsv);
    qatsp::LandscapeFilter filter;
    filter.min_cs_real = min_cs;
    if (qsel == "r" || qsel == "reference") {
      filter.qubo_type = qatsp::QuboType::reference;
    } else if (qsel == "h" || qsel == "heuristic") {
      filter.qubo_type = qatsp::QuboType::heuristic;
    }
    const qatsp::LandscapeGrid grid = qatsp::landscape_grid(
        records, qatsp::metric_from_string(metric), filter, nb);
    qatsp::atomic_write(join_path(c.out_dir, "landscape.csv"),
                        qatsp::landscape_to_csv(grid));
    js["files"] = Json::array({join_path(c.out_dir, "landscape.csv")});
    if (render) {
      qatsp::atomic_write(join_path(c.out_dir, "landscape.svg"),
                          qatsp::svg_heatmap(grid));
      js["files"].push_back(join_path(c.out_dir, "landscape.svg"));
    }
    js["empty"] = grid.empty;
  } else if (k == "histogram") {
    if (pcsv.empty()) throw std::invalid_argument("need --samples-csv");
    if (c.instance_path.empty()) {
      throw std::invalid_argument("histogram classification needs --instance");
    }
    const qatsp::Instance inst = load_instance(c.instance_path, c.subset);
    const qatsp::Qubo q = qatsp::build_qubo(
        inst.dist_norm, qatsp::qubo_type_from_string(m.qubo_type), m.A, m.B);
    const qatsp::SampleSet samples = read_sampleset_csv(pcsv);
    const qatsp::Histogram hist = qatsp::energy_histogram(samples, q.meta, nb);
    qatsp::atomic_write(join_path(c.out_dir, "histogram.csv"),
                        qatsp::histogram_to_csv(hist));
    js["files"] = Json::array({join_path(c.out_dir, "histogram.csv")});
    if (render) {
      qatsp::atomic_write(join_path(c.out_dir, "histogram.svg"),
                          qatsp::svg_histogram(hist));
      js["files"].push_back(join_path(c.out_dir, "histogram.svg"));
    }
  } else {
    throw std::invalid_argument("plot-data kind must be landscape|histogram");
  }
  write_manifest(c.out_dir, "plot-data", config);
  emit(js);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"QUBO annealing experimentation toolkit for TSP instances"};
  app.set_version_flag("--version", QATSP_VERSION);
  app.require_subcommand(1);

  // build-qubo
  auto* build = app.add_subcommand("build-qubo", "build a TSP QUBO and its Ising form");
  CommonOpts build_common;
  ModelOpts build_model;
  add_common(build, build_common);
  add_model(build, build_model);

  // oracle
  auto* oracle = app.add_subcommand("oracle", "exhaustive enumeration ground truth");
  CommonOpts oracle_common;
  ModelOpts oracle_model;
  bool oracle_cols = true;
  bool oracle_dump = false;
  add_common(oracle, oracle_common);
  add_model(oracle, oracle_model);
  oracle->add_flag("--column-functions,!--no-column-functions", oracle_cols,
                   "also scan the n^n column-function space (default on)");
  oracle->add_flag("--energies-csv", oracle_dump, "dump every evaluated state");

  // sample
  auto* sample = app.add_subcommand("sample", "run the sampling pipeline once");
  CommonOpts sample_common;
  ModelOpts sample_model;
  SampleOpts sample_opts;
  add_common(sample, sample_common);
  add_model(sample, sample_model);
  add_sampling(sample, sample_opts);

  // sweep
  auto* sweep = app.add_subcommand("sweep", "parameter grid sweep");
  CommonOpts sweep_common;
  SampleOpts sweep_opts;
  std::string sweep_grid = "paper";
  std::string sweep_qubo = "both";
  std::vector<double> sweep_a;
  std::int64_t sweep_optimum = -1;
  add_common(sweep, sweep_common);
  add_sampling(sweep, sweep_opts);
  sweep->add_option("--grid", sweep_grid, "grid preset: paper");
  sweep->add_option("--qubo", sweep_qubo, "qubo types: r|h|both")
      ->check(CLI::IsMember({"r", "h", "both", "reference", "heuristic"}));
  sweep->add_option("--a-values", sweep_a, "custom A axis (overrides --grid)");
  sweep->add_option("--optimum", sweep_optimum,
                    "known optimum length (skip brute force)");

  // hybrid
  auto* hybrid = app.add_subcommand("hybrid", "decompose, solve parts, merge");
  CommonOpts hybrid_common;
  ModelOpts hybrid_model;
  SampleOpts hybrid_opts;
  int hybrid_max_size = 7;
  int hybrid_runs = 10;
  add_common(hybrid, hybrid_common);
  add_model(hybrid, hybrid_model);
  add_sampling(hybrid, hybrid_opts);
  hybrid->add_option("--max-sub-size", hybrid_max_size,
                     "maximum sub-instance size");
  hybrid->add_option("--runs", hybrid_runs, "independent runs");

  // stats
  auto* stats = app.add_subcommand("stats", "aggregate and compare run lengths");
  CommonOpts stats_common;
  std::string stats_r, stats_h, stats_label;
  std::int64_t stats_optimum = -1;
  add_common(stats, stats_common, /*instance_required=*/false);
  stats->add_option("--r-csv", stats_r, "reference-QUBO lengths CSV");
  stats->add_option("--h-csv", stats_h, "heuristic-QUBO lengths CSV");
  stats->add_option("--label", stats_label, "instance label");
  stats->add_option("--optimum", stats_optimum, "known optimum length");

  // plot-data
  auto* plot = app.add_subcommand("plot-data", "export plot-ready CSV/SVG");
  CommonOpts plot_common;
  ModelOpts plot_model;
  std::string plot_kind = "landscape";
  std::string plot_sweep_csv, plot_samples_csv;
  std::string plot_metric = "feasible_ratio";
  std::string plot_qubo;
  double plot_min_cs = 0.0;
  int plot_bins = 20;
  bool plot_svg = false;
  add_common(plot, plot_common, /*instance_required=*/false);
  add_model(plot, plot_model);
  plot->add_option("--kind", plot_kind, "landscape|histogram");
  plot->add_option("--sweep-csv", plot_sweep_csv, "sweep.csv input");
  plot->add_option("--samples-csv", plot_samples_csv, "samples.csv input");
  plot->add_option("--metric", plot_metric,
                   "feasible_ratio|optimum_ratio|optimum_by_feasible");
  plot->add_option("--qubo-filter", plot_qubo, "restrict to one qubo type");
  plot->add_option("--min-cs-real", plot_min_cs,
                   "keep records with cs_real strictly above this");
  plot->add_option("--bins", plot_bins, "bin count");
  plot->add_flag("--svg", plot_svg, "also render SVG");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (build->parsed()) return cmd_build_qubo(build_common, build_model);
    if (oracle->parsed()) {
      return cmd_oracle(oracle_common, oracle_model, oracle_cols, oracle_dump);
    }
    if (sample->parsed()) {
      return cmd_sample(sample_common, sample_model, sample_opts);
    }
    if (sweep->parsed()) {
      return cmd_sweep(sweep_common, sweep_grid, sweep_qubo, sweep_opts,
                       sweep_a, sweep_optimum);
    }
    if (hybrid->parsed()) {
      return cmd_hybrid(hybrid_common, hybrid_model, hybrid_opts,
                        hybrid_max_size, hybrid_runs);
    }
    if (stats->parsed()) {
      return cmd_stats(stats_common, stats_r, stats_h, stats_label,
                       stats_optimum);
    }
    if (plot->parsed()) {
      return cmd_plot_data(plot_common, plot_kind, plot_sweep_csv,
                           plot_samples_csv, plot_metric, plot_qubo,
                           plot_min_cs, plot_bins, plot_svg, plot_model);
    }
  } catch (const std::invalid_argument& ex) {
    std::cerr << "argument error: " << ex.what() << "\n";
    return 2;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }
  return 2;
}
