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

#include "qatsp/serialize.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qatsp {

namespace fs = std::filesystem;

std::string fmt_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

double sig12(double v) {
  if (!std::isfinite(v)) return v;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::strtod(buf, nullptr);
}

void atomic_write(const std::string& path, const std::string& content) {
  const fs::path target(path);
  if (target.has_parent_path()) {
    fs::create_directories(target.parent_path());
  }
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw std::runtime_error("cannot write '" + tmp.string() + "'");
    }
    out << content;
    if (!out.flush()) {
      throw std::runtime_error("write failed for '" + tmp.string() + "'");
    }
  }
  fs::rename(tmp, target);
}

Json instance_to_json(const Instance& instance) {
  Json j;
  j["name"] = instance.name;
  j["n"] = instance.n;
  Json coords = Json::array();
  for (const auto& c : instance.coords) coords.push_back({c[0], c[1]});
  j["coords"] = std::move(coords);
  j["dist"] = instance.dist;
  j["max_dist"] = instance.max_dist;
  return j;
}

namespace {

Json meta_to_json(const ModelMeta& meta) {
  Json j;
  j["qubo_type"] = to_string(meta.qubo_type);
  j["n"] = meta.n;
  j["A"] = sig12(meta.A);
  j["B"] = sig12(meta.B);
  if (meta.qubo_type == QuboType::heuristic) {
    j["C"] = sig12(meta.C);
    Json pen = Json::array();
    for (const auto& [u, v] : meta.penalized) pen.push_back({u, v});
    j["penalized_edges"] = std::move(pen);
  }
  return j;
}

Json extreme_to_json(const ExtremeRecord& r) {
  Json j;
  j["energy"] = sig12(r.energy);
  j["b_coeff"] = sig12(r.b_coeff);
  j["constraint_energy"] = sig12(r.constraint_energy);
  j["sequence"] = r.sequence;
  return j;
}

}  // namespace

Json qubo_to_json(const Qubo& q) {
  Json j;
  j["n_vars"] = q.n_vars;
  Json linear = Json::array();
  for (int i = 0; i < q.n_vars; ++i) {
    if (q.linear[i] != 0.0) linear.push_back({i, sig12(q.linear[i])});
  }
  j["linear"] = std::move(linear);
  Json quad = Json::array();
  for (const auto& t : q.quadratic) {
    quad.push_back({t.u, t.v, sig12(t.value)});
  }
  j["quadratic"] = std::move(quad);
  j["offset"] = sig12(q.offset);
  j["meta"] = meta_to_json(q.meta);
  return j;
}

Json ising_to_json(const IsingModel& m) {
  Json j;
  j["n_sites"] = m.num_sites();
  Json h = Json::array();
  for (int i = 0; i < m.num_sites(); ++i) {
    if (m.h[i] != 0.0) h.push_back({m.sites[i], sig12(m.h[i])});
  }
  j["h"] = std::move(h);
  Json couplings = Json::array();
  for (const auto& t : m.couplings) {
    couplings.push_back({m.sites[t.u], m.sites[t.v], sig12(t.value)});
  }
  j["J"] = std::move(couplings);
  j["offset"] = sig12(m.offset);
  j["meta"] = meta_to_json(m.meta);
  return j;
}

Json embedding_to_json(const Embedding& e) {
  Json j;
  for (std::size_t v = 0; v < e.chains.size(); ++v) {
    j[std::to_string(v)] = e.chains[v];
  }
  return j;
}

Json landscape_summary_to_json(const LandscapeSummary& s) {
  Json j;
  j["n_feasible"] = s.n_feasible;
  j["n_nonpenalized"] = s.n_nonpenalized;
  j["n_penalized"] = s.n_penalized;
  j["best_feasible"] = extreme_to_json(s.best_feasible);
  j["worst_feasible"] = extreme_to_json(s.worst_feasible);
  j["best_nonpenalized"] =
      s.best_nonpenalized ? extreme_to_json(*s.best_nonpenalized) : Json();
  j["worst_nonpenalized"] =
      s.worst_nonpenalized ? extreme_to_json(*s.worst_nonpenalized) : Json();
  j["best_infeasible"] =
      s.best_infeasible ? extreme_to_json(*s.best_infeasible) : Json();
  j["optimal_tours"] = s.optimal_tours;
  return j;
}

Json run_record_to_json(const RunRecord& r) {
  Json j;
  j["qubo_type"] = to_string(r.qubo_type);
  j["A"] = sig12(r.A);
  j["B"] = sig12(r.B);
  j["chain_strength"] = sig12(r.chain_strength);
  j["A_real"] = sig12(r.A_real);
  j["B_real"] = sig12(r.B_real);
  j["cs_real"] = sig12(r.cs_real);
  j["scale"] = sig12(r.scale);
  j["num_reads"] = r.num_reads;
  j["n_feasible"] = r.n_feasible;
  j["n_optimum"] = r.n_optimum;
  j["n_nonpenalized"] = r.n_nonpenalized;
  j["feasible_ratio"] = sig12(r.feasible_ratio);
  j["optimum_ratio"] = sig12(r.optimum_ratio);
  j["optimum_by_feasible"] = std::isnan(r.optimum_by_feasible)
                                 ? Json()
                                 : Json(sig12(r.optimum_by_feasible));
  j["min_energy"] = sig12(r.min_energy);
  j["mean_chain_break"] = sig12(r.mean_chain_break);
  j["seed"] = r.seed;
  if (!r.error.empty()) j["error"] = r.error;
  return j;
}

std::string sampleset_to_csv(const SampleSet& s) {
  std::ostringstream out;
  out << "state,energy,occurrences,chain_break_fraction\n";
  std::string bits;
  for (const auto& r : s.records) {
    bits.clear();
    for (std::int8_t v : r.state) bits.push_back(v > 0 ? '1' : '0');
    out << bits << ',' << fmt_double(r.energy) << ',' << r.occurrences << ','
        << fmt_double(r.chain_break_fraction) << '\n';
  }
  return out.str();
}

std::string run_records_to_csv(const std::vector<RunRecord>& records) {
  std::ostringstream out;
  out << "qubo_type,A,B,chain_strength,A_real,B_real,cs_real,scale,num_reads,"
         "n_feasible,n_optimum,n_nonpenalized,feasible_ratio,optimum_ratio,"
         "optimum_by_feasible,min_energy,mean_chain_break,seed\n";
  for (const auto& r : records) {
    if (!r.error.empty()) {
      out << to_string(r.qubo_type) << ',' << fmt_double(r.A) << ','
          << fmt_double(r.B) << ',' << fmt_double(r.chain_strength)
          << ",nan,nan,nan,nan," << r.num_reads << ",0,0,0,nan,nan,nan,nan,nan,"
          << r.seed << '\n';
      continue;
    }
    out << to_string(r.qubo_type) << ',' << fmt_double(r.A) << ','
        << fmt_double(r.B) << ',' << fmt_double(r.chain_strength) << ','
        << fmt_double(r.A_real) << ',' << fmt_double(r.B_real) << ','
        << fmt_double(r.cs_real) << ',' << fmt_double(r.scale) << ','
        << r.num_reads << ',' << r.n_feasible << ',' << r.n_optimum << ','
        << r.n_nonpenalized << ',' << fmt_double(r.feasible_ratio) << ','
        << fmt_double(r.optimum_ratio) << ','
        << fmt_double(r.optimum_by_feasible) << ','
        << fmt_double(r.min_energy) << ',' << fmt_double(r.mean_chain_break)
        << ',' << r.seed << '\n';
  }
  return out.str();
}

std::string histogram_to_csv(const Histogram& h) {
  std::ostringstream out;
  out << "bin_lo,bin_hi,feasible,penalized,infeasible\n";
  for (std::size_t b = 0; b + 1 < h.edges.size(); ++b) {
    out << fmt_double(h.edges[b]) << ',' << fmt_double(h.edges[b + 1]) << ','
        << h.feasible[b] << ',' << h.penalized[b] << ',' << h.infeasible[b]
        << '\n';
  }
  return out.str();
}

std::string landscape_to_csv(const LandscapeGrid& g) {
  std::ostringstream out;
  out << "a_lo,a_hi,b_lo,b_hi,mean,count\n";
  if (g.empty) return out.str();
  for (std::size_t ia = 0; ia + 1 < g.a_edges.size(); ++ia) {
    for (std::size_t ib = 0; ib + 1 < g.b_edges.size(); ++ib) {
      out << fmt_double(g.a_edges[ia]) << ',' << fmt_double(g.a_edges[ia + 1])
          << ',' << fmt_double(g.b_edges[ib]) << ','
          << fmt_double(g.b_edges[ib + 1]) << ','
          << fmt_double(g.mean[ia][ib]) << ',' << g.count[ia][ib] << '\n';
    }
  }
  return out.str();
}

std::string energy_rows_to_csv(const std::vector<EnergyRow>& rows, int n) {
  std::ostringstream out;
  out << "state,energy,class\n";
  std::string bits(static_cast<std::size_t>(n) * n, '0');
  for (const auto& row : rows) {
    std::fill(bits.begin(), bits.end(), '0');
    for (int j = 0; j < n; ++j) {
      bits[var_index(row.sequence[j], j, n)] = '1';
    }
    const char* cls = row.cls == EnergyRow::Class::feasible ? "feasible"
                      : row.cls == EnergyRow::Class::penalized ? "penalized"
                                                               : "infeasible";
    out << bits << ',' << fmt_double(row.energy) << ',' << cls << '\n';
  }
  return out.str();
}

namespace {

// Blue -> red ramp for [0, 1]; NaN renders gray.
std::string ramp_color(double v) {
  if (std::isnan(v)) return "#cccccc";
  v = std::clamp(v, 0.0, 1.0);
  const int r = static_cast<int>(40 + 180 * v);
  const int g = 40;
  const int b = static_cast<int>(220 - 180 * v);
  char buf[16];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
  return buf;
}

}  // namespace

std::string svg_histogram(const Histogram& h) {
  const int bins = static_cast<int>(h.feasible.size());
  const int width = 640, height = 360, pad = 30;
  long long max_count = 1;
  for (int b = 0; b < bins; ++b) {
    max_count = std::max(max_count,
                         h.feasible[b] + h.penalized[b] + h.infeasible[b]);
  }
  std::ostringstream out;
  out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << width
      << "' height='" << height << "'>\n";
  const double bw = static_cast<double>(width - 2 * pad) / bins;
  const double scale = static_cast<double>(height - 2 * pad) / max_count;
  for (int b = 0; b < bins; ++b) {
    const double x = pad + b * bw;
    double y = height - pad;
    const struct {
      long long count;
      const char* color;
    } parts[3] = {{h.feasible[b], "#2058c0"},
                  {h.penalized[b], "#d0a020"},
                  {h.infeasible[b], "#c03030"}};
    for (const auto& p : parts) {
      if (p.count <= 0) continue;
      const double hh = p.count * scale;
      y -= hh;
      out << "<rect x='" << x << "' y='" << y << "' width='" << bw * 0.92
          << "' height='" << hh << "' fill='" << p.color << "'/>\n";
    }
  }
  out << "<line x1='" << pad << "' y1='" << height - pad << "' x2='"
      << width - pad << "' y2='" << height - pad
      << "' stroke='black'/>\n</svg>\n";
  return out.str();
}

std::string svg_heatmap(const LandscapeGrid& g) {
  const int width = 640, height = 480, pad = 30;
  std::ostringstream out;
  out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << width
      << "' height='" << height << "'>\n";
  if (!g.empty) {
    const int rows = static_cast<int>(g.mean.size());
    const int cols = static_cast<int>(g.mean[0].size());
    double vmax = 0.0;
    for (const auto& row : g.mean) {
      for (double v : row) {
        if (!std::isnan(v)) vmax = std::max(vmax, v);
      }
    }
    if (vmax <= 0.0) vmax = 1.0;
    const double cw = static_cast<double>(width - 2 * pad) / rows;
    const double ch = static_cast<double>(height - 2 * pad) / cols;
    for (int ia = 0; ia < rows; ++ia) {
      for (int ib = 0; ib < cols; ++ib) {
        const double v = g.mean[ia][ib];
        out << "<rect x='" << pad + ia * cw << "' y='"
            << height - pad - (ib + 1) * ch << "' width='" << cw
            << "' height='" << ch << "' fill='"
            << ramp_color(std::isnan(v) ? v : v / vmax) << "'/>\n";
      }
    }
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace qatsp
