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

#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "qatsp/annealer.hpp"
#include "qatsp/embedding.hpp"
#include "qatsp/oracle.hpp"
#include "qatsp/qubo.hpp"
#include "qatsp/sweep.hpp"
#include "qatsp/tsp.hpp"

namespace qatsp {

using Json = nlohmann::ordered_json;

/// %.12g rendering; model coefficients are serialized at 12 significant
/// digits.
std::string fmt_double(double v);

/// Nearest double with 12 significant decimal digits.
double sig12(double v);

/// Writes via a temp file in the same directory plus rename, so partial
/// outputs are never visible.
void atomic_write(const std::string& path, const std::string& content);

Json instance_to_json(const Instance& instance);
Json qubo_to_json(const Qubo& q);
Json ising_to_json(const IsingModel& m);
Json embedding_to_json(const Embedding& e);
Json landscape_summary_to_json(const LandscapeSummary& s);
Json run_record_to_json(const RunRecord& r);

/// "state,energy,occurrences,chain_break_fraction"; states as 0/1 strings.
std::string sampleset_to_csv(const SampleSet& s);

/// Fixed header:
/// qubo_type,A,B,chain_strength,A_real,B_real,cs_real,scale,num_reads,
/// n_feasible,n_optimum,n_nonpenalized,feasible_ratio,optimum_ratio,
/// optimum_by_feasible,min_energy,mean_chain_break,seed
std::string run_records_to_csv(const std::vector<RunRecord>& records);

std::string histogram_to_csv(const Histogram& h);
std::string landscape_to_csv(const LandscapeGrid& g);
std::string energy_rows_to_csv(const std::vector<EnergyRow>& rows, int n);

std::string svg_histogram(const Histogram& h);
std::string svg_heatmap(const LandscapeGrid& g);

}  // namespace qatsp
