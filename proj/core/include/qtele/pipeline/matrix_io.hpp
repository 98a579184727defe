// Copyright 2026 The qtele Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// File formats.
//
// Complex matrix JSON: {"dim": n, "entries": [[[re, im], ...], ...]}, row
// major; extra keys are ignored. Counts CSV: header "setting,count", one row
// per projector label.

#ifndef QTELE_PIPELINE_MATRIX_IO_HPP
#define QTELE_PIPELINE_MATRIX_IO_HPP

#include <string>
#include <variant>
#include <vector>

#include "qtele/process.hpp"
#include "qtele/tomography.hpp"
#include "qtele/types.hpp"

namespace qtele::pipeline {

/// Throws ParseError naming the offending field.
CMatrix parse_matrix_json(const std::string& text, const std::string& origin = "<string>");
CMatrix read_matrix_json(const std::string& path);
std::string matrix_to_json(const CMatrix& m);
void write_matrix_json(const std::string& path, const CMatrix& m);

/// One repair applied while ingesting a matrix.
struct Adjustment {
  std::string source;
  std::string kind;  // "hermiticity", "negative_eigenvalue", "trace"
  double magnitude = 0.0;
};

inline constexpr double kRepairCap = 0.05;

struct IngestedState {
  CMatrix raw;
  DensityMatrix rho = DensityMatrix::maximally_mixed(3);
  std::vector<Adjustment> adjustments;
};

struct IngestedProcess {
  CMatrix raw;
  ProcessMatrix chi = ProcessMatrix::ideal();
  std::vector<Adjustment> adjustments;
};

/// Symmetrise, clip negative eigenvalues, renormalise the trace. Each repair
/// is logged with its size: max |M - M^dag|, the most negative eigenvalue,
/// and |Tr - 1|. A repair above `cap` throws DataQualityError.
IngestedState repair_density_matrix(const CMatrix& m, const std::string& source,
                                    double cap = kRepairCap);
IngestedProcess repair_process_matrix(const CMatrix& m, const std::string& source,
                                      double cap = kRepairCap);

/// Reads a file and dispatches on its dimension: 3 -> state, 9 -> process.
std::variant<IngestedState, IngestedProcess> ingest_matrix(const std::string& path,
                                                           double cap = kRepairCap);
IngestedState ingest_density_matrix(const std::string& path, double cap = kRepairCap);
IngestedProcess ingest_process_matrix(const std::string& path, double cap = kRepairCap);

/// Counts CSV against a projector set. Throws ParseError with the line number.
CountsTable parse_counts_csv(const std::string& text, const ProjectorSet& projectors,
                             double exposure = 1.0, const std::string& origin = "<string>");
CountsTable read_counts_csv(const std::string& path, const ProjectorSet& projectors,
                            double exposure = 1.0);
std::string counts_to_csv(const CountsTable& counts);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace qtele::pipeline

#endif  // QTELE_PIPELINE_MATRIX_IO_HPP
