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


#include "qtele/pipeline/matrix_io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <nlohmann/json.hpp>

#include "qtele/errors.hpp"

namespace qtele::pipeline {
namespace {

using nlohmann::json;

// Repairs smaller than this are rounding noise and are not logged.
constexpr double kLogFloor = 1e-12;

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  const auto e = s.find_last_not_of(" \t\r\n");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

void record(std::vector<Adjustment>& log, const std::string& source, const char* kind,
            double magnitude, double cap) {
  if (magnitude <= kLogFloor) return;
  if (magnitude > cap) {
    std::ostringstream msg;
    msg << source << ": " << kind << " repair of " << magnitude << " exceeds the cap " << cap;
    throw DataQualityError(msg.str());
  }
  log.push_back({source, kind, magnitude});
}

// Shared repair chain; returns the repaired matrix.
CMatrix repair(const CMatrix& m, const std::string& source, double cap,
               std::vector<Adjustment>& log) {
  if (m.rows() != m.cols()) throw ParseError(source + ": matrix is not square");
  record(log, source, "hermiticity", (m - m.adjoint()).cwiseAbs().maxCoeff(), cap);
  CMatrix h = hermitian_part(m);
  const double lo = min_eigenvalue(h);
  if (lo < 0.0) {
    record(log, source, "negative_eigenvalue", -lo, cap);
    h = clip_to_psd(h);
  }
  const double tr = h.trace().real();
  record(log, source, "trace", std::abs(tr - 1.0), cap);
  if (!(tr > 0.0)) throw DataQualityError(source + ": matrix has non-positive trace");
  return h / tr;
}

}  // namespace

CMatrix parse_matrix_json(const std::string& text, const std::string& origin) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(origin + ": invalid JSON (" + e.what() + ")");
  }
  if (!j.is_object()) throw ParseError(origin + ": top level must be an object");
  if (!j.contains("dim") || !j["dim"].is_number_integer()) {
    throw ParseError(origin + ": field 'dim' missing or not an integer");
  }
  const int dim = j["dim"].get<int>();
  if (dim < 2) throw ParseError(origin + ": field 'dim' must be at least 2");
  if (!j.contains("entries") || !j["entries"].is_array() ||
      j["entries"].size() != static_cast<std::size_t>(dim)) {
    throw ParseError(origin + ": field 'entries' must be an array of " + std::to_string(dim) +
                     " rows");
  }
  CMatrix m(dim, dim);
  for (int r = 0; r < dim; ++r) {
    const json& row = j["entries"][static_cast<std::size_t>(r)];
    if (!row.is_array() || row.size() != static_cast<std::size_t>(dim)) {
      throw ParseError(origin + ": entries[" + std::to_string(r) + "] must have " +
                       std::to_string(dim) + " elements");
    }
    for (int c = 0; c < dim; ++c) {
      const json& z = row[static_cast<std::size_t>(c)];
      if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number()) {
        throw ParseError(origin + ": entries[" + std::to_string(r) + "][" + std::to_string(c) +
                         "] must be [re, im]");
      }
      m(r, c) = Complex(z[0].get<double>(), z[1].get<double>());
    }
  }
  return m;
}

CMatrix read_matrix_json(const std::string& path) {
  return parse_matrix_json(read_text_file(path), path);
}

std::string matrix_to_json(const CMatrix& m) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "{\n  \"dim\": " << m.rows() << ",\n  \"entries\": [\n";
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    os << "    [";
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      os << (c ? ", " : "") << "[" << m(r, c).real() << ", " << m(r, c).imag() << "]";
    }
    os << "]" << (r + 1 < m.rows() ? "," : "") << "\n";
  }
  os << "  ]\n}\n";
  return os.str();
}

void write_matrix_json(const std::string& path, const CMatrix& m) {
  write_text_file(path, matrix_to_json(m));
}

IngestedState repair_density_matrix(const CMatrix& m, const std::string& source, double cap) {
  if (m.rows() != 3) throw DimensionError(source + ": expected a 3 x 3 density matrix");
  IngestedState s;
  s.raw = m;
  s.rho = DensityMatrix::from_matrix(repair(m, source, cap, s.adjustments));
  return s;
}

IngestedProcess repair_process_matrix(const CMatrix& m, const std::string& source, double cap) {
  if (m.rows() != 9) throw DimensionError(source + ": expected a 9 x 9 process matrix");
  IngestedProcess p;
  p.raw = m;
  p.chi = ProcessMatrix::from_matrix(repair(m, source, cap, p.adjustments));
  return p;
}

std::variant<IngestedState, IngestedProcess> ingest_matrix(const std::string& path, double cap) {
  const CMatrix m = read_matrix_json(path);
  if (m.rows() == 3) return repair_density_matrix(m, path, cap);
  if (m.rows() == 9) return repair_process_matrix(m, path, cap);
  throw ParseError(path + ": dim must be 3 (state) or 9 (process)");
}

IngestedState ingest_density_matrix(const std::string& path, double cap) {
  return repair_density_matrix(read_matrix_json(path), path, cap);
}

IngestedProcess ingest_process_matrix(const std::string& path, double cap) {
  return repair_process_matrix(read_matrix_json(path), path, cap);
}

CountsTable parse_counts_csv(const std::string& text, const ProjectorSet& projectors,
                             double exposure, const std::string& origin) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  bool header = false;
  CountsTable t;
  t.projectors = projectors;
  t.exposure = exposure;
  t.counts.assign(projectors.size(), -1);
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = origin + ":" + std::to_string(lineno);
    if (!header) {
      if (line != "setting,count") throw ParseError(where + ": expected header 'setting,count'");
      header = true;
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw ParseError(where + ": expected 'setting,count'");
    const std::string setting = trim(line.substr(0, comma));
    const std::string value = trim(line.substr(comma + 1));
    std::size_t idx = 0;
    try {
      idx = projectors.index_of(setting);
    } catch (const ParseError&) {
      throw ParseError(where + ": unknown setting '" + setting + "'");
    }
    std::int64_t n = 0;
    std::size_t used = 0;
    try {
      n = std::stoll(value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != value.size() || value.empty() || n < 0) {
      throw ParseError(where + ": count '" + value + "' is not a non-negative integer");
    }
    if (t.counts[idx] >= 0) throw ParseError(where + ": duplicate setting '" + setting + "'");
    t.counts[idx] = n;
  }
  if (!header) throw ParseError(origin + ": empty counts file");
  for (std::size_t j = 0; j < t.counts.size(); ++j) {
    if (t.counts[j] < 0) throw ParseError(origin + ": missing setting '" + projectors.labels[j] + "'");
  }
  return t;
}

CountsTable read_counts_csv(const std::string& path, const ProjectorSet& projectors,
                            double exposure) {
  return parse_counts_csv(read_text_file(path), projectors, exposure, path);
}

std::string counts_to_csv(const CountsTable& counts) {
  std::ostringstream os;
  os << "setting,count\n";
  for (std::size_t j = 0; j < counts.counts.size(); ++j) {
    os << counts.projectors.labels[j] << "," << counts.counts[j] << "\n";
  }
  return os.str();
}

std::string read_text_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ParseError(path + ": cannot open file");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(path + ": cannot open file for writing");
  f << text;
  if (!f) throw Error(path + ": write failed");
}

}  // namespace qtele::pipeline
