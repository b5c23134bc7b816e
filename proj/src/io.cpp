// Copyright 2026 The dephaser Authors
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

#include "dephaser/io.hpp"

#include <cstdio>
#include <fstream>
#include <system_error>

#include "dephaser/errors.hpp"

namespace dephaser {

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string distribution_csv(const JointDistribution& dist) {
  const std::size_t n = dist.order();
  std::string out;
  for (std::size_t k = 1; k <= n; ++k) out += "x_" + std::to_string(k) + ",";
  out += "probability\n";
  const auto& table = dist.table();
  for (std::size_t flat = 0; flat < table.size(); ++flat) {
    for (int x : dist.tuple(flat)) out += std::to_string(x) + ",";
    out += format_double(table[flat]) + "\n";
  }
  return out;
}

nlohmann::json distribution_json(const JointDistribution& dist) {
  return {{"order", dist.order()},
          {"outcomes", dist.outcomes()},
          {"t0", dist.grid().t0()},
          {"times", dist.grid().times()},
          {"probabilities", dist.table()}};
}

std::string deficits_csv(const ClassicalityReport& report) {
  const std::size_t width = report.max_order_tested;
  std::string out = "order,position,";
  for (std::size_t k = 1; k <= width; ++k) out += "t_" + std::to_string(k) + ",";
  out += "deficit\n";
  for (const DeficitRecord& r : report.records) {
    out += std::to_string(r.order) + "," + std::to_string(r.position) + ",";
    for (std::size_t k = 0; k < width; ++k) {
      if (k < r.times.size()) out += format_double(r.times[k]);
      out += ",";
    }
    out += format_double(r.deficit) + "\n";
  }
  return out;
}

nlohmann::json report_json(const ClassicalityReport& report) {
  nlohmann::json verdicts = nlohmann::json::array();
  for (std::size_t n = 1; n <= report.verdict.size(); ++n) {
    verdicts.push_back({{"order", n},
                        {"classical", report.classical_up_to(n)},
                        {"max_deficit", report.max_deficit(n)}});
  }
  std::size_t classical_up_to = 0;
  while (classical_up_to < report.verdict.size() && report.verdict[classical_up_to]) ++classical_up_to;
  nlohmann::json records = nlohmann::json::array();
  for (const DeficitRecord& r : report.records) {
    records.push_back({{"order", r.order}, {"position", r.position}, {"times", r.times}, {"deficit", r.deficit}});
  }
  return {{"max_order_tested", report.max_order_tested},
          {"tolerance", report.tolerance},
          {"t0", report.t0},
          {"pool", report.pool},
          {"classical_up_to", classical_up_to},
          {"note",
           "verdicts hold relative to the declared time pool only; order 1 is checked as "
           "normalization"},
          {"verdicts", verdicts},
          {"records", records}};
}

nlohmann::json witness_json(const Witness& witness) {
  return {{"found", witness.found},
          {"status", witness.found ? "nonclassical" : "inconclusive"},
          {"times", witness.times},
          {"deficit", witness.deficit},
          {"candidates", witness.candidates}};
}

void write_atomic(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw Error("failed writing " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error("cannot rename onto " + path.string());
  }
}

}  // namespace dephaser
