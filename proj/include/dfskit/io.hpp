// SPDX-License-Identifier: Apache-2.0
//
// JSON file formats: channels and tensors as nested row-major arrays
// with [re, im] entries, and the deterministic decomposition report.

#ifndef DFSKIT_IO_HPP
#define DFSKIT_IO_HPP

#include <string>

#include <json.hpp>

#include "dfskit/dfs.hpp"
#include "dfskit/mps.hpp"
#include "dfskit/structure.hpp"

namespace dfskit {

using Json = nlohmann::ordered_json;

Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

Json channel_to_json(const KrausChannel& channel);
KrausChannel channel_from_json(const Json& j);

Json tensor_to_json(const MpsTensor& tensor);
MpsTensor tensor_from_json(const Json& j);

Json weighted_tensor_to_json(const WeightedTensor& tensor);
WeightedTensor weighted_tensor_from_json(const Json& j);

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

// "p/q pi" when theta is within tol of a rational multiple of pi with
// denominator <= 12; empty string otherwise.
std::string phase_annotation(double theta, double tol);

// Round to 9 decimal places (report phase precision).
double round_phase(double theta);

// The canonical decomposition report: gauge-fixed phases, per-block
// fixed-space contributions and capacities, residuals, tolerance, seed.
Json decomposition_report(const KrausChannel& channel,
                          const StructureDecomposition& decomposition,
                          double tol, std::uint64_t seed);

// Human-readable rendering of the same report.
std::string decomposition_report_text(const Json& report);

}  // namespace dfskit

#endif  // DFSKIT_IO_HPP
