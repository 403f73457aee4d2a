#pragma once

// JSON reports and CSV exports.

#include <filesystem>
#include <optional>

#include <json.hpp>

#include "dslab/quartic.hpp"

namespace dslab {

using json = nlohmann::ordered_json;

json to_json(cplx z);

json invariants_json(const InvariantData& inv, double tol_solv = kTolSolv);
json stationarity_json(const StationarityReport& r);
json classification_json(const ClassificationReport& r);
json s3_json(const S3Decomposition& d);
json quartic_json(const QuarticReport& r);
json trace_record_json(const FlowRecord& r);

/// One row per grid point: j,k,x,y and Re/Im of kappa1, kappa2, c, rho; with a
/// quartic report also Q, lambda and the umbilic flag.
void write_field_dump(const std::filesystem::path& path, const InvariantData& inv,
                      const QuarticReport* quartic = nullptr);

void write_trace_csv(const std::filesystem::path& path, const FlowTrace& trace);

/// Writes `text` to `path`, or to stdout when `path` is empty.
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace dslab
