#pragma once
#include "rollframe/cli/runner.hpp"

#include <filesystem>
#include <iosfwd>

namespace rollframe::cli {

struct IoError : Error { using Error::Error; };

/// CSV rows for one record: header `s,coord_1..,ambient_1..` then one line
/// per sample, round-trip decimal formatting.
void emit_csv(const ResultRecord& record, std::ostream& out);

/// All records keyed by task id, with schema_version stamped.
void emit_json(const std::vector<ResultRecord>& records, std::ostream& out);

/// 2D polyline plot of the frame coordinates; requires dim_domain == 2.
void emit_svg(const ResultRecord& record, std::ostream& out);

/// Write per-record files under out_dir (csv/svg: `<output>.<ext>` per record,
/// json: one `results.json`).  Returns the written paths.
std::vector<std::filesystem::path> emit(const std::vector<ResultRecord>& records,
                                        const std::string& format,
                                        const std::filesystem::path& out_dir);

} // namespace rollframe::cli
