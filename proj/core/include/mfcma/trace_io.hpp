#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <string_view>

#include "mfcma/harness.hpp"

namespace mfcma {

/// One header line
///   # mfcma-trace v1 algorithm=... objective=... ... columns=t,evals,best,sigma[,eig_1..]
/// followed by comma-separated rows in %.17e notation.
void write_trace(std::ostream& out, const RunRecord& record);

/// Parses a trace written by write_trace. The returned record has the
/// config fields from the header, the rows, and final values taken from
/// the last row; best_x is empty. Throws std::runtime_error on malformed
/// input.
RunRecord read_trace(std::istream& in);

/// Applies one setting. Keys are CLI flag names without dashes prefix
/// ("max-fes", "h", "record-spectrum"), optionally qualified by their
/// section ("run.max-fes", "params.h", "trace.record-spectrum").
/// Throws std::invalid_argument for unknown keys or bad values.
void apply_setting(RunConfig& config, std::string_view key, std::string_view value);

/// Flat key=value text; '#' starts a comment. Later keys win.
std::map<std::string, std::string> parse_config(std::istream& in);

void apply_config(RunConfig& config, const std::map<std::string, std::string>& entries);

/// Serializes every setting in a form parse_config/apply_config accept.
void write_config(std::ostream& out, const RunConfig& config);

}  // namespace mfcma
