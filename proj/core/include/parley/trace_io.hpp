#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

#include "parley/engine.hpp"

namespace parley::io {

// Raised when a trace document is not valid JSON or does not follow the
// trace schema (missing keys, wrong types, non-ground atoms, dangling ids).
class TraceFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Serializes a trace to a stable JSON document:
//
//   {
//     "seed": 42,
//     "termination": "quiescent" | "step_limit",
//     "initial": { "linear": [[id, "atom"], ...], "permanent": ["atom", ...] },
//     "firings": [
//       { "step": 0, "rule": "initiate", "binding": {"C": "daphne", ...},
//         "consumed": [id, ...], "produced": [[id, "atom"], ...],
//         "read": [id-or-"atom", ...] },
//       ...
//     ],
//     "final": { same shape as "initial" }
//   }
//
// Key order is fixed as listed and atoms render in rule-file surface syntax,
// so equal traces serialize to identical bytes. Output is two-space indented
// and ends with a newline.
std::string trace_to_json(const Trace& trace);

// Parses a document produced by trace_to_json. Throws TraceFormatError on
// malformed input. The result satisfies the replay invariant only if the
// original did; call replay() to verify.
Trace trace_from_json(std::istream& in);
Trace trace_from_json_string(const std::string& text);

// Writes content to path via a temporary file in the same directory followed
// by a rename, so readers never observe a partially written file.
void write_file_atomic(const std::filesystem::path& path,
                       std::string_view content);

}  // namespace parley::io
