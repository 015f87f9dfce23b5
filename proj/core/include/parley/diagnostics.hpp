#pragma once

#include <string>
#include <vector>

namespace parley {

/// Half-open source region, 1-based. Zeroed when the construct was built
/// programmatically rather than parsed.
struct SrcSpan {
  int line = 0;
  int col = 0;
  int end_line = 0;
  int end_col = 0;

  friend bool operator==(const SrcSpan&, const SrcSpan&) = default;
};

enum class Severity { Error, Warning };

/// A located problem with a stable machine-readable code, e.g.
/// "arity-mismatch" or "unbound-variable".
struct Diagnostic {
  Severity severity = Severity::Error;
  std::string code;
  std::string message;
  SrcSpan span;

  std::string to_string() const;

  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

bool has_errors(const std::vector<Diagnostic>& diags);

}  // namespace parley
