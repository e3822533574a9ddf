#pragma once

#include <string>
#include <vector>

namespace tracelearn {

// Collects non-fatal learner warnings (determinism deviations, dropped
// ungeneralizable atoms, skipped ambiguous occurrences, precedence anomalies).
// Callers that do not care pass nullptr.
struct Diagnostics {
  std::vector<std::string> messages;

  void warn(std::string message) { messages.push_back(std::move(message)); }
  bool empty() const { return messages.empty(); }
};

inline void warn(Diagnostics* diag, std::string message) {
  if (diag) diag->warn(std::move(message));
}

}  // namespace tracelearn
