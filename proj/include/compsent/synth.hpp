#pragma once

// Deterministic construction of the bundled annotated corpus. Sentences are
// drawn from calibrated template families so that per-domain label counts,
// baseline behavior and domain-transfer structure land on fixed targets;
// the same seed always yields the same byte-for-byte dataset.

#include <cstdint>

#include "compsent/corpus.hpp"

namespace compsent {

struct SynthConfig {
  std::uint64_t seed = 7;
  // Also emit the rows whose annotation confidence falls below the 0.5
  // ingestion threshold (they are filtered out again on load).
  bool include_below_threshold = true;
};

Dataset synthesize_corpus(const SynthConfig& cfg = {});

}  // namespace compsent
