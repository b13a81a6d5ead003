#pragma once

#include <string>

#include "core/auc.hpp"

namespace aucgibbs {

/// Parse "score,group" CSV text: header required, group must be 0 or 1,
/// scores finite, at least two rows per group. Ties are accepted here
/// (the rank-likelihood path rejects them when ranks are computed).
ScoreData parse_scores_csv(const std::string& text);

/// Read a file and parse it; errors mention the path.
ScoreData read_scores_csv(const std::string& path);

/// Canonical serialization: header, all group-1 rows first, then group-0,
/// scores printed with %.17g (round-trip exact). parse followed by write
/// is the identity on canonical files.
std::string canonical_scores_csv(const ScoreData& data);

void write_scores_csv(const std::string& path, const ScoreData& data);

}  // namespace aucgibbs
