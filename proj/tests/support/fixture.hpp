#pragma once

// The bundled 8-post fixture run through extraction, as used by the
// analytics and acceptance tests.

#include "redlens/analytics.hpp"

namespace redlens::testing {

EmbeddingConfig small_embedding_config();

const ExtractResult& fixture_extract();

/// Report inputs built the way `report` builds them: flair restored, titles
/// as the POS source.
ReportInputs fixture_report_inputs(std::size_t top_k = 5);

} // namespace redlens::testing
