#pragma once

#include "brancov/json_io.hpp"

namespace brancov {

struct PipelineOptions {
    int samples_per_edge = 256;
    double tolerance = 1e-9;      // quasi-basis checks only
    const Json* reference_weight = nullptr;
};

/// Exit semantics for CLI wrappers: 0 when the verdict is positive
/// (covering or branched covering), 1 on a computed negative verdict.
int pipeline_exit_code(const Json& report);

/// Chains the whole analysis: classification, strata closedness, weight
/// construction and validation, the index constant, the Borel partition,
/// index element and reconstruction identity, and the quasi-basis for
/// genuine coverings. Stage failures are labeled, not silently dropped.
Json report_pipeline(const ParsedMap& input, const PipelineOptions& opts = {});

}  // namespace brancov
