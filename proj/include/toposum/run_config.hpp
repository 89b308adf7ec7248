#pragma once

#include <string>

#include "toposum/compressor.hpp"
#include "toposum/embeddings.hpp"
#include "toposum/pipeline.hpp"

namespace toposum {

// Effective settings of one run, after flag > config file > default
// resolution. Serialized verbatim into every Summary so runs can be
// reproduced exactly.
struct RunConfig {
    PipelineConfig pipeline;
    CompressionConfig compression;
    EmbeddingProviderConfig provider;
    InputFormat input_format = InputFormat::plain_text;
};

std::string config_echo_json(const RunConfig& cfg);

void validate_run_config(const RunConfig& cfg); // throws ConfigError

} // namespace toposum
