// Command-line front end: summarize documents, inspect their topology, or
// score candidate summaries against references.
#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "nlohmann/json.hpp"
#include "toposum/compressor.hpp"
#include "toposum/corpus.hpp"
#include "toposum/embeddings.hpp"
#include "toposum/errors.hpp"
#include "toposum/pipeline.hpp"
#include "toposum/pool.hpp"
#include "toposum/rouge.hpp"
#include "toposum/run_config.hpp"

using nlohmann::json;
using namespace toposum;

namespace {

// Raw option values bound at parse time; applied onto the RunConfig after
// the config file so that flags win. Options shared by several subcommands
// register one handle per subcommand under the same key.
struct RawOptions {
    std::string input;
    std::string format = "plain_text";
    double ratio = 0.3;
    std::string embed_mode;
    std::string embeddings;
    std::string endpoint;
    std::string model;
    std::string auth_token_env;
    int batch_size = 32;
    int max_retries = 3;
    double timeout = 30.0;
    int backoff_ms = 100;
    int max_in_flight = 4;
    std::size_t mock_dim = 32;
    std::string query;
    std::string out;
    std::string out_format = "json";
    std::string deletion_log;
    std::string config_file;
    bool no_pool = false;
    std::string mode;
    bool h0_only = false;
    bool no_hierarchy = false;
    bool strict = false;
    std::uint64_t seed = 42;
    double alpha = 0.5;
    double tau = 10.0;
    double lambda = 0.7;
    double beta = 0.5;
    int k_pool = 3;
    int m_pool = 3;
    double landmark_proportion = 0.2;
    int nu = 1;
    double max_filtration = 3.0;
    std::size_t hierarchy_threshold = 120;
    int segment_count = 0;
    double local_ratio_floor = 0.5;
    double disconnect_penalty = -1e9;
    double bm25_k1 = 1.2;
    double bm25_b = 0.75;

    std::map<std::string, std::vector<CLI::Option*>> handles;

    void track(const std::string& key, CLI::Option* opt) {
        handles[key].push_back(opt);
    }

    bool given(const std::string& key) const {
        auto it = handles.find(key);
        if (it == handles.end()) return false;
        return std::any_of(it->second.begin(), it->second.end(),
                           [](const CLI::Option* o) { return o->count() > 0; });
    }
};

ScoringMode parse_mode(const std::string& name) {
    if (name == "topo_task") return ScoringMode::topo_task;
    if (name == "random") return ScoringMode::random;
    if (name == "topo_only") return ScoringMode::topo_only;
    throw ConfigError("unknown scoring mode '" + name +
                      "' (expected topo_task, random, or topo_only)");
}

EmbedMode parse_embed_mode(const std::string& name) {
    if (name == "cache") return EmbedMode::cache;
    if (name == "http") return EmbedMode::http;
    if (name == "mock") return EmbedMode::mock;
    throw ConfigError("unknown embedding mode '" + name +
                      "' (expected cache, http, or mock)");
}

InputFormat parse_format(const std::string& name) {
    if (name == "plain_text") return InputFormat::plain_text;
    if (name == "jsonl") return InputFormat::jsonl;
    throw ConfigError("unknown input format '" + name +
                      "' (expected plain_text or jsonl)");
}

double to_double(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "' needs a number, got '" + value +
                          "'");
    }
}

long long to_int(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const long long v = std::stoll(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "' needs an integer, got '" + value +
                          "'");
    }
}

bool to_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
    if (value == "false" || value == "0" || value == "no" || value == "off")
        return false;
    throw ConfigError("config key '" + key + "' needs a boolean, got '" + value + "'");
}

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

// Flat key = value settings, '#' comments, keys spelled like the long flags
// with '-' replaced by '_'.
std::map<std::string, std::string> read_config_file(const std::string& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) throw IoError("cannot open config file: " + path);
    std::map<std::string, std::string> entries;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(file, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(line_no) +
                              ": expected 'key = value'");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        std::replace(key.begin(), key.end(), '-', '_');
        if (key.empty())
            throw ConfigError(path + ":" + std::to_string(line_no) + ": empty key");
        entries[key] = value;
    }
    return entries;
}

struct EffectiveConfig {
    RunConfig run;
    bool no_pool = false;
    bool h0_only = false;
    bool no_hierarchy = false;
};

void apply_config_entry(EffectiveConfig& cfg, const std::string& key,
                        const std::string& value) {
    auto& pipe = cfg.run.pipeline;
    auto& comp = cfg.run.compression;
    auto& prov = cfg.run.provider;
    if (key == "ratio") comp.target_ratio = to_double(key, value);
    else if (key == "lambda") comp.lambda = to_double(key, value);
    else if (key == "beta") comp.beta = to_double(key, value);
    else if (key == "mode") comp.mode = parse_mode(value);
    else if (key == "disconnect_penalty")
        comp.disconnect_penalty = to_double(key, value);
    else if (key == "strict") comp.strict_budget = to_bool(key, value);
    else if (key == "query") comp.query = value;
    else if (key == "bm25_k1") comp.bm25_k1 = to_double(key, value);
    else if (key == "bm25_b") comp.bm25_b = to_double(key, value);
    else if (key == "hierarchy_threshold")
        comp.hierarchy_threshold = static_cast<std::size_t>(to_int(key, value));
    else if (key == "segment_count")
        comp.segment_target_count = static_cast<int>(to_int(key, value));
    else if (key == "local_ratio_floor") comp.local_ratio_floor = to_double(key, value);
    else if (key == "alpha") pipe.alpha = to_double(key, value);
    else if (key == "tau") pipe.tau = to_double(key, value);
    else if (key == "landmark_proportion")
        pipe.landmark_proportion = to_double(key, value);
    else if (key == "nu") pipe.nu = static_cast<int>(to_int(key, value));
    else if (key == "max_filtration") pipe.max_filtration = to_double(key, value);
    else if (key == "k_pool") pipe.k_pool = static_cast<int>(to_int(key, value));
    else if (key == "m_pool") pipe.m_pool = static_cast<int>(to_int(key, value));
    else if (key == "seed") {
        const auto s = static_cast<std::uint64_t>(to_int(key, value));
        pipe.seed = s;
        comp.seed = s;
        prov.seed = s;
    } else if (key == "embed_mode") prov.mode = parse_embed_mode(value);
    else if (key == "embeddings") prov.cache_path = value;
    else if (key == "endpoint") prov.endpoint = value;
    else if (key == "model") prov.model_id = value;
    else if (key == "auth_token_env") prov.auth_token_env = value;
    else if (key == "batch_size") prov.batch_size = static_cast<int>(to_int(key, value));
    else if (key == "max_retries")
        prov.max_retries = static_cast<int>(to_int(key, value));
    else if (key == "timeout") prov.timeout_seconds = to_double(key, value);
    else if (key == "backoff_ms") prov.backoff_ms = static_cast<int>(to_int(key, value));
    else if (key == "max_in_flight")
        prov.max_in_flight = static_cast<int>(to_int(key, value));
    else if (key == "mock_dim")
        prov.mock_dim = static_cast<std::size_t>(to_int(key, value));
    else if (key == "no_pool") cfg.no_pool = to_bool(key, value);
    else if (key == "h0_only") cfg.h0_only = to_bool(key, value);
    else if (key == "no_hierarchy") cfg.no_hierarchy = to_bool(key, value);
    else
        throw ConfigError("unknown config key '" + key + "'");
}

// defaults -> config file -> explicitly passed flags.
EffectiveConfig resolve_config(const RawOptions& raw) {
    EffectiveConfig cfg;
    if (!raw.config_file.empty())
        for (const auto& [key, value] : read_config_file(raw.config_file))
            apply_config_entry(cfg, key, value);

    auto& pipe = cfg.run.pipeline;
    auto& comp = cfg.run.compression;
    auto& prov = cfg.run.provider;
    if (raw.given("format")) cfg.run.input_format = parse_format(raw.format);
    if (raw.given("ratio")) comp.target_ratio = raw.ratio;
    if (raw.given("lambda")) comp.lambda = raw.lambda;
    if (raw.given("beta")) comp.beta = raw.beta;
    if (raw.given("mode")) comp.mode = parse_mode(raw.mode);
    if (raw.given("strict")) comp.strict_budget = true;
    if (raw.given("query")) comp.query = raw.query;
    if (raw.given("bm25-k1")) comp.bm25_k1 = raw.bm25_k1;
    if (raw.given("bm25-b")) comp.bm25_b = raw.bm25_b;
    if (raw.given("disconnect-penalty"))
        comp.disconnect_penalty = raw.disconnect_penalty;
    if (raw.given("hierarchy-threshold"))
        comp.hierarchy_threshold = raw.hierarchy_threshold;
    if (raw.given("segment-count")) comp.segment_target_count = raw.segment_count;
    if (raw.given("local-ratio-floor")) comp.local_ratio_floor = raw.local_ratio_floor;
    if (raw.given("alpha")) pipe.alpha = raw.alpha;
    if (raw.given("tau")) pipe.tau = raw.tau;
    if (raw.given("landmark-proportion"))
        pipe.landmark_proportion = raw.landmark_proportion;
    if (raw.given("nu")) pipe.nu = raw.nu;
    if (raw.given("max-filtration")) pipe.max_filtration = raw.max_filtration;
    if (raw.given("k-pool")) pipe.k_pool = raw.k_pool;
    if (raw.given("m-pool")) pipe.m_pool = raw.m_pool;
    if (raw.given("seed")) {
        pipe.seed = raw.seed;
        comp.seed = raw.seed;
        prov.seed = raw.seed;
    }
    if (raw.given("embed-mode")) prov.mode = parse_embed_mode(raw.embed_mode);
    if (raw.given("embeddings")) prov.cache_path = raw.embeddings;
    if (raw.given("endpoint")) prov.endpoint = raw.endpoint;
    if (raw.given("model")) prov.model_id = raw.model;
    if (raw.given("auth-token-env")) prov.auth_token_env = raw.auth_token_env;
    if (raw.given("batch-size")) prov.batch_size = raw.batch_size;
    if (raw.given("max-retries")) prov.max_retries = raw.max_retries;
    if (raw.given("timeout")) prov.timeout_seconds = raw.timeout;
    if (raw.given("backoff-ms")) prov.backoff_ms = raw.backoff_ms;
    if (raw.given("max-in-flight")) prov.max_in_flight = raw.max_in_flight;
    if (raw.given("mock-dim")) prov.mock_dim = raw.mock_dim;
    if (raw.given("no-pool")) cfg.no_pool = true;
    if (raw.given("h0-only")) cfg.h0_only = true;
    if (raw.given("no-hierarchy")) cfg.no_hierarchy = true;

    if (cfg.h0_only) pipe.m_pool = 0;
    if (cfg.no_pool) {
        pipe.k_pool = 0;
        pipe.m_pool = 0;
    }
    return cfg;
}

void register_provider_options(CLI::App* cmd, RawOptions& raw) {
    raw.track("embed-mode",
              cmd->add_option("--embed-mode", raw.embed_mode,
                              "Embedding source: cache, http, or mock"));
    raw.track("embeddings",
              cmd->add_option("--embeddings", raw.embeddings,
                              "JSONL embedding cache file (cache mode)"));
    raw.track("endpoint", cmd->add_option("--endpoint", raw.endpoint,
                                          "Embedding endpoint URL (http mode)"));
    raw.track("model", cmd->add_option("--model", raw.model, "Embedding model id"));
    raw.track("auth-token-env",
              cmd->add_option("--auth-token-env", raw.auth_token_env,
                              "Environment variable holding the bearer token"));
    raw.track("batch-size", cmd->add_option("--batch-size", raw.batch_size,
                                            "Sentences per embedding request"));
    raw.track("max-retries", cmd->add_option("--max-retries", raw.max_retries,
                                             "Retries per failed request"));
    raw.track("timeout", cmd->add_option("--timeout", raw.timeout,
                                         "Request timeout in seconds"));
    raw.track("backoff-ms", cmd->add_option("--backoff-ms", raw.backoff_ms,
                                            "Base retry backoff in milliseconds"));
    raw.track("max-in-flight", cmd->add_option("--max-in-flight", raw.max_in_flight,
                                               "Concurrent embedding requests"));
    raw.track("mock-dim", cmd->add_option("--mock-dim", raw.mock_dim,
                                          "Dimension of mock embeddings"));
}

void register_pipeline_options(CLI::App* cmd, RawOptions& raw) {
    raw.track("alpha",
              cmd->add_option("--alpha", raw.alpha,
                              "Semantic weight in edge costs (0 = position only)"));
    raw.track("tau", cmd->add_option("--tau", raw.tau,
                                     "Positional decay length in sentences"));
    raw.track("landmark-proportion",
              cmd->add_option("--landmark-proportion", raw.landmark_proportion,
                              "Fraction of sentences used as landmarks"));
    raw.track("nu", cmd->add_option("--nu", raw.nu, "Witness relaxation rank"));
    raw.track("max-filtration", cmd->add_option("--max-filtration", raw.max_filtration,
                                                "Scale cap for the filtration"));
    raw.track("k-pool", cmd->add_option("--k-pool", raw.k_pool,
                                        "Connected-component features protected"));
    raw.track("m-pool",
              cmd->add_option("--m-pool", raw.m_pool, "Loop features protected"));
    raw.track("seed", cmd->add_option("--seed", raw.seed, "Master random seed"));
    raw.track("config", cmd->add_option("--config", raw.config_file,
                                        "Flat key = value settings file"));
}

std::vector<Summary> run_summarize(const RawOptions& raw, const EffectiveConfig& cfg) {
    const auto docs = load_documents(raw.input, cfg.run.input_format);
    std::vector<Summary> out;
    for (const auto& doc : docs) {
        const auto records = segment_sentences(doc);
        const auto emb = embed_sentences(records, cfg.run.provider);

        std::optional<std::vector<double>> query_embedding;
        if (!cfg.run.compression.query.empty())
            query_embedding = embed_query(cfg.run.compression.query, records.size(),
                                          cfg.run.provider);

        // Corpus-level markers are byte offsets; compression wants sentence
        // indices: use the first sentence starting at or past each marker.
        std::vector<std::size_t> sentence_markers;
        for (std::size_t byte : doc.segment_markers)
            for (std::size_t i = 0; i < records.size(); ++i)
                if (records[i].char_span.first >= byte) {
                    sentence_markers.push_back(i);
                    break;
                }

        const std::vector<double>* qe = query_embedding ? &*query_embedding : nullptr;
        Summary s = cfg.no_hierarchy || !cfg.run.compression.hierarchy_enabled
                        ? compress_flat(records, emb, cfg.run.pipeline,
                                        cfg.run.compression, qe, doc.id)
                        : compress_hierarchical(records, emb, sentence_markers,
                                                cfg.run.pipeline, cfg.run.compression,
                                                qe, doc.id);
        s.config_echo_json = config_echo_json(cfg.run);
        out.push_back(std::move(s));
    }
    return out;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream file(out_path, std::ios::binary | std::ios::trunc);
    if (!file) throw IoError("cannot write output file: " + out_path);
    file << text;
}

std::string render_summaries(const std::vector<Summary>& summaries,
                             const std::string& out_format, InputFormat input_format) {
    if (out_format == "plain_text") {
        std::string text;
        for (const auto& s : summaries) {
            if (s.retained_indices.empty())
                throw RefusedEmptySummary("summary for document '" + s.document_id +
                                          "' retains no sentences");
            for (const auto& line : s.retained_texts) {
                text += line;
                text += "\n";
            }
        }
        return text;
    }
    if (out_format != "json")
        throw ConfigError("unknown output format '" + out_format +
                          "' (expected json or plain_text)");
    if (input_format == InputFormat::jsonl) {
        auto arr = json::array();
        for (const auto& s : summaries) arr.push_back(json::parse(summary_to_json(s)));
        return arr.dump(2) + "\n";
    }
    std::string text;
    for (const auto& s : summaries) {
        text += summary_to_json(s);
        text += "\n";
    }
    return text;
}

int cmd_summarize(const RawOptions& raw) {
    const EffectiveConfig cfg = resolve_config(raw);
    validate_run_config(cfg.run);
    const auto summaries = run_summarize(raw, cfg);
    emit(render_summaries(summaries, raw.out_format, cfg.run.input_format), raw.out);
    if (!raw.deletion_log.empty()) {
        std::string log;
        for (const auto& s : summaries) log += deletion_log_jsonl(s);
        std::ofstream file(raw.deletion_log, std::ios::binary | std::ios::trunc);
        if (!file) throw IoError("cannot write deletion log: " + raw.deletion_log);
        file << log;
    }
    return 0;
}

int cmd_inspect(const RawOptions& raw) {
    const EffectiveConfig cfg = resolve_config(raw);
    validate_run_config(cfg.run);

    const auto docs = load_documents(raw.input, cfg.run.input_format);
    auto reports = json::array();
    for (const auto& doc : docs) {
        const auto records = segment_sentences(doc);
        const auto emb = embed_sentences(records, cfg.run.provider);
        const auto topo = run_topology(emb, cfg.run.pipeline);

        json t;
        t["document_id"] = doc.id;
        t["n_sentences"] = records.size();
        t["landmarks"] = {{"indices", topo.landmarks.indices},
                          {"proportion", topo.landmarks.proportion},
                          {"seed", topo.landmarks.seed}};
        t["graph"] = json::parse(graph_to_json(topo.graph));
        t["barcode"] = json::parse(barcode_to_json(topo.diagram, topo.landmarks));
        t["pool"] = json::parse(pool_to_json(topo.pool));
        if (topo.pool.all.empty()) {
            t["position_report"] = nullptr;
        } else {
            const auto dist = position_distribution(topo.pool, records.size());
            t["position_report"] =
                json::parse(position_report_json(dist, topo.pool, records.size()));
        }
        reports.push_back(std::move(t));
    }
    std::string text = cfg.run.input_format == InputFormat::jsonl
                           ? reports.dump(2) + "\n"
                           : reports.at(0).dump(2) + "\n";
    emit(text, raw.out);
    return 0;
}

std::vector<std::pair<std::string, std::string>> read_id_text_jsonl(
    const std::string& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) throw IoError("cannot open file: " + path);
    std::vector<std::pair<std::string, std::string>> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(file, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        json j = json::parse(line, nullptr, /*allow_exceptions=*/false);
        if (j.is_discarded() || !j.is_object() || !j.contains("id") ||
            !j["id"].is_string() || !j.contains("text") || !j["text"].is_string())
            throw MalformedRecord(path + ":" + std::to_string(line_no) +
                                  ": expected {\"id\": ..., \"text\": ...}");
        out.emplace_back(j["id"].get<std::string>(), j["text"].get<std::string>());
    }
    return out;
}

int cmd_evaluate(const std::string& candidates_path, const std::string& references_path,
                 const std::string& out_path) {
    const auto candidates = read_id_text_jsonl(candidates_path);
    const auto references = read_id_text_jsonl(references_path);
    std::map<std::string, std::string> ref_by_id(references.begin(), references.end());

    std::vector<EvalPair> pairs;
    for (const auto& [id, text] : candidates) {
        auto it = ref_by_id.find(id);
        if (it == ref_by_id.end())
            throw UnmatchedId("candidate id '" + id + "' has no reference");
        pairs.push_back({id, text, it->second});
    }
    emit(evaluate_corpus(pairs) + "\n", out_path);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Topology-guided extractive summarizer"};
    app.require_subcommand(1);

    RawOptions raw;

    auto* summarize = app.add_subcommand("summarize", "Compress documents");
    summarize->add_option("--input", raw.input, "Input document file")->required();
    raw.track("format", summarize->add_option("--format", raw.format,
                                              "Input format: plain_text or jsonl"));
    raw.track("ratio",
              summarize->add_option("--ratio", raw.ratio, "Retention ratio in (0, 1]")
                  ->required());
    raw.track("lambda",
              summarize->add_option("--lambda", raw.lambda,
                                    "Weight of the topology term in deletion scores"));
    raw.track("beta",
              summarize->add_option("--beta", raw.beta,
                                    "Weight of dense similarity in the task score"));
    raw.track("mode",
              summarize->add_option("--mode", raw.mode,
                                    "Scoring mode: topo_task, random, or topo_only"));
    raw.track("query", summarize->add_option("--query", raw.query,
                                             "Query text for focused summaries"));
    raw.track("bm25-k1", summarize->add_option("--bm25-k1", raw.bm25_k1,
                                               "BM25 saturation parameter"));
    raw.track("bm25-b", summarize->add_option("--bm25-b", raw.bm25_b,
                                              "BM25 length normalization"));
    raw.track("disconnect-penalty",
              summarize->add_option(
                  "--disconnect-penalty", raw.disconnect_penalty,
                  "Score charged to candidates cut off from the protected pool"));
    raw.track("hierarchy-threshold",
              summarize->add_option(
                  "--hierarchy-threshold", raw.hierarchy_threshold,
                  "Sentence count at which the two-level pipeline engages"));
    raw.track("segment-count",
              summarize->add_option("--segment-count", raw.segment_count,
                                    "Number of segments (0 = automatic)"));
    raw.track("local-ratio-floor",
              summarize->add_option("--local-ratio-floor", raw.local_ratio_floor,
                                    "Minimum per-segment retention ratio"));
    raw.track("no-pool",
              summarize->add_flag("--no-pool", raw.no_pool,
                                  "Disable the protected pool (ablation)"));
    raw.track("h0-only",
              summarize->add_flag("--h0-only", raw.h0_only,
                                  "Protect connected-component features only"));
    raw.track("no-hierarchy", summarize->add_flag("--no-hierarchy", raw.no_hierarchy,
                                                  "Force a single flat pass"));
    raw.track("strict",
              summarize->add_flag(
                  "--strict", raw.strict,
                  "Error out when the protected pool exceeds the retention budget"));
    summarize->add_option("--out", raw.out, "Output file (default: stdout)");
    raw.track("out-format",
              summarize->add_option("--out-format", raw.out_format,
                                    "Output format: json or plain_text"));
    summarize->add_option("--deletion-log", raw.deletion_log,
                          "Write one JSON record per deleted sentence");
    register_pipeline_options(summarize, raw);
    register_provider_options(summarize, raw);

    auto* inspect =
        app.add_subcommand("inspect-topology", "Report the sentence graph, barcode, "
                                               "and protected pool of each document");
    inspect->add_option("--input", raw.input, "Input document file")->required();
    raw.track("format", inspect->add_option("--format", raw.format,
                                            "Input format: plain_text or jsonl"));
    inspect->add_option("--out", raw.out, "Output file (default: stdout)");
    register_pipeline_options(inspect, raw);
    register_provider_options(inspect, raw);

    std::string candidates_path, references_path;
    auto* evaluate =
        app.add_subcommand("evaluate", "Score candidate summaries against references");
    evaluate->add_option("--candidates", candidates_path, "Candidate summaries (jsonl)")
        ->required();
    evaluate->add_option("--references", references_path, "Reference summaries (jsonl)")
        ->required();
    evaluate->add_option("--out", raw.out, "Output file (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (summarize->parsed()) return cmd_summarize(raw);
        if (inspect->parsed()) return cmd_inspect(raw);
        if (evaluate->parsed())
            return cmd_evaluate(candidates_path, references_path, raw.out);
        std::cerr << "error: no subcommand\n";
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ProviderError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
