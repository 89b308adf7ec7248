#include "toposum/embeddings.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

#include "httplib.h"
#include "nlohmann/json.hpp"
#include "toposum/errors.hpp"

namespace toposum {

namespace {

using nlohmann::json;

std::uint64_t fnv1a64(const std::string& text) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

} // namespace

EmbeddingMatrix EmbeddingMatrix::select(const std::vector<std::size_t>& rows) const {
    EmbeddingMatrix out;
    out.n = rows.size();
    out.dim = dim;
    out.data.reserve(rows.size() * dim);
    for (std::size_t r : rows)
        out.data.insert(out.data.end(), data.begin() + static_cast<std::ptrdiff_t>(r * dim),
                        data.begin() + static_cast<std::ptrdiff_t>((r + 1) * dim));
    return out;
}

double cosine(std::span<const double> a, std::span<const double> b) {
    double dot = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) dot += a[i] * b[i];
    return std::clamp(dot, -1.0, 1.0);
}

double semantic_distance(std::span<const double> a, std::span<const double> b) {
    return 1.0 - cosine(a, b);
}

void normalize_row(std::span<double> v, const std::string& what) {
    double norm2 = 0.0;
    for (double x : v) norm2 += x * x;
    if (norm2 < 1e-12 * 1e-12 || std::sqrt(norm2) < 1e-12) {
        std::cerr << "warning: " << what
                  << " has a near-zero embedding; substituting a unit basis vector\n";
        std::fill(v.begin(), v.end(), 0.0);
        if (!v.empty()) v[0] = 1.0;
        return;
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (double& x : v) x *= inv;
}

std::vector<double> mock_embed_text(const std::string& text, std::size_t dim,
                                    std::uint64_t seed) {
    std::uint64_t state = fnv1a64(text);
    std::uint64_t seed_state = seed;
    state ^= splitmix64(seed_state);
    std::vector<double> v(dim);
    for (auto& x : v) {
        const std::uint64_t bits = splitmix64(state);
        // 53 uniform bits -> [0, 1) -> [-1, 1)
        x = static_cast<double>(bits >> 11) * (1.0 / 9007199254740992.0) * 2.0 - 1.0;
    }
    normalize_row(v, "mock embedding of \"" + text + "\"");
    return v;
}

namespace {

struct ParsedCache {
    std::map<std::size_t, std::vector<double>> rows;
    std::size_t dim = 0;
};

ParsedCache read_cache_file(const std::string& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) throw IoError("cannot open embedding cache: " + path);
    ParsedCache cache;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(file, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception& e) {
            throw MalformedRecord(path + ":" + std::to_string(line_no) +
                                  ": not valid JSON (" + std::string(e.what()) + ")");
        }
        if (!j.is_object() || !j.contains("index") || !j["index"].is_number_integer() ||
            !j.contains("vector") || !j["vector"].is_array())
            throw MalformedRecord(path + ":" + std::to_string(line_no) +
                                  ": cache records need 'index' and 'vector'");
        auto idx = j["index"].get<long long>();
        if (idx < 0)
            throw MalformedRecord(path + ":" + std::to_string(line_no) +
                                  ": negative index");
        std::vector<double> vec;
        for (const auto& x : j["vector"]) {
            if (!x.is_number())
                throw MalformedRecord(path + ":" + std::to_string(line_no) +
                                      ": vector entries must be numbers");
            vec.push_back(x.get<double>());
        }
        if (cache.dim == 0 && cache.rows.empty()) {
            cache.dim = vec.size();
        } else if (vec.size() != cache.dim) {
            throw DimensionMismatch(path + ":" + std::to_string(line_no) + ": vector of " +
                                    std::to_string(vec.size()) + " entries in a cache of " +
                                    std::to_string(cache.dim) + "-dimensional rows");
        }
        cache.rows[static_cast<std::size_t>(idx)] = std::move(vec);
    }
    return cache;
}

} // namespace

EmbeddingMatrix load_embedding_cache(const std::string& path, std::size_t n_expected) {
    auto cache = read_cache_file(path);
    EmbeddingMatrix m;
    m.n = n_expected;
    m.dim = cache.dim;
    m.data.resize(n_expected * cache.dim, 0.0);
    for (std::size_t i = 0; i < n_expected; ++i) {
        auto it = cache.rows.find(i);
        if (it == cache.rows.end())
            throw CacheMiss("embedding cache " + path + " is missing sentence " +
                            std::to_string(i));
        std::copy(it->second.begin(), it->second.end(),
                  m.data.begin() + static_cast<std::ptrdiff_t>(i * cache.dim));
        normalize_row(std::span<double>(m.data.data() + i * cache.dim, cache.dim),
                      "cached sentence " + std::to_string(i));
    }
    return m;
}

void write_embedding_cache(const EmbeddingMatrix& emb, const std::string& path) {
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw IoError("cannot write embedding cache: " + path);
    for (std::size_t i = 0; i < emb.n; ++i) {
        json j;
        j["index"] = i;
        j["vector"] = std::vector<double>(emb.row(i).begin(), emb.row(i).end());
        file << j.dump() << "\n";
    }
}

namespace {

struct Endpoint {
    std::string host_port; // scheme://host:port for httplib::Client
    std::string path;
};

Endpoint parse_endpoint(const std::string& url) {
    const std::string prefix = "http://";
    if (url.rfind(prefix, 0) != 0)
        throw HttpFailure("unsupported embedding endpoint (only http:// URLs): " + url);
    auto path_pos = url.find('/', prefix.size());
    Endpoint e;
    if (path_pos == std::string::npos) {
        e.host_port = url;
        e.path = "/";
    } else {
        e.host_port = url.substr(0, path_pos);
        e.path = url.substr(path_pos);
    }
    return e;
}

// POST one batch with bounded retries; returns normalized row vectors in
// batch order.
std::vector<std::vector<double>> post_batch(const std::vector<std::string>& texts,
                                            const EmbeddingProviderConfig& cfg) {
    const Endpoint endpoint = parse_endpoint(cfg.endpoint);
    json body;
    body["input"] = texts;
    body["model"] = cfg.model_id;
    const std::string payload = body.dump();

    std::string bearer;
    if (!cfg.auth_token_env.empty()) {
        if (const char* token = std::getenv(cfg.auth_token_env.c_str()))
            bearer = std::string("Bearer ") + token;
    }

    std::string last_error = "no attempt made";
    for (int attempt = 0; attempt <= cfg.max_retries; ++attempt) {
        if (attempt > 0) {
            const auto wait = std::chrono::milliseconds(
                static_cast<long long>(cfg.backoff_ms) * (1LL << (attempt - 1)));
            std::this_thread::sleep_for(wait);
        }
        httplib::Client client(endpoint.host_port);
        client.set_connection_timeout(std::chrono::duration<double>(cfg.timeout_seconds));
        client.set_read_timeout(std::chrono::duration<double>(cfg.timeout_seconds));
        httplib::Headers headers;
        if (!bearer.empty()) headers.emplace("Authorization", bearer);
        auto res = client.Post(endpoint.path, headers, payload, "application/json");
        if (!res) {
            last_error = "transport error: " + httplib::to_string(res.error());
            continue;
        }
        if (res->status != 200) {
            last_error = "HTTP status " + std::to_string(res->status);
            continue;
        }
        json parsed;
        try {
            parsed = json::parse(res->body);
        } catch (const json::exception& e) {
            throw HttpFailure("embedding endpoint returned unparseable JSON: " +
                              std::string(e.what()));
        }
        if (!parsed.is_object() || !parsed.contains("data") || !parsed["data"].is_array() ||
            parsed["data"].size() != texts.size())
            throw HttpFailure("embedding endpoint returned " +
                              std::to_string(parsed.value("data", json::array()).size()) +
                              " rows for a batch of " + std::to_string(texts.size()));
        std::vector<std::vector<double>> rows(texts.size());
        std::vector<char> seen(texts.size(), 0);
        for (const auto& entry : parsed["data"]) {
            if (!entry.is_object() || !entry.contains("index") ||
                !entry["index"].is_number_integer() || !entry.contains("embedding") ||
                !entry["embedding"].is_array())
                throw HttpFailure("embedding endpoint returned a malformed data entry");
            const auto idx = entry["index"].get<long long>();
            if (idx < 0 || static_cast<std::size_t>(idx) >= texts.size() ||
                seen[static_cast<std::size_t>(idx)])
                throw HttpFailure("embedding endpoint returned an out-of-range or "
                                  "duplicate batch index");
            seen[static_cast<std::size_t>(idx)] = 1;
            auto& row = rows[static_cast<std::size_t>(idx)];
            for (const auto& x : entry["embedding"]) row.push_back(x.get<double>());
        }
        return rows;
    }
    throw HttpFailure("embedding request to " + cfg.endpoint + " failed after " +
                      std::to_string(cfg.max_retries + 1) + " attempts (" + last_error +
                      ")");
}

EmbeddingMatrix embed_via_http(const std::vector<std::string>& texts,
                               const EmbeddingProviderConfig& cfg) {
    const std::size_t batch_size = std::max(1, cfg.batch_size);
    std::vector<std::vector<std::string>> batches;
    for (std::size_t begin = 0; begin < texts.size(); begin += batch_size) {
        const std::size_t end = std::min(texts.size(), begin + batch_size);
        batches.emplace_back(texts.begin() + static_cast<std::ptrdiff_t>(begin),
                             texts.begin() + static_cast<std::ptrdiff_t>(end));
    }

    std::vector<std::vector<std::vector<double>>> results(batches.size());
    const std::size_t wave = static_cast<std::size_t>(std::max(1, cfg.max_in_flight));
    for (std::size_t b = 0; b < batches.size(); b += wave) {
        const std::size_t hi = std::min(batches.size(), b + wave);
        std::vector<std::future<std::vector<std::vector<double>>>> futures;
        for (std::size_t k = b; k < hi; ++k)
            futures.push_back(std::async(std::launch::async, post_batch,
                                         std::cref(batches[k]), std::cref(cfg)));
        std::exception_ptr first_failure;
        for (std::size_t k = b; k < hi; ++k) {
            try {
                results[k] = futures[k - b].get();
            } catch (...) {
                if (!first_failure) first_failure = std::current_exception();
            }
        }
        if (first_failure) std::rethrow_exception(first_failure);
    }

    EmbeddingMatrix m;
    m.n = texts.size();
    m.dim = 0;
    for (std::size_t k = 0; k < batches.size(); ++k) {
        for (std::size_t r = 0; r < results[k].size(); ++r) {
            const auto& row = results[k][r];
            if (m.dim == 0) {
                m.dim = row.size();
                if (m.dim == 0)
                    throw HttpFailure("embedding endpoint returned an empty vector");
                m.data.resize(m.n * m.dim, 0.0);
            }
            if (row.size() != m.dim)
                throw DimensionMismatch(
                    "embedding endpoint mixed vector sizes: expected " +
                    std::to_string(m.dim) + ", got " + std::to_string(row.size()));
            const std::size_t global = k * batch_size + r;
            std::copy(row.begin(), row.end(),
                      m.data.begin() + static_cast<std::ptrdiff_t>(global * m.dim));
        }
    }
    for (std::size_t i = 0; i < m.n; ++i)
        normalize_row(std::span<double>(m.data.data() + i * m.dim, m.dim),
                      "sentence " + std::to_string(i));
    return m;
}

} // namespace

EmbeddingMatrix embed_sentences(const std::vector<SentenceRecord>& sentences,
                                const EmbeddingProviderConfig& cfg) {
    switch (cfg.mode) {
        case EmbedMode::mock: {
            EmbeddingMatrix m;
            m.n = sentences.size();
            m.dim = cfg.mock_dim;
            m.data.reserve(m.n * m.dim);
            for (const auto& s : sentences) {
                auto v = mock_embed_text(s.text, cfg.mock_dim, cfg.seed);
                m.data.insert(m.data.end(), v.begin(), v.end());
            }
            return m;
        }
        case EmbedMode::cache:
            return load_embedding_cache(cfg.cache_path, sentences.size());
        case EmbedMode::http: {
            std::vector<std::string> texts;
            texts.reserve(sentences.size());
            for (const auto& s : sentences) texts.push_back(s.text);
            return embed_via_http(texts, cfg);
        }
    }
    throw Error("unknown embedding mode");
}

std::vector<double> embed_query(const std::string& query, std::size_t n_sentences,
                                const EmbeddingProviderConfig& cfg) {
    switch (cfg.mode) {
        case EmbedMode::mock:
            return mock_embed_text(query, cfg.mock_dim, cfg.seed);
        case EmbedMode::cache: {
            auto cache = read_cache_file(cfg.cache_path);
            auto it = cache.rows.find(n_sentences);
            if (it == cache.rows.end())
                throw CacheMiss("embedding cache " + cfg.cache_path +
                                " is missing the query entry (index " +
                                std::to_string(n_sentences) + ")");
            auto v = it->second;
            normalize_row(v, "cached query embedding");
            return v;
        }
        case EmbedMode::http: {
            auto rows = post_batch({query}, cfg);
            auto v = rows.at(0);
            normalize_row(v, "query embedding");
            return v;
        }
    }
    throw Error("unknown embedding mode");
}

} // namespace toposum
