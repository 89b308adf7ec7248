#include "toposum/corpus.hpp"

#include <array>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>

#include "nlohmann/json.hpp"
#include "toposum/errors.hpp"

namespace toposum {

namespace {

bool is_ws(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

bool is_terminator(char c) { return c == '.' || c == '!' || c == '?'; }

// Bytes that may trail a terminator and still belong to the sentence.
bool is_ascii_closer(char c) {
    return c == '.' || c == '!' || c == '?' || c == '"' || c == '\'' || c == ')' ||
           c == ']';
}

// Multi-byte closing quotes; returns the sequence length or 0.
std::size_t closer_len(std::string_view text, std::size_t pos) {
    if (pos < text.size() && is_ascii_closer(text[pos])) return 1;
    if (pos + 3 <= text.size() && static_cast<unsigned char>(text[pos]) == 0xe2 &&
        static_cast<unsigned char>(text[pos + 1]) == 0x80) {
        const auto b = static_cast<unsigned char>(text[pos + 2]);
        if (b == 0x9d || b == 0x99) return 3; // closing double / single quote
    }
    return 0;
}

// A sentence may open with an ASCII capital, a digit, or an opening quote.
bool is_opener(std::string_view text, std::size_t pos) {
    if (pos >= text.size()) return false;
    const char c = text[pos];
    if ((c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '"' || c == '\'')
        return true;
    if (pos + 3 <= text.size() && static_cast<unsigned char>(c) == 0xe2 &&
        static_cast<unsigned char>(text[pos + 1]) == 0x80) {
        const auto b = static_cast<unsigned char>(text[pos + 2]);
        if (b == 0x9c || b == 0x98) return true; // opening double / single quote
    }
    return false;
}

bool is_alnum(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }

// Case-sensitive suffix match with a word boundary before the match.
bool ends_with_word(std::string_view text, std::size_t end, std::string_view suffix) {
    if (end < suffix.size()) return false;
    const std::size_t start = end - suffix.size();
    if (text.substr(start, suffix.size()) != suffix) return false;
    return start == 0 || !is_alnum(text[start - 1]);
}

// True when the period ending at dot_end (exclusive) closes a known
// abbreviation or a single-letter initial rather than a sentence.
bool is_abbreviation(std::string_view text, std::size_t dot_end) {
    static const std::array<std::string_view, 14> abbreviations = {
        "Dr.", "Mr.", "Mrs.", "Ms.", "Prof.", "Fig.", "Eq.", "et al.", "e.g.",
        "i.e.", "vs.", "No.", "U.S.", "pp."};
    for (const auto& a : abbreviations)
        if (ends_with_word(text, dot_end, a)) return true;
    // Single-letter initial: "J."
    if (dot_end >= 2) {
        const char letter = text[dot_end - 2];
        if (letter >= 'A' && letter <= 'Z' &&
            (dot_end == 2 || !is_alnum(text[dot_end - 3])))
            return true;
    }
    return false;
}

std::pair<std::size_t, std::size_t> trimmed_span(std::string_view text, std::size_t begin,
                                                 std::size_t end) {
    while (begin < end && is_ws(text[begin])) ++begin;
    while (end > begin && is_ws(text[end - 1])) --end;
    return {begin, end};
}

} // namespace

void validate_utf8(const std::string& text, const std::string& where) {
    const auto* s = reinterpret_cast<const unsigned char*>(text.data());
    const std::size_t n = text.size();
    std::size_t i = 0;
    auto fail = [&](std::size_t at) {
        throw InvalidUtf8("invalid UTF-8 byte sequence in " + where + " at byte " +
                          std::to_string(at));
    };
    auto cont = [&](std::size_t at) {
        return at < n && s[at] >= 0x80 && s[at] <= 0xbf;
    };
    while (i < n) {
        const unsigned char b = s[i];
        if (b <= 0x7f) {
            ++i;
        } else if (b >= 0xc2 && b <= 0xdf) {
            if (!cont(i + 1)) fail(i);
            i += 2;
        } else if (b == 0xe0) {
            if (!(i + 1 < n && s[i + 1] >= 0xa0 && s[i + 1] <= 0xbf) || !cont(i + 2)) fail(i);
            i += 3;
        } else if ((b >= 0xe1 && b <= 0xec) || b == 0xee || b == 0xef) {
            if (!cont(i + 1) || !cont(i + 2)) fail(i);
            i += 3;
        } else if (b == 0xed) {
            if (!(i + 1 < n && s[i + 1] >= 0x80 && s[i + 1] <= 0x9f) || !cont(i + 2)) fail(i);
            i += 3;
        } else if (b == 0xf0) {
            if (!(i + 1 < n && s[i + 1] >= 0x90 && s[i + 1] <= 0xbf) || !cont(i + 2) ||
                !cont(i + 3))
                fail(i);
            i += 4;
        } else if (b >= 0xf1 && b <= 0xf3) {
            if (!cont(i + 1) || !cont(i + 2) || !cont(i + 3)) fail(i);
            i += 4;
        } else if (b == 0xf4) {
            if (!(i + 1 < n && s[i + 1] >= 0x80 && s[i + 1] <= 0x8f) || !cont(i + 2) ||
                !cont(i + 3))
                fail(i);
            i += 4;
        } else {
            fail(i); // 0x80..0xc1, 0xf5..0xff
        }
    }
}

std::vector<SentenceRecord> segment_sentences(const Document& doc) {
    validate_utf8(doc.text, "document '" + doc.id + "'");
    const std::string_view text = doc.text;

    bool any_content = false;
    for (char c : text)
        if (!is_ws(c)) { any_content = true; break; }
    if (!any_content)
        throw EmptyDocument("document '" + doc.id + "' holds no sentences");

    // Raw [begin, end) slices before trimming and fragment merging.
    std::vector<std::pair<std::size_t, std::size_t>> slices;
    std::size_t start = 0;
    std::size_t i = 0;
    while (i < text.size()) {
        if (!is_terminator(text[i])) {
            ++i;
            continue;
        }
        const char terminator = text[i];
        std::size_t run_end = i + 1;
        std::size_t extra_terminators = 0;
        while (true) {
            const std::size_t len = closer_len(text, run_end);
            if (len == 0) break;
            if (len == 1 && is_terminator(text[run_end])) ++extra_terminators;
            run_end += len;
        }
        // Require whitespace, then an opener.
        std::size_t ws = run_end;
        while (ws < text.size() && is_ws(text[ws])) ++ws;
        const bool had_ws = ws > run_end;
        if (!had_ws || !is_opener(text, ws)) {
            i = run_end;
            continue;
        }
        // Abbreviation and initial suppression only applies to a bare period.
        if (terminator == '.' && extra_terminators == 0 && run_end == i + 1 &&
            is_abbreviation(text, i + 1)) {
            i = run_end;
            continue;
        }
        slices.emplace_back(start, run_end);
        start = ws;
        i = ws;
    }
    if (start < text.size()) slices.emplace_back(start, text.size());

    std::vector<SentenceRecord> out;
    for (auto [b, e] : slices) {
        auto [tb, te] = trimmed_span(text, b, e);
        if (tb >= te) continue; // whitespace-only tail
        SentenceRecord r;
        r.char_span = {tb, te};
        out.push_back(std::move(r));
    }

    // Merge sub-2-character fragments into a neighbour (previous preferred).
    for (std::size_t k = 0; k < out.size();) {
        const auto span = out[k].char_span;
        if (span.second - span.first >= 2 || out.size() == 1) {
            ++k;
            continue;
        }
        if (k > 0) {
            out[k - 1].char_span.second = span.second;
            out.erase(out.begin() + static_cast<std::ptrdiff_t>(k));
        } else {
            out[k + 1].char_span.first = span.first;
            out.erase(out.begin() + static_cast<std::ptrdiff_t>(k));
        }
    }

    for (std::size_t k = 0; k < out.size(); ++k) {
        out[k].index = k;
        out[k].text = doc.text.substr(out[k].char_span.first,
                                      out[k].char_span.second - out[k].char_span.first);
    }
    if (out.empty())
        throw EmptyDocument("document '" + doc.id + "' holds no sentences");
    return out;
}

namespace {

Document document_from_json(const std::string& line, const std::string& path,
                            std::size_t line_no) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
        throw MalformedRecord(path + ":" + std::to_string(line_no) +
                              ": not a JSON object (" + e.what() + ")");
    }
    if (!j.is_object() || !j.contains("id") || !j["id"].is_string() ||
        !j.contains("text") || !j["text"].is_string())
        throw MalformedRecord(path + ":" + std::to_string(line_no) +
                              ": record needs string fields 'id' and 'text'");
    Document d;
    d.id = j["id"].get<std::string>();
    d.text = j["text"].get<std::string>();
    if (j.contains("segments")) {
        if (!j["segments"].is_array())
            throw MalformedRecord(path + ":" + std::to_string(line_no) +
                                  ": 'segments' must be an array");
        long long prev = -1;
        for (const auto& m : j["segments"]) {
            if (!m.is_number_integer() || m.get<long long>() < 0)
                throw MalformedRecord(path + ":" + std::to_string(line_no) +
                                      ": segment markers must be non-negative integers");
            const long long v = m.get<long long>();
            if (v <= prev)
                throw MalformedRecord(path + ":" + std::to_string(line_no) +
                                      ": segment markers must be strictly increasing");
            if (static_cast<std::size_t>(v) > d.text.size())
                throw MalformedRecord(path + ":" + std::to_string(line_no) +
                                      ": segment marker " + std::to_string(v) +
                                      " is past the end of the text");
            d.segment_markers.push_back(static_cast<std::size_t>(v));
            prev = v;
        }
    }
    return d;
}

} // namespace

std::vector<Document> load_documents(const std::string& path, InputFormat format) {
    std::ifstream file(path, std::ios::binary);
    if (!file)
        throw IoError("cannot open input file: " + path);

    if (format == InputFormat::plain_text) {
        std::stringstream ss;
        ss << file.rdbuf();
        Document d;
        d.id = std::filesystem::path(path).stem().string();
        d.text = ss.str();
        return {std::move(d)};
    }

    std::vector<Document> docs;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(file, line)) {
        ++line_no;
        bool blank = true;
        for (char c : line)
            if (!is_ws(c)) { blank = false; break; }
        if (blank) continue;
        docs.push_back(document_from_json(line, path, line_no));
    }
    return docs;
}

} // namespace toposum
