#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace toposum {

struct SentenceRecord {
    std::size_t index = 0;
    std::string text;
    // Byte offsets [begin, end) into Document::text. Concatenating the spans
    // with the (whitespace-only) gaps between them reproduces the document.
    std::pair<std::size_t, std::size_t> char_span{0, 0};
};

struct Document {
    std::string id;
    std::string text;
    // Optional byte offsets of segment boundaries, strictly increasing,
    // each within [0, text.size()].
    std::vector<std::size_t> segment_markers;
};

enum class InputFormat { plain_text, jsonl };

// plain_text: whole file is one document, id = file stem.
// jsonl: one {"id", "text", "segments"?} object per line.
std::vector<Document> load_documents(const std::string& path, InputFormat format);

// Rule-based splitter. Splits at [.!?] (plus trailing closers) followed by
// whitespace and an uppercase letter, digit, or opening quote; suppresses
// splits after common abbreviations and single-letter initials; EOF closes
// the last sentence; fragments shorter than 2 chars merge into a
// neighbouring sentence.
std::vector<SentenceRecord> segment_sentences(const Document& doc);

// Throws InvalidUtf8 on malformed byte sequences.
void validate_utf8(const std::string& text, const std::string& where);

} // namespace toposum
