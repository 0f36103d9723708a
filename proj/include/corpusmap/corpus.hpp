#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace corpusmap {

// Half-open range of code point offsets into Document::chars.
struct Span {
  std::size_t start = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - start; }
  bool contains(const Span& other) const {
    return start <= other.start && other.end <= end;
  }
  friend bool operator==(const Span&, const Span&) = default;
};

struct ManifestEntry {
  std::string doc_id;
  std::filesystem::path path;  // already resolved against the manifest dir
  std::optional<int> year;
  std::optional<std::string> source;
};

struct CorpusManifest {
  std::vector<ManifestEntry> entries;
};

struct Document {
  std::string doc_id;
  std::string text;      // UTF-8, verbatim apart from a stripped BOM
  std::u32string chars;  // decoded text; spans index into this
  std::optional<int> year;
  std::optional<std::string> source;
  bool empty = false;  // whitespace-only; excluded from downstream stages

  std::string slice(const Span& span) const;
};

struct Sentence {
  std::string doc_id;
  std::size_t index = 0;
  Span span;
};

struct Token {
  std::string doc_id;
  std::size_t sentence = 0;
  Span span;
  std::string surface;
};

struct SegmentOptions {
  std::vector<std::string> abbreviations = default_abbreviations();

  static std::vector<std::string> default_abbreviations();
};

// A document together with its segmentation. tokens[i] belongs to
// sentences[i].
struct AnalyzedDocument {
  Document doc;
  std::vector<Sentence> sentences;
  std::vector<std::vector<Token>> tokens;
};

struct Corpus {
  std::vector<AnalyzedDocument> documents;  // manifest order, non-empty only
  std::vector<std::string> empty_doc_ids;

  const AnalyzedDocument* find(std::string_view doc_id) const;
  std::size_t sentence_count() const;
};

// Parses the JSON manifest. Paths are resolved relative to the manifest's
// directory and must all exist.
CorpusManifest load_manifest(const std::filesystem::path& path);

Document load_document(const ManifestEntry& entry);

// Builds a document from in-memory UTF-8 text (BOM stripping and emptiness
// flagging as in load_document).
Document make_document(std::string doc_id, std::string_view text,
                       std::optional<int> year = std::nullopt,
                       std::optional<std::string> source = std::nullopt);

std::vector<Sentence> segment_sentences(const Document& doc,
                                        const SegmentOptions& options = {});

std::vector<Token> tokenize(const Sentence& sentence, const Document& doc);

// Token spans for an arbitrary character range using the same splitting and
// punctuation rules as tokenize().
std::vector<Span> token_spans(std::u32string_view chars, Span range);

// Token surfaces of a free-standing string, e.g. a gazetteer entry.
std::vector<std::string> split_tokens(std::string_view utf8_text);

AnalyzedDocument analyze_document(Document doc,
                                  const SegmentOptions& options = {});

Corpus load_corpus(const CorpusManifest& manifest,
                   const SegmentOptions& options = {}, unsigned workers = 1);

}  // namespace corpusmap
