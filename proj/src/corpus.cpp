#include "corpusmap/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "corpusmap/error.hpp"
#include "corpusmap/parallel.hpp"
#include "corpusmap/utf8.hpp"

namespace corpusmap {
namespace {

using nlohmann::json;

bool is_terminator(char32_t c) { return c == U'.' || c == U'!' || c == U'?'; }

bool is_opening_quote(char32_t c) {
  return c == U'"' || c == U'\'' || c == 0x201C || c == 0x2018;
}

// Characters split off the edges of a whitespace-delimited chunk.
bool is_edge_punct(char32_t c) {
  switch (c) {
    case U'.':
    case U',':
    case U';':
    case U':':
    case U'!':
    case U'?':
    case U'"':
    case U'\'':
    case U'(':
    case U')':
    case U'[':
    case U']':
      return true;
    default:
      return false;
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw input_error("cannot read file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw input_error("error reading file: " + path.string());
  return buf.str();
}

// Line (1-based) on which each element of a top-level JSON array starts.
// Assumes `text` already parsed successfully.
std::vector<std::size_t> top_level_element_lines(std::string_view text) {
  std::vector<std::size_t> lines;
  std::size_t line = 1;
  int depth = 0;
  bool in_string = false;
  bool escaped = false;
  bool expect_value = false;
  for (char c : text) {
    if (c == '\n') ++line;
    if (in_string) {
      if (escaped) {
        escaped = false;
      } else if (c == '\\') {
        escaped = true;
      } else if (c == '"') {
        in_string = false;
      }
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') continue;
    if (depth == 1 && expect_value && c != ']') {
      lines.push_back(line);
      expect_value = false;
    }
    switch (c) {
      case '"':
        in_string = true;
        break;
      case '[':
      case '{':
        ++depth;
        if (depth == 1) expect_value = true;
        break;
      case ']':
      case '}':
        --depth;
        break;
      case ',':
        if (depth == 1) expect_value = true;
        break;
      default:
        break;
    }
  }
  return lines;
}

std::size_t line_of_offset(std::string_view text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<std::size_t>(
                 std::count(text.begin(), text.begin() + offset, '\n'));
}

ManifestEntry parse_entry(const json& row, std::size_t line,
                          const std::filesystem::path& base) {
  auto fail = [line](const std::string& why) {
    return validation_error("manifest line " + std::to_string(line) + ": " +
                            why);
  };
  if (!row.is_object()) throw fail("row is not an object");
  for (const auto& [key, value] : row.items()) {
    if (key != "doc_id" && key != "path" && key != "year" && key != "source") {
      throw fail("unknown key \"" + key + "\"");
    }
  }
  ManifestEntry entry;
  if (!row.contains("doc_id") || !row["doc_id"].is_string() ||
      row["doc_id"].get<std::string>().empty()) {
    throw fail("doc_id must be a non-empty string");
  }
  entry.doc_id = row["doc_id"].get<std::string>();
  if (!row.contains("path") || !row["path"].is_string() ||
      row["path"].get<std::string>().empty()) {
    throw fail("path must be a non-empty string");
  }
  entry.path = base / std::filesystem::path(row["path"].get<std::string>());
  if (row.contains("year") && !row["year"].is_null()) {
    if (!row["year"].is_number_integer()) throw fail("year must be an integer");
    entry.year = row["year"].get<int>();
  }
  if (row.contains("source") && !row["source"].is_null()) {
    if (!row["source"].is_string()) throw fail("source must be a string");
    entry.source = row["source"].get<std::string>();
  }
  return entry;
}

bool all_space(std::u32string_view chars) {
  return std::all_of(chars.begin(), chars.end(),
                     [](char32_t c) { return utf8::is_space(c); });
}

}  // namespace

std::string Document::slice(const Span& span) const {
  return utf8::encode(std::u32string_view(chars).substr(span.start,
                                                        span.size()));
}

const AnalyzedDocument* Corpus::find(std::string_view doc_id) const {
  for (const auto& d : documents) {
    if (d.doc.doc_id == doc_id) return &d;
  }
  return nullptr;
}

std::size_t Corpus::sentence_count() const {
  std::size_t n = 0;
  for (const auto& d : documents) n += d.sentences.size();
  return n;
}

std::vector<std::string> SegmentOptions::default_abbreviations() {
  return {"Mr", "Mrs", "Ms", "Dr", "Inc", "Corp", "Co", "U.S", "St", "No"};
}

CorpusManifest load_manifest(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw input_error("manifest " + path.string() + " line " +
                      std::to_string(line_of_offset(text, e.byte)) +
                      ": malformed JSON");
  }
  if (!root.is_array()) {
    throw validation_error("manifest line 1: top level must be an array");
  }
  const auto lines = top_level_element_lines(text);
  const auto base = path.parent_path();

  CorpusManifest manifest;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < root.size(); ++i) {
    const std::size_t line = i < lines.size() ? lines[i] : 0;
    ManifestEntry entry = parse_entry(root[i], line, base);
    if (!seen.insert(entry.doc_id).second) {
      throw validation_error("manifest line " + std::to_string(line) +
                             ": duplicate doc_id \"" + entry.doc_id + "\"");
    }
    manifest.entries.push_back(std::move(entry));
  }
  for (const auto& entry : manifest.entries) {
    if (!std::filesystem::is_regular_file(entry.path)) {
      throw input_error("document \"" + entry.doc_id +
                        "\": file not found: " + entry.path.string());
    }
  }
  return manifest;
}

Document make_document(std::string doc_id, std::string_view text,
                       std::optional<int> year,
                       std::optional<std::string> source) {
  if (text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);
  Document doc;
  doc.doc_id = std::move(doc_id);
  doc.text = std::string(text);
  try {
    doc.chars = utf8::decode(text);
  } catch (const Error& e) {
    throw input_error("document \"" + doc.doc_id + "\": " + e.what());
  }
  doc.year = year;
  doc.source = std::move(source);
  doc.empty = all_space(doc.chars);
  return doc;
}

Document load_document(const ManifestEntry& entry) {
  return make_document(entry.doc_id, read_file(entry.path), entry.year,
                       entry.source);
}

std::vector<Sentence> segment_sentences(const Document& doc,
                                        const SegmentOptions& options) {
  const std::u32string_view chars = doc.chars;
  const std::size_t n = chars.size();
  std::vector<std::u32string> abbreviations;
  abbreviations.reserve(options.abbreviations.size());
  for (const auto& a : options.abbreviations) {
    abbreviations.push_back(utf8::decode(a));
  }

  auto skip_space = [&](std::size_t i) {
    while (i < n && utf8::is_space(chars[i])) ++i;
    return i;
  };
  // Word ending just before the '.' at `dot`, without opening punctuation.
  auto is_abbreviation = [&](std::size_t dot, std::size_t floor) {
    std::size_t begin = dot;
    while (begin > floor && !utf8::is_space(chars[begin - 1])) --begin;
    while (begin < dot && (is_opening_quote(chars[begin]) ||
                           chars[begin] == U'(' || chars[begin] == U'[')) {
      ++begin;
    }
    const auto word = chars.substr(begin, dot - begin);
    return std::find(abbreviations.begin(), abbreviations.end(), word) !=
           abbreviations.end();
  };

  std::vector<Sentence> sentences;
  std::size_t pos = skip_space(0);
  while (pos < n) {
    const std::size_t start = pos;
    std::size_t end = 0;
    for (std::size_t i = start; i < n; ++i) {
      if (!is_terminator(chars[i]) || i + 1 >= n ||
          !utf8::is_space(chars[i + 1])) {
        continue;
      }
      const std::size_t next = skip_space(i + 1);
      if (next >= n) continue;
      const char32_t c = chars[next];
      if (!utf8::is_upper(c) && !utf8::is_digit(c) && !is_opening_quote(c)) {
        continue;
      }
      if (chars[i] == U'.' && is_abbreviation(i, start)) continue;
      end = i + 1;
      break;
    }
    if (end == 0) {
      end = n;
      while (end > start && utf8::is_space(chars[end - 1])) --end;
    }
    sentences.push_back({doc.doc_id, sentences.size(), {start, end}});
    pos = skip_space(end);
  }
  return sentences;
}

std::vector<Span> token_spans(std::u32string_view chars, Span range) {
  std::vector<Span> spans;
  std::size_t i = range.start;
  while (i < range.end) {
    while (i < range.end && utf8::is_space(chars[i])) ++i;
    if (i >= range.end) break;
    std::size_t a = i;
    std::size_t b = i;
    while (b < range.end && !utf8::is_space(chars[b])) ++b;
    i = b;

    while (a < b && is_edge_punct(chars[a])) {
      spans.push_back({a, a + 1});
      ++a;
    }
    std::size_t core_end = b;
    while (core_end > a && is_edge_punct(chars[core_end - 1])) --core_end;
    if (core_end > a) spans.push_back({a, core_end});
    for (std::size_t k = core_end; k < b; ++k) spans.push_back({k, k + 1});
  }
  return spans;
}

std::vector<Token> tokenize(const Sentence& sentence, const Document& doc) {
  std::vector<Token> tokens;
  for (const Span& s : token_spans(doc.chars, sentence.span)) {
    tokens.push_back({doc.doc_id, sentence.index, s, doc.slice(s)});
  }
  return tokens;
}

std::vector<std::string> split_tokens(std::string_view utf8_text) {
  const std::u32string chars = utf8::decode(utf8_text);
  std::vector<std::string> out;
  for (const Span& s : token_spans(chars, {0, chars.size()})) {
    out.push_back(utf8::encode(std::u32string_view(chars).substr(s.start,
                                                                 s.size())));
  }
  return out;
}

AnalyzedDocument analyze_document(Document doc, const SegmentOptions& options) {
  AnalyzedDocument out;
  out.sentences = segment_sentences(doc, options);
  out.tokens.reserve(out.sentences.size());
  for (const auto& s : out.sentences) out.tokens.push_back(tokenize(s, doc));
  out.doc = std::move(doc);
  return out;
}

Corpus load_corpus(const CorpusManifest& manifest,
                   const SegmentOptions& options, unsigned workers) {
  std::vector<AnalyzedDocument> slots(manifest.entries.size());
  parallel_for(manifest.entries.size(), workers, [&](std::size_t i) {
    Document doc = load_document(manifest.entries[i]);
    if (doc.empty) {
      slots[i].doc = std::move(doc);
    } else {
      slots[i] = analyze_document(std::move(doc), options);
    }
  });
  Corpus corpus;
  for (auto& slot : slots) {
    if (slot.doc.empty) {
      corpus.empty_doc_ids.push_back(slot.doc.doc_id);
    } else {
      corpus.documents.push_back(std::move(slot));
    }
  }
  return corpus;
}

}  // namespace corpusmap
