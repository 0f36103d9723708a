#include "corpusmap/entities.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <istream>

#include "corpusmap/error.hpp"
#include "corpusmap/utf8.hpp"

namespace corpusmap {
namespace {

constexpr std::array<std::pair<EntityTag, std::string_view>, 7> kTagNames{{
    {EntityTag::kPerson, "PERSON"},
    {EntityTag::kOrganization, "ORGANIZATION"},
    {EntityTag::kLocation, "LOCATION"},
    {EntityTag::kDate, "DATE"},
    {EntityTag::kTime, "TIME"},
    {EntityTag::kMoney, "MONEY"},
    {EntityTag::kPercent, "PERCENT"},
}};

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

EntityMention make_mention(const AnalyzedDocument& doc, std::size_t sentence,
                           std::size_t first, std::size_t last,
                           EntityTag tag) {
  const auto& tokens = doc.tokens[sentence];
  const Span span{tokens[first].span.start, tokens[last].span.end};
  return {doc.doc.slice(span), tag, doc.doc.doc_id, sentence, span};
}

bool is_capitalized(std::string_view surface) {
  const std::u32string chars = utf8::decode(surface);
  return !chars.empty() && utf8::is_upper(chars.front());
}

// Letters with optional internal hyphens or apostrophes, leading capital,
// not an all-caps acronym.
bool is_name_word(std::string_view surface) {
  const std::u32string chars = utf8::decode(surface);
  if (chars.empty() || !utf8::is_upper(chars.front())) return false;
  bool has_lower = false;
  for (std::size_t i = 0; i < chars.size(); ++i) {
    const char32_t c = chars[i];
    if (utf8::is_letter(c)) {
      has_lower = has_lower || utf8::is_lower(c);
      continue;
    }
    const bool inner = i > 0 && i + 1 < chars.size();
    if (!(inner && (c == U'-' || c == U'\''))) return false;
  }
  return chars.size() == 1 || has_lower;
}

bool has_alnum(std::string_view surface) {
  const std::u32string chars = utf8::decode(surface);
  return std::any_of(chars.begin(), chars.end(),
                     [](char32_t c) { return utf8::is_alnum(c); });
}

}  // namespace

std::string_view tag_name(EntityTag tag) {
  for (const auto& [t, name] : kTagNames) {
    if (t == tag) return name;
  }
  return "?";
}

std::optional<EntityTag> parse_tag(std::string_view name) {
  for (const auto& [t, n] : kTagNames) {
    if (n == name) return t;
  }
  return std::nullopt;
}

EntityTag tag_from_name(std::string_view name) {
  if (auto tag = parse_tag(name)) return *tag;
  throw validation_error("unknown entity tag \"" + std::string(name) + "\"");
}

std::string join_tags(const TagSet& tags) {
  std::string out;
  for (EntityTag t : tags) {
    if (!out.empty()) out += '|';
    out += tag_name(t);
  }
  return out;
}

TagSet split_tags(std::string_view joined) {
  TagSet tags;
  while (!joined.empty()) {
    const auto bar = joined.find('|');
    tags.insert(tag_from_name(joined.substr(0, bar)));
    if (bar == std::string_view::npos) break;
    joined.remove_prefix(bar + 1);
  }
  return tags;
}

ConllResult parse_conll(std::istream& in, const AnalyzedDocument& doc) {
  const std::string& doc_id = doc.doc.doc_id;
  struct Row {
    std::string surface;
    std::string tag;
  };
  std::vector<std::vector<Row>> blocks;
  std::vector<Row> current;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    strip_cr(line);
    if (line.empty()) {
      if (!current.empty()) blocks.push_back(std::move(current));
      current.clear();
      continue;
    }
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0 ||
        line.find('\t', tab + 1) != std::string::npos) {
      throw input_error("conll \"" + doc_id + "\" line " +
                        std::to_string(line_no) +
                        ": expected \"surface<TAB>tag\"");
    }
    current.push_back({line.substr(0, tab), line.substr(tab + 1)});
  }
  if (!current.empty()) blocks.push_back(std::move(current));

  if (blocks.size() != doc.sentences.size()) {
    throw input_error("conll \"" + doc_id + "\": " +
                      std::to_string(blocks.size()) +
                      " sentences, corpus has " +
                      std::to_string(doc.sentences.size()));
  }

  ConllResult result;
  for (std::size_t s = 0; s < blocks.size(); ++s) {
    const auto& rows = blocks[s];
    const auto& tokens = doc.tokens[s];
    auto misaligned = [&](const std::string& why) {
      return input_error("conll \"" + doc_id + "\" sentence " +
                         std::to_string(s) + ": " + why);
    };
    if (rows.size() != tokens.size()) {
      throw misaligned(std::to_string(rows.size()) + " tokens, corpus has " +
                       std::to_string(tokens.size()));
    }

    bool open = false;
    EntityTag open_tag = EntityTag::kPerson;
    std::size_t open_first = 0;
    auto close = [&](std::size_t last) {
      if (open) {
        result.mentions.push_back(
            make_mention(doc, s, open_first, last, open_tag));
      }
      open = false;
    };

    for (std::size_t t = 0; t < rows.size(); ++t) {
      if (rows[t].surface != tokens[t].surface) {
        throw misaligned("token " + std::to_string(t) + " is \"" +
                         rows[t].surface + "\", corpus has \"" +
                         tokens[t].surface + "\"");
      }
      const std::string& tag = rows[t].tag;
      if (tag == "O") {
        if (t > 0) close(t - 1);
        continue;
      }
      const bool begin = tag.rfind("B-", 0) == 0;
      const bool inside = tag.rfind("I-", 0) == 0;
      if (!begin && !inside) {
        throw validation_error("conll \"" + doc_id + "\" sentence " +
                               std::to_string(s) + ": unknown entity tag \"" +
                               tag + "\"");
      }
      const EntityTag type = tag_from_name(std::string_view(tag).substr(2));
      if (inside && open && open_tag == type) continue;
      if (inside) ++result.repaired_inside_tags;
      if (t > 0) close(t - 1);
      open = true;
      open_tag = type;
      open_first = t;
    }
    if (!rows.empty()) close(rows.size() - 1);
  }
  return result;
}

ConllResult load_conll(const std::filesystem::path& dir,
                       const AnalyzedDocument& doc) {
  const auto path = dir / (doc.doc.doc_id + ".conll");
  std::ifstream in(path, std::ios::binary);
  if (!in) throw input_error("cannot read conll file: " + path.string());
  return parse_conll(in, doc);
}

Gazetteer load_gazetteer(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw input_error("cannot read gazetteer: " + path.string());
  Gazetteer gazetteer;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    strip_cr(line);
    if (line.empty() || line[0] == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0) {
      throw validation_error("gazetteer line " + std::to_string(line_no) +
                             ": expected \"surface<TAB>TAG\"");
    }
    if (utf8::find_invalid(line)) {
      throw input_error("gazetteer line " + std::to_string(line_no) +
                        ": invalid UTF-8");
    }
    gazetteer[line.substr(0, tab)] = tag_from_name(line.substr(tab + 1));
  }
  return gazetteer;
}

HeuristicRecognizer::HeuristicRecognizer(const Gazetteer& gazetteer) {
  for (const auto& [surface, tag] : gazetteer) {
    auto tokens = split_tokens(surface);
    if (tokens.empty()) {
      throw validation_error("gazetteer entry is empty");
    }
    const std::string first = tokens.front();
    entries_[first].push_back({std::move(tokens), tag});
  }
  for (auto& [first, list] : entries_) {
    std::stable_sort(list.begin(), list.end(),
                     [](const Entry& a, const Entry& b) {
                       return a.tokens.size() > b.tokens.size();
                     });
  }
}

std::vector<EntityMention> HeuristicRecognizer::recognize(
    const AnalyzedDocument& doc) const {
  std::vector<EntityMention> mentions;
  for (std::size_t s = 0; s < doc.sentences.size(); ++s) {
    const auto& tokens = doc.tokens[s];
    const std::size_t n = tokens.size();
    std::vector<bool> taken(n, false);
    std::vector<EntityMention> found;

    for (std::size_t i = 0; i < n;) {
      const auto it = entries_.find(tokens[i].surface);
      std::size_t matched = 0;
      if (it != entries_.end()) {
        for (const Entry& e : it->second) {
          const std::size_t len = e.tokens.size();
          if (i + len > n) continue;
          bool ok = true;
          for (std::size_t k = 1; k < len && ok; ++k) {
            ok = tokens[i + k].surface == e.tokens[k];
          }
          if (ok) {
            found.push_back(make_mention(doc, s, i, i + len - 1, e.tag));
            matched = len;
            break;
          }
        }
      }
      if (matched == 0) {
        ++i;
        continue;
      }
      std::fill(taken.begin() + static_cast<std::ptrdiff_t>(i),
                taken.begin() + static_cast<std::ptrdiff_t>(i + matched),
                true);
      i += matched;
    }

    std::size_t sentence_start = 0;
    while (sentence_start < n && !has_alnum(tokens[sentence_start].surface)) {
      ++sentence_start;
    }
    for (std::size_t i = 0; i < n;) {
      if (taken[i] || !is_capitalized(tokens[i].surface)) {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j < n && !taken[j] && is_capitalized(tokens[j].surface)) ++j;
      if (i != sentence_start) {
        const std::size_t len = j - i;
        bool person = len <= 3;
        for (std::size_t k = i; k < j && person; ++k) {
          person = is_name_word(tokens[k].surface);
        }
        found.push_back(make_mention(
            doc, s, i, j - 1,
            person ? EntityTag::kPerson : EntityTag::kOrganization));
      }
      i = j;
    }

    std::sort(found.begin(), found.end(),
              [](const EntityMention& a, const EntityMention& b) {
                return a.span.start < b.span.start;
              });
    for (auto& m : found) mentions.push_back(std::move(m));
  }
  return mentions;
}

std::vector<EntityMention> recognize_heuristic(const AnalyzedDocument& doc,
                                               const Gazetteer& gazetteer) {
  return HeuristicRecognizer(gazetteer).recognize(doc);
}

}  // namespace corpusmap
