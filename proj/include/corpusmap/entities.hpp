#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "corpusmap/corpus.hpp"

namespace corpusmap {

// The seven MUC categories. Declaration order is the canonical order used
// wherever tag sets are serialized.
enum class EntityTag {
  kPerson,
  kOrganization,
  kLocation,
  kDate,
  kTime,
  kMoney,
  kPercent,
};

using TagSet = std::set<EntityTag>;

std::string_view tag_name(EntityTag tag);
std::optional<EntityTag> parse_tag(std::string_view name);
// Throws a validation error naming the tag when it is not one of the seven.
EntityTag tag_from_name(std::string_view name);

// Tag names joined with '|' in canonical order, e.g. "PERSON|ORGANIZATION".
std::string join_tags(const TagSet& tags);
TagSet split_tags(std::string_view joined);

struct EntityMention {
  std::string surface;
  EntityTag tag = EntityTag::kPerson;
  std::string doc_id;
  std::size_t sentence = 0;
  Span span;
};

struct ConllResult {
  std::vector<EntityMention> mentions;
  std::size_t repaired_inside_tags = 0;  // I- tags treated as B-
};

// Reads "surface<TAB>tag" lines, one sentence per blank-line-separated
// block, and checks them token by token against the document's own
// tokenization.
ConllResult parse_conll(std::istream& in, const AnalyzedDocument& doc);

// Reads "<dir>/<doc_id>.conll".
ConllResult load_conll(const std::filesystem::path& dir,
                       const AnalyzedDocument& doc);

using Gazetteer = std::map<std::string, EntityTag>;

// "surface<TAB>TAG" per line; blank lines and '#' comments are skipped.
Gazetteer load_gazetteer(const std::filesystem::path& path);

class HeuristicRecognizer {
 public:
  explicit HeuristicRecognizer(const Gazetteer& gazetteer);

  std::vector<EntityMention> recognize(const AnalyzedDocument& doc) const;

 private:
  struct Entry {
    std::vector<std::string> tokens;
    EntityTag tag;
  };
  // Keyed by first token; each list is sorted longest first.
  std::map<std::string, std::vector<Entry>, std::less<>> entries_;
};

std::vector<EntityMention> recognize_heuristic(const AnalyzedDocument& doc,
                                               const Gazetteer& gazetteer);

}  // namespace corpusmap
