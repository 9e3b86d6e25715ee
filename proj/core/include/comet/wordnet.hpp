#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace comet {

// A sense node. pos is one of n, v, a, r (adjective satellites fold into a).
struct SynsetId {
  char pos = 'n';
  std::uint32_t offset = 0;

  auto operator<=>(const SynsetId&) const = default;
  std::string str() const;  // e.g. "n:00001740"
};

struct Synset {
  SynsetId id;
  std::vector<std::string> lemmas;
  std::string gloss;
};

class SenseTaxonomy {
 public:
  std::size_t size() const { return synsets_.size(); }
  const std::vector<Synset>& synsets() const { return synsets_; }

  bool contains(SynsetId id) const;
  const Synset& synset(SynsetId id) const;  // throws UsageError if unknown

  // Synsets indexing the lemma under one part of speech; empty if unknown.
  std::span<const SynsetId> senses(std::string_view lemma, char pos) const;
  // All senses across parts of speech, in n, v, a, r order.
  std::vector<SynsetId> all_senses(std::string_view lemma) const;

  std::span<const SynsetId> hypernyms(SynsetId id) const;
  std::span<const SynsetId> hyponyms(SynsetId id) const;

  friend class TaxonomyBuilder;

 private:
  std::vector<Synset> synsets_;
  std::map<SynsetId, std::size_t> position_;
  std::vector<std::vector<SynsetId>> hypernyms_;  // parallel to synsets_
  std::vector<std::vector<SynsetId>> hyponyms_;
  std::unordered_map<std::string, std::vector<SynsetId>> lemma_index_;  // "n:lemma"
};

struct WordnetFile {
  std::string name;      // used in error messages
  std::string contents;  // full file bytes
};

// Parses Princeton WordNet 3.x database files (index.pos + data.pos).
// Throws ParseError for malformed lines (with line numbers), DataError for
// dangling synset offsets or hypernym cycles.
SenseTaxonomy parse_wordnet(std::span<const WordnetFile> index_files,
                            std::span<const WordnetFile> data_files);

// Loads index.{noun,verb,adj,adv} / data.{noun,verb,adj,adv} from a
// directory; missing parts of speech are skipped.
SenseTaxonomy load_wordnet_dir(const std::string& dir);

// Total number of senses of the word, over all parts of speech.
std::size_t sense_count(std::string_view word, const SenseTaxonomy& taxonomy);

// 1 / (1 + d) where d is the shortest path between the synsets through the
// hypernym graph, edges traversable both ways. 1 iff a == b; nullopt when
// the parts of speech differ or the synsets are disconnected.
std::optional<double> path_similarity(SynsetId a, SynsetId b,
                                      const SenseTaxonomy& taxonomy);

}  // namespace comet
