#include "comet/wordnet.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <deque>
#include <filesystem>
#include <set>
#include <unordered_set>

#include "comet/error.hpp"
#include "comet/format.hpp"

namespace comet {

namespace {

bool valid_pos(char pos) { return pos == 'n' || pos == 'v' || pos == 'a' || pos == 'r'; }

// Adjective satellites share the adjective graph.
char normalize_pos(char pos) { return pos == 's' ? 'a' : pos; }

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && line[i] == ' ') ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ') ++i;
    if (i > start) fields.push_back(line.substr(start, i - start));
  }
  return fields;
}

std::optional<std::uint64_t> parse_uint(std::string_view text, int base = 10) {
  if (text.empty()) return std::nullopt;
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value, base);
  if (ec != std::errc{} || ptr != text.data() + text.size()) return std::nullopt;
  return value;
}

struct PendingEdge {
  SynsetId from;
  SynsetId to;
  std::string file;
  std::size_t line;
};

struct LemmaEntry {
  std::string lemma;
  char pos;
  std::vector<SynsetId> senses;
  std::string file;
  std::size_t line;
};

}  // namespace

std::string SynsetId::str() const {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%c:%08u", pos, offset);
  return std::string(buf);
}

bool SenseTaxonomy::contains(SynsetId id) const { return position_.count(id) > 0; }

const Synset& SenseTaxonomy::synset(SynsetId id) const {
  auto it = position_.find(id);
  if (it == position_.end()) throw UsageError("unknown synset " + id.str());
  return synsets_[it->second];
}

std::span<const SynsetId> SenseTaxonomy::senses(std::string_view lemma, char pos) const {
  std::string key(1, normalize_pos(pos));
  key.push_back(':');
  key += lemma;
  auto it = lemma_index_.find(key);
  if (it == lemma_index_.end()) return {};
  return it->second;
}

std::vector<SynsetId> SenseTaxonomy::all_senses(std::string_view lemma) const {
  std::vector<SynsetId> out;
  for (char pos : {'n', 'v', 'a', 'r'}) {
    auto span = senses(lemma, pos);
    out.insert(out.end(), span.begin(), span.end());
  }
  return out;
}

std::span<const SynsetId> SenseTaxonomy::hypernyms(SynsetId id) const {
  auto it = position_.find(id);
  if (it == position_.end()) throw UsageError("unknown synset " + id.str());
  return hypernyms_[it->second];
}

std::span<const SynsetId> SenseTaxonomy::hyponyms(SynsetId id) const {
  auto it = position_.find(id);
  if (it == position_.end()) throw UsageError("unknown synset " + id.str());
  return hyponyms_[it->second];
}

class TaxonomyBuilder {
 public:
  void parse_data_file(const WordnetFile& file) {
    std::size_t line_no = 0;
    for_each_line(file.contents, [&](std::string_view line) {
      ++line_no;
      if (line.empty() || line.front() == ' ') return;  // license header
      parse_data_line(line, file.name, line_no);
    });
  }

  void parse_index_file(const WordnetFile& file) {
    std::size_t line_no = 0;
    for_each_line(file.contents, [&](std::string_view line) {
      ++line_no;
      if (line.empty() || line.front() == ' ') return;
      parse_index_line(line, file.name, line_no);
    });
  }

  SenseTaxonomy finish() {
    SenseTaxonomy tax;
    tax.synsets_ = std::move(synsets_);
    for (std::size_t i = 0; i < tax.synsets_.size(); ++i)
      tax.position_.emplace(tax.synsets_[i].id, i);
    tax.hypernyms_.resize(tax.synsets_.size());
    tax.hyponyms_.resize(tax.synsets_.size());

    for (const PendingEdge& edge : edges_) {
      auto from = tax.position_.find(edge.from);
      auto to = tax.position_.find(edge.to);
      if (to == tax.position_.end())
        throw DataError("dangling synset offset " + edge.to.str() +
                        " in hypernym pointer (" + edge.file + ":" +
                        std::to_string(edge.line) + ")");
      auto& ups = tax.hypernyms_[from->second];
      if (std::find(ups.begin(), ups.end(), edge.to) == ups.end()) {
        ups.push_back(edge.to);
        tax.hyponyms_[to->second].push_back(edge.from);
      }
    }

    for (const LemmaEntry& entry : lemmas_) {
      std::string key(1, entry.pos);
      key.push_back(':');
      key += entry.lemma;
      auto [it, inserted] = tax.lemma_index_.emplace(key, entry.senses);
      if (!inserted)
        throw ParseError(entry.file, entry.line,
                         "duplicate index entry for '" + entry.lemma + "' (" +
                             std::string(1, entry.pos) + ")");
      for (SynsetId id : it->second)
        if (!tax.position_.count(id))
          throw DataError("dangling synset offset " + id.str() +
                          " in index entry for '" + entry.lemma + "' (" + entry.file +
                          ":" + std::to_string(entry.line) + ")");
    }

    check_acyclic(tax);
    return tax;
  }

 private:
  template <typename Fn>
  static void for_each_line(std::string_view text, Fn&& fn) {
    std::size_t pos = 0;
    while (pos < text.size()) {
      std::size_t end = text.find('\n', pos);
      if (end == std::string_view::npos) end = text.size();
      std::string_view line = text.substr(pos, end - pos);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      fn(line);
      pos = end + 1;
    }
  }

  void parse_data_line(std::string_view line, const std::string& file, std::size_t line_no) {
    // Everything after " | " is the gloss.
    std::string gloss;
    std::string_view body = line;
    if (std::size_t bar = line.find('|'); bar != std::string_view::npos) {
      body = line.substr(0, bar);
      std::string_view g = line.substr(bar + 1);
      while (!g.empty() && g.front() == ' ') g.remove_prefix(1);
      while (!g.empty() && g.back() == ' ') g.remove_suffix(1);
      gloss = std::string(g);
    }

    auto fields = split_fields(body);
    if (fields.size() < 4) throw ParseError(file, line_no, "truncated synset line");

    auto offset = parse_uint(fields[0]);
    if (!offset || fields[0].size() != 8)
      throw ParseError(file, line_no,
                       "bad synset offset '" + std::string(fields[0]) + "'");
    if (fields[2].size() != 1 || !valid_pos(normalize_pos(fields[2][0])))
      throw ParseError(file, line_no, "bad ss_type '" + std::string(fields[2]) + "'");
    const char pos = normalize_pos(fields[2][0]);
    const SynsetId id{pos, static_cast<std::uint32_t>(*offset)};

    auto w_cnt = parse_uint(fields[3], 16);
    if (!w_cnt || *w_cnt == 0) throw ParseError(file, line_no, "bad word count");
    std::size_t cursor = 4;
    if (fields.size() < cursor + 2 * *w_cnt + 1)
      throw ParseError(file, line_no, "truncated word list");

    Synset synset;
    synset.id = id;
    synset.gloss = std::move(gloss);
    for (std::uint64_t w = 0; w < *w_cnt; ++w) {
      synset.lemmas.emplace_back(fields[cursor]);
      if (!parse_uint(fields[cursor + 1], 16))
        throw ParseError(file, line_no, "bad lex_id for word '" +
                                            std::string(fields[cursor]) + "'");
      cursor += 2;
    }

    auto p_cnt = parse_uint(fields[cursor]);
    if (!p_cnt) throw ParseError(file, line_no, "bad pointer count");
    ++cursor;
    for (std::uint64_t p = 0; p < *p_cnt; ++p) {
      if (fields.size() < cursor + 4)
        throw ParseError(file, line_no, "truncated pointer list");
      std::string_view symbol = fields[cursor];
      auto target_offset = parse_uint(fields[cursor + 1]);
      std::string_view target_pos = fields[cursor + 2];
      if (!target_offset || fields[cursor + 1].size() != 8)
        throw ParseError(file, line_no, "bad pointer offset '" +
                                            std::string(fields[cursor + 1]) + "'");
      if (target_pos.size() != 1 || !valid_pos(normalize_pos(target_pos[0])))
        throw ParseError(file, line_no, "bad pointer pos '" +
                                            std::string(target_pos) + "'");
      if (symbol == "@" || symbol == "@i") {
        SynsetId target{normalize_pos(target_pos[0]),
                        static_cast<std::uint32_t>(*target_offset)};
        edges_.push_back(PendingEdge{id, target, file, line_no});
      }
      cursor += 4;
    }
    // Verb frames may follow the pointers; they are not needed here.

    if (!offsets_seen_.insert(id).second)
      throw ParseError(file, line_no, "duplicate synset " + id.str());
    synsets_.push_back(std::move(synset));
  }

  void parse_index_line(std::string_view line, const std::string& file, std::size_t line_no) {
    auto fields = split_fields(line);
    if (fields.size() < 7) throw ParseError(file, line_no, "truncated index line");

    LemmaEntry entry;
    entry.lemma = to_lower_ascii(fields[0]);
    if (fields[1].size() != 1 || !valid_pos(normalize_pos(fields[1][0])))
      throw ParseError(file, line_no, "bad pos '" + std::string(fields[1]) + "'");
    entry.pos = normalize_pos(fields[1][0]);
    entry.file = file;
    entry.line = line_no;

    auto synset_cnt = parse_uint(fields[2]);
    auto p_cnt = parse_uint(fields[3]);
    if (!synset_cnt || *synset_cnt == 0)
      throw ParseError(file, line_no, "bad synset count");
    if (!p_cnt) throw ParseError(file, line_no, "bad pointer count");

    // lemma pos synset_cnt p_cnt [symbols] sense_cnt tagsense_cnt offsets
    const std::size_t expected = 4 + *p_cnt + 2 + *synset_cnt;
    if (fields.size() != expected)
      throw ParseError(file, line_no,
                       "expected " + std::to_string(expected) + " fields, got " +
                           std::to_string(fields.size()));

    std::size_t cursor = 4 + *p_cnt + 2;
    std::unordered_set<std::uint64_t> seen;
    for (std::uint64_t s = 0; s < *synset_cnt; ++s) {
      auto offset = parse_uint(fields[cursor]);
      if (!offset || fields[cursor].size() != 8)
        throw ParseError(file, line_no,
                         "bad synset offset '" + std::string(fields[cursor]) + "'");
      if (!seen.insert(*offset).second)
        throw ParseError(file, line_no, "duplicate synset offset in index entry");
      entry.senses.push_back(SynsetId{entry.pos, static_cast<std::uint32_t>(*offset)});
      ++cursor;
    }
    lemmas_.push_back(std::move(entry));
  }

  static void check_acyclic(const SenseTaxonomy& tax) {
    // Kahn's algorithm over the directed hypernym edges, per part of speech.
    const std::size_t n = tax.synsets_.size();
    std::vector<std::size_t> indegree(n, 0);
    for (std::size_t i = 0; i < n; ++i)
      for (SynsetId up : tax.hypernyms_[i]) indegree[tax.position_.at(up)] += 1;

    std::deque<std::size_t> ready;
    for (std::size_t i = 0; i < n; ++i)
      if (indegree[i] == 0) ready.push_back(i);

    std::size_t visited = 0;
    while (!ready.empty()) {
      std::size_t i = ready.front();
      ready.pop_front();
      ++visited;
      for (SynsetId up : tax.hypernyms_[i]) {
        std::size_t j = tax.position_.at(up);
        if (--indegree[j] == 0) ready.push_back(j);
      }
    }
    if (visited != n) {
      for (std::size_t i = 0; i < n; ++i)
        if (indegree[i] > 0)
          throw DataError("hypernym cycle detected involving " +
                          tax.synsets_[i].id.str());
    }
  }

  std::vector<Synset> synsets_;
  std::set<SynsetId> offsets_seen_;
  std::vector<PendingEdge> edges_;
  std::vector<LemmaEntry> lemmas_;
};

SenseTaxonomy parse_wordnet(std::span<const WordnetFile> index_files,
                            std::span<const WordnetFile> data_files) {
  TaxonomyBuilder builder;
  for (const WordnetFile& file : data_files) builder.parse_data_file(file);
  for (const WordnetFile& file : index_files) builder.parse_index_file(file);
  return builder.finish();
}

SenseTaxonomy load_wordnet_dir(const std::string& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir))
    throw UsageError("not a directory: " + dir);

  std::vector<WordnetFile> index_files, data_files;
  for (const char* part : {"noun", "verb", "adj", "adv"}) {
    const std::string index_path = dir + "/index." + part;
    const std::string data_path = dir + "/data." + part;
    const bool has_index = fs::exists(index_path);
    const bool has_data = fs::exists(data_path);
    if (!has_index && !has_data) continue;
    if (!has_index || !has_data)
      throw UsageError("incomplete WordNet pair for '" + std::string(part) +
                       "' under " + dir);
    index_files.push_back({index_path, read_file(index_path)});
    data_files.push_back({data_path, read_file(data_path)});
  }
  if (index_files.empty())
    throw UsageError("no WordNet database files under " + dir);
  return parse_wordnet(index_files, data_files);
}

std::size_t sense_count(std::string_view word, const SenseTaxonomy& taxonomy) {
  std::size_t count = 0;
  for (char pos : {'n', 'v', 'a', 'r'}) count += taxonomy.senses(word, pos).size();
  return count;
}

std::optional<double> path_similarity(SynsetId a, SynsetId b,
                                      const SenseTaxonomy& taxonomy) {
  a.pos = normalize_pos(a.pos);
  b.pos = normalize_pos(b.pos);
  if (!taxonomy.contains(a)) throw UsageError("unknown synset " + a.str());
  if (!taxonomy.contains(b)) throw UsageError("unknown synset " + b.str());
  if (a.pos != b.pos) return std::nullopt;
  if (a == b) return 1.0;

  // Breadth-first search over the undirected hypernym graph.
  std::map<SynsetId, std::size_t> distance;
  std::deque<SynsetId> frontier;
  distance[a] = 0;
  frontier.push_back(a);
  while (!frontier.empty()) {
    SynsetId current = frontier.front();
    frontier.pop_front();
    const std::size_t d = distance[current];
    for (auto neighbors : {taxonomy.hypernyms(current), taxonomy.hyponyms(current)}) {
      for (SynsetId next : neighbors) {
        if (distance.count(next)) continue;
        if (next == b) return 1.0 / (1.0 + static_cast<double>(d + 1));
        distance[next] = d + 1;
        frontier.push_back(next);
      }
    }
  }
  return std::nullopt;
}

}  // namespace comet
