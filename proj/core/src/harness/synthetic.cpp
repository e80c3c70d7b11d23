#include "typesql/harness/synthetic.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <cmath>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>

#include "typesql/numkernel/error.hpp"
#include "typesql/typerec/tokenize.hpp"

namespace typesql {

namespace {

enum class Pool { Person, Place, Country, Org, Sport, Word, Integer, Decimal, Year };

struct ColumnSpec {
  const char* name;
  Pool pool;
  std::vector<std::string> words = {};  // for Pool::Word
};

struct SchemaSpec {
  const char* id;
  std::vector<ColumnSpec> columns;
};

const std::vector<std::string> kFirst = {"john", "mary", "peter", "anna", "david", "laura",
                                         "mark", "sofia", "james", "elena", "paul", "nina"};
const std::vector<std::string> kLast = {"smith", "jones", "brown", "garcia", "miller", "davis",
                                        "wilson", "moore", "taylor", "clark", "lewis", "walker"};
const std::vector<std::string> kPlaces = {"springfield", "riverside", "lake view", "oak park",
                                          "fairview", "hill valley", "maple town", "port royal",
                                          "stone bridge", "green bay"};
const std::vector<std::string> kCountries = {"france", "japan", "brazil", "canada", "kenya",
                                             "norway", "chile", "egypt", "india", "peru"};
const std::vector<std::string> kOrgs = {"red hawks", "blue lions", "acme records", "north star",
                                        "iron works", "silver line", "golden gate", "sun media"};
const std::vector<std::string> kSports = {"tennis", "rugby", "cricket", "hockey", "rowing",
                                          "cycling", "boxing", "golf"};

std::vector<SchemaSpec> schemas() {
  return {
      {"players",
       {{"player", Pool::Person},
        {"team", Pool::Org},
        {"position", Pool::Word, {"forward", "defender", "goalkeeper", "midfielder"}},
        {"goals", Pool::Integer},
        {"season", Pool::Year}}},
      {"films",
       {{"title", Pool::Word, {"night watch", "blue moon", "last call", "open road", "cold river", "red sky"}},
        {"director", Pool::Person},
        {"year", Pool::Year},
        {"rating", Pool::Decimal}}},
      {"cities",
       {{"city", Pool::Place}, {"country", Pool::Country}, {"population", Pool::Integer}, {"area", Pool::Decimal}}},
      {"races",
       {{"driver", Pool::Person},
        {"circuit", Pool::Place},
        {"laps", Pool::Integer},
        {"points", Pool::Integer},
        {"constructor", Pool::Org}}},
      {"elections",
       {{"candidate", Pool::Person},
        {"party", Pool::Word, {"labour", "liberal", "green", "reform", "unity"}},
        {"district", Pool::Place},
        {"votes", Pool::Integer},
        {"result", Pool::Word, {"won", "lost", "retired"}}}},
      {"albums",
       {{"album", Pool::Word, {"first light", "echoes", "paper hearts", "wild ones", "gravity"}},
        {"artist", Pool::Person},
        {"label", Pool::Org},
        {"sales", Pool::Integer},
        {"chart position", Pool::Integer}}},
      {"episodes",
       {{"episode", Pool::Word, {"pilot", "the return", "lost signal", "homecoming", "finale"}},
        {"writer", Pool::Person},
        {"viewers", Pool::Decimal},
        {"season", Pool::Integer}}},
      {"schools",
       {{"school", Pool::Word, {"central high", "west academy", "st mary", "lincoln prep", "east ridge"}},
        {"location", Pool::Place},
        {"enrollment", Pool::Integer},
        {"mascot", Pool::Word, {"eagles", "tigers", "bears", "wolves", "falcons"}}}},
      {"matches",
       {{"opponent", Pool::Org},
        {"venue", Pool::Place},
        {"attendance", Pool::Integer},
        {"score", Pool::Word, {"win", "loss", "draw"}}}},
      {"ships",
       {{"ship", Pool::Word, {"aurora", "valiant", "sea breeze", "northwind", "endeavour"}},
        {"builder", Pool::Org},
        {"tonnage", Pool::Integer},
        {"fate", Pool::Word, {"sunk", "scrapped", "preserved", "sold"}},
        {"launched", Pool::Year}}},
      {"athletes",
       {{"athlete", Pool::Person},
        {"nation", Pool::Country},
        {"sport", Pool::Sport},
        {"medals", Pool::Integer}}},
      {"books",
       {{"book", Pool::Word, {"deep water", "quiet storm", "bright city", "old roads", "glass house"}},
        {"author", Pool::Person},
        {"pages", Pool::Integer},
        {"publisher", Pool::Org}}},
  };
}

bool is_real(Pool p) { return p == Pool::Integer || p == Pool::Decimal || p == Pool::Year; }

template <typename T>
const T& pick(const std::vector<T>& v, std::mt19937_64& rng) {
  return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
}

Cell draw_cell(const ColumnSpec& spec, std::mt19937_64& rng) {
  switch (spec.pool) {
    case Pool::Person: return pick(kFirst, rng) + " " + pick(kLast, rng);
    case Pool::Place: return pick(kPlaces, rng);
    case Pool::Country: return pick(kCountries, rng);
    case Pool::Org: return pick(kOrgs, rng);
    case Pool::Sport: return pick(kSports, rng);
    case Pool::Word: return pick(spec.words, rng);
    case Pool::Integer: return static_cast<double>(std::uniform_int_distribution<int>(1, 500)(rng));
    case Pool::Decimal: return std::uniform_int_distribution<int>(10, 999)(rng) / 10.0;
    case Pool::Year: return static_cast<double>(std::uniform_int_distribution<int>(1950, 2015)(rng));
  }
  return std::string{};
}

struct Template {
  std::string text;  // {S} {C1} {V1} {C2} {V2}
  Agg agg;
  std::vector<Op> ops;  // one per condition
  bool numeric_select = false;
};

const std::vector<Template>& templates() {
  static const std::vector<Template> t = {
      {"what is the {S} when the {C1} is {V1} ?", Agg::None, {Op::Eq}},
      {"which {S} has {C1} {V1} ?", Agg::None, {Op::Eq}},
      {"how many {S} have a {C1} of {V1} ?", Agg::Count, {Op::Eq}},
      {"what is the highest {S} when {C1} is {V1} ?", Agg::Max, {Op::Eq}, true},
      {"what is the lowest {S} with a {C1} of {V1} ?", Agg::Min, {Op::Eq}, true},
      {"what is the total {S} when the {C1} is {V1} ?", Agg::Sum, {Op::Eq}, true},
      {"what is the average {S} for {C1} {V1} ?", Agg::Avg, {Op::Eq}, true},
      {"what is the {S} when {C1} is {V1} and {C2} is {V2} ?", Agg::None, {Op::Eq, Op::Eq}},
      {"how many {S} have {C1} greater than {V1} ?", Agg::Count, {Op::Gt}},
      {"which {S} has a {C1} less than {V1} ?", Agg::None, {Op::Lt}},
      {"what is the highest {S} ?", Agg::Max, {}, true},
      {"name the {S} for {C1} {V1} when {C2} is more than {V2}", Agg::None, {Op::Eq, Op::Gt}},
  };
  return t;
}

std::string replace_all(std::string s, const std::string& from, const std::string& to) {
  for (std::size_t pos = s.find(from); pos != std::string::npos; pos = s.find(from, pos + to.size()))
    s.replace(pos, from.size(), to);
  return s;
}

// One template instance over `table`, or nullopt when the draw does not fit.
std::optional<Example> instantiate(const Template& tpl, const SchemaSpec& spec, const Table& table,
                                   std::mt19937_64& rng) {
  const std::size_t C = spec.columns.size();
  std::vector<std::size_t> cols(C);
  std::iota(cols.begin(), cols.end(), 0);
  std::shuffle(cols.begin(), cols.end(), rng);
  const std::size_t sel = cols[0];
  if (tpl.numeric_select != is_real(spec.columns[sel].pool) && tpl.numeric_select) return std::nullopt;
  if (tpl.ops.size() + 1 > C) return std::nullopt;

  Example e;
  e.table_id = spec.id;
  e.gold.agg = tpl.agg;
  e.gold.sel = sel;
  std::string text = replace_all(tpl.text, "{S}", spec.columns[sel].name);
  const auto& row = pick(table.rows, rng);
  for (std::size_t i = 0; i < tpl.ops.size(); ++i) {
    const std::size_t col = cols[i + 1];
    const Op op = tpl.ops[i];
    std::string value;
    if (op == Op::Eq) {
      value = cell_text(row[col]);
    } else {
      if (!is_real(spec.columns[col].pool)) return std::nullopt;
      value = cell_text(pick(table.rows, rng)[col]);
    }
    const std::string n = std::to_string(i + 1);
    text = replace_all(text, "{C" + n + "}", spec.columns[col].name);
    text = replace_all(text, "{V" + n + "}", value);
    e.gold.conds.push_back({col, op, value});
  }
  e.question = text;
  return e;
}

void add_words(std::set<std::string>& vocab, const std::string& text) {
  for (const auto& t : tokenize(text).tokens) vocab.insert(t);
}

}  // namespace

Gazetteer SyntheticCorpus::gazetteer() const {
  Gazetteer g;
  for (const auto& [key, cat] : gazetteer_entries) g.add(key, *entity_kind_from_name(cat));
  return g;
}

SyntheticCorpus generate_synthetic(const SyntheticOptions& options) {
  std::mt19937_64 rng(options.seed);
  SyntheticCorpus corpus;
  const auto specs = schemas();
  std::set<std::string> vocab;

  for (const auto& spec : specs) {
    Table t;
    t.schema.id = spec.id;
    for (const auto& c : spec.columns) {
      t.schema.columns.push_back({c.name, is_real(c.pool) ? ColumnKind::Real : ColumnKind::Text});
      add_words(vocab, c.name);
    }
    for (std::size_t r = 0; r < options.rows_per_table; ++r) {
      std::vector<Cell> row;
      for (const auto& c : spec.columns) row.push_back(draw_cell(c, rng));
      t.rows.push_back(std::move(row));
    }
    t.validate();
    corpus.tables.emplace(spec.id, std::move(t));
  }

  std::set<std::string> seen;
  auto fill = [&](std::vector<Example>& out, std::size_t per_table) {
    for (const auto& spec : specs) {
      const Table& table = corpus.tables.at(spec.id);
      std::size_t made = 0, attempts = 0;
      while (made < per_table) {
        if (++attempts > per_table * 200) throw Error("synthetic: cannot fill table " + std::string(spec.id));
        const Template& tpl = pick(templates(), rng);
        auto e = instantiate(tpl, spec, table, rng);
        if (!e || !seen.insert(e->question).second) continue;
        out.push_back(std::move(*e));
        ++made;
      }
    }
  };
  fill(corpus.train, options.train_per_table);
  fill(corpus.dev, options.dev_per_table);

  for (const auto& tpl : templates()) add_words(vocab, tpl.text);
  for (const auto* pool : {&kFirst, &kLast, &kPlaces, &kCountries, &kOrgs, &kSports})
    for (const auto& w : *pool) add_words(vocab, w);
  for (const auto& spec : specs)
    for (const auto& c : spec.columns)
      for (const auto& w : c.words) add_words(vocab, w);

  corpus.embeddings = EmbeddingStore(options.embedding_dim);
  std::normal_distribution<double> gauss(0.0, 1.0 / std::sqrt(static_cast<double>(options.embedding_dim)));
  for (const auto& w : vocab) {
    if (w.find_first_not_of("0123456789.") == std::string::npos) continue;  // numbers stay OOV
    if (w.front() == '{') continue;
    std::vector<double> v(options.embedding_dim);
    for (auto& x : v) x = gauss(rng);
    corpus.embeddings.add(w, std::move(v));
  }

  for (const auto& f : kFirst)
    for (const auto& l : kLast) corpus.gazetteer_entries.emplace_back(f + " " + l, "person");
  for (const auto& p : kPlaces) corpus.gazetteer_entries.emplace_back(p, "place");
  for (const auto& c : kCountries) corpus.gazetteer_entries.emplace_back(c, "country");
  for (const auto& o : kOrgs) corpus.gazetteer_entries.emplace_back(o, "organization");
  for (const auto& s : kSports) corpus.gazetteer_entries.emplace_back(s, "sport");
  return corpus;
}

void write_synthetic(const std::filesystem::path& dir, const SyntheticCorpus& corpus) {
  std::filesystem::create_directories(dir);
  save_examples(dir / "train.jsonl", corpus.train);
  save_examples(dir / "dev.jsonl", corpus.dev);
  save_tables(dir / "tables.jsonl", corpus.tables);

  std::ofstream emb(dir / "embeddings.txt");
  if (!emb) throw Error("cannot write embeddings to " + dir.string());
  std::map<std::string, std::vector<double>> sorted(corpus.embeddings.vectors().begin(),
                                                    corpus.embeddings.vectors().end());
  emb << std::setprecision(17);
  for (const auto& [word, vec] : sorted) {
    emb << word;
    for (double x : vec) emb << ' ' << x;
    emb << '\n';
  }
  std::ofstream gaz(dir / "gazetteer.tsv");
  if (!gaz) throw Error("cannot write gazetteer to " + dir.string());
  for (const auto& [key, cat] : corpus.gazetteer_entries) gaz << key << '\t' << cat << '\n';
}

}  // namespace typesql
