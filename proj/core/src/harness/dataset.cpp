#include "typesql/harness/dataset.hpp"

#include <fstream>

#include <json.hpp>

#include "typesql/numkernel/error.hpp"

namespace typesql {

namespace {

using json = nlohmann::json;

std::string value_string(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number()) return cell_text(Cell(v.get<double>()));
  throw Error("condition value must be a string or number");
}

std::size_t index_field(const json& obj, const char* key, std::size_t bound) {
  const json& v = obj.at(key);
  if (!v.is_number_integer()) throw Error(std::string("'") + key + "' must be an integer");
  const auto i = v.get<long long>();
  if (i < 0 || static_cast<std::size_t>(i) >= bound) {
    throw Error(std::string("'") + key + "' out of range: " + std::to_string(i));
  }
  return static_cast<std::size_t>(i);
}

Example parse_example(const json& j) {
  Example e;
  e.question = j.at("question").get<std::string>();
  e.table_id = j.at("table_id").get<std::string>();
  const json& sql = j.at("sql");
  const json& sel = sql.at("sel");
  if (!sel.is_number_integer() || sel.get<long long>() < 0) throw Error("'sel' must be a non-negative integer");
  e.gold.sel = sel.get<std::size_t>();
  e.gold.agg = static_cast<Agg>(index_field(sql, "agg", kAggCount));
  const json& conds = sql.at("conds");
  if (!conds.is_array()) throw Error("'conds' must be an array");
  if (conds.size() > kMaxConditions) throw Error("more than 4 conditions");
  for (const json& c : conds) {
    if (!c.is_array() || c.size() != 3) throw Error("condition must be [col, op, value]");
    if (!c[0].is_number_integer() || c[0].get<long long>() < 0) throw Error("condition column must be a non-negative integer");
    if (!c[1].is_number_integer() || c[1].get<long long>() < 0 || c[1].get<long long>() >= 3) {
      throw Error("condition operator out of range");
    }
    e.gold.conds.push_back(
        {c[0].get<std::size_t>(), static_cast<Op>(c[1].get<std::size_t>()), value_string(c[2])});
  }
  return e;
}

Table parse_table(const json& j) {
  Table t;
  t.schema.id = j.at("id").get<std::string>();
  const auto header = j.at("header").get<std::vector<std::string>>();
  const json& types = j.at("types");
  if (!types.is_array() || types.size() != header.size()) {
    throw Error("'types' must list one type per header entry");
  }
  for (std::size_t c = 0; c < header.size(); ++c) {
    const std::string kind = types[c].get<std::string>();
    if (kind != "text" && kind != "real") throw Error("column type must be text or real, got " + kind);
    t.schema.columns.push_back({header[c], kind == "real" ? ColumnKind::Real : ColumnKind::Text});
  }
  for (const json& r : j.at("rows")) {
    if (!r.is_array() || r.size() != header.size()) throw Error("row length differs from header");
    std::vector<Cell> row;
    for (std::size_t c = 0; c < r.size(); ++c) {
      const json& v = r[c];
      if (t.schema.columns[c].kind == ColumnKind::Real) {
        double d = 0.0;
        if (v.is_number()) {
          d = v.get<double>();
        } else if (!v.is_string() || !parse_number(v.get<std::string>(), d)) {
          throw Error("non-numeric cell in real column '" + header[c] + "'");
        }
        row.emplace_back(d);
      } else if (v.is_string()) {
        row.emplace_back(v.get<std::string>());
      } else if (v.is_number()) {
        row.emplace_back(cell_text(Cell(v.get<double>())));
      } else {
        throw Error("text cell must be a string or number");
      }
    }
    t.rows.push_back(std::move(row));
  }
  t.validate();
  return t;
}

template <typename Fn>
void for_each_line(std::istream& in, const std::string& source, Fn&& fn) {
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      fn(json::parse(line));
    } catch (const std::exception& e) {
      throw Error(source + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
}

json cell_json(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return *d;
  return std::get<std::string>(c);
}

}  // namespace

std::vector<Example> read_examples(std::istream& in, const std::string& source) {
  std::vector<Example> out;
  for_each_line(in, source, [&](const json& j) { out.push_back(parse_example(j)); });
  return out;
}

TableMap read_tables(std::istream& in, const std::string& source) {
  TableMap out;
  for_each_line(in, source, [&](const json& j) {
    Table t = parse_table(j);
    const std::string id = t.id();
    if (!out.emplace(id, std::move(t)).second) throw Error("duplicate table id " + id);
  });
  return out;
}

std::string example_json(const Example& e) {
  json conds = json::array();
  for (const auto& c : e.gold.conds)
    conds.push_back({c.col, static_cast<std::size_t>(c.op), c.val});
  nlohmann::ordered_json j;
  j["question"] = e.question;
  j["table_id"] = e.table_id;
  j["sql"] = {{"sel", e.gold.sel}, {"agg", static_cast<std::size_t>(e.gold.agg)}, {"conds", conds}};
  return j.dump();
}

std::string table_json(const Table& t) {
  nlohmann::ordered_json j;
  j["id"] = t.id();
  json header = json::array(), types = json::array(), rows = json::array();
  for (const auto& c : t.schema.columns) {
    header.push_back(c.name);
    types.push_back(c.kind == ColumnKind::Real ? "real" : "text");
  }
  for (const auto& r : t.rows) {
    json row = json::array();
    for (const auto& cell : r) row.push_back(cell_json(cell));
    rows.push_back(std::move(row));
  }
  j["header"] = header;
  j["types"] = types;
  j["rows"] = rows;
  return j.dump();
}

void write_examples(std::ostream& out, const std::vector<Example>& examples) {
  for (const auto& e : examples) out << example_json(e) << '\n';
}

void write_tables(std::ostream& out, const TableMap& tables) {
  for (const auto& [_, t] : tables) out << table_json(t) << '\n';
}

TableMap load_tables(const std::filesystem::path& tables_path) {
  std::ifstream in(tables_path);
  if (!in) throw Error("cannot open tables file " + tables_path.string());
  return read_tables(in, tables_path.string());
}

Dataset load_dataset(const std::filesystem::path& examples_path,
                     const std::filesystem::path& tables_path) {
  Dataset ds;
  ds.tables = load_tables(tables_path);
  std::ifstream in(examples_path);
  if (!in) throw Error("cannot open examples file " + examples_path.string());
  ds.examples = read_examples(in, examples_path.string());
  for (std::size_t i = 0; i < ds.examples.size(); ++i) {
    const Example& e = ds.examples[i];
    auto it = ds.tables.find(e.table_id);
    if (it == ds.tables.end()) throw Error("unknown table id: " + e.table_id);
    try {
      e.gold.validate(it->second.column_count());
    } catch (const Error& err) {
      throw Error(examples_path.string() + ":" + std::to_string(i + 1) + ": " + err.what());
    }
  }
  return ds;
}

void save_examples(const std::filesystem::path& path, const std::vector<Example>& examples) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  write_examples(out, examples);
}

void save_tables(const std::filesystem::path& path, const TableMap& tables) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  write_tables(out, tables);
}

}  // namespace typesql
