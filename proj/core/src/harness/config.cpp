#include "typesql/harness/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "typesql/numkernel/error.hpp"

namespace typesql {

namespace {

std::string resolve(const std::filesystem::path& base, const std::string& p) {
  if (p.empty() || base.empty()) return p;
  const std::filesystem::path path(p);
  return path.is_absolute() ? p : (base / path).lexically_normal().string();
}

std::string absolute(const std::string& p) {
  return p.empty() ? p : std::filesystem::absolute(p).lexically_normal().string();
}

}  // namespace

void TrainConfig::validate() const {
  if (batch_size < 1) throw Error("config: batch_size must be at least 1");
  if (learning_rate <= 0.0) throw Error("config: learning_rate must be positive");
  if (eval_every < 1) throw Error("config: eval_every must be at least 1");
  model.validate();
}

TrainConfig parse_config(const std::string& json_text, const std::filesystem::path& base_dir) {
  TrainConfig c;
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const std::exception& e) {
    throw Error(std::string("config: ") + e.what());
  }
  if (!j.is_object()) throw Error("config: expected a JSON object");
  try {
    c.model.word_dim = j.value("word_dim", c.model.word_dim);
    c.model.type_dim = j.value("type_dim", c.model.type_dim);
    c.model.hidden = j.value("hidden", c.model.hidden);
    c.model.dropout = j.value("dropout", c.model.dropout);
    c.model.max_value_len = j.value("max_value_len", c.model.max_value_len);
    c.model.mode = parse_mode(j.value("mode", std::string(mode_name(c.model.mode))));
    c.batch_size = j.value("batch_size", c.batch_size);
    c.learning_rate = j.value("learning_rate", c.learning_rate);
    c.epochs = j.value("epochs", c.epochs);
    c.seed = j.value("seed", c.seed);
    c.eval_every = j.value("eval_every", c.eval_every);
    c.stop_at_train_qm = j.value("stop_at_train_qm", c.stop_at_train_qm);
    for (const auto& p : j.value("embeddings", std::vector<std::string>{}))
      c.embeddings.push_back(resolve(base_dir, p));
    c.gazetteer = resolve(base_dir, j.value("gazetteer", std::string{}));
    c.train_examples = resolve(base_dir, j.value("train_examples", std::string{}));
    c.train_tables = resolve(base_dir, j.value("train_tables", std::string{}));
    c.dev_examples = resolve(base_dir, j.value("dev_examples", std::string{}));
    c.dev_tables = resolve(base_dir, j.value("dev_tables", std::string{}));
    c.checkpoint = resolve(base_dir, j.value("checkpoint", std::string{}));
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("config: ") + e.what());
  }
  c.validate();
  return c;
}

TrainConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path.parent_path());
}

std::string config_json(const TrainConfig& c) {
  nlohmann::ordered_json j;
  j["word_dim"] = c.model.word_dim;
  j["type_dim"] = c.model.type_dim;
  j["hidden"] = c.model.hidden;
  j["dropout"] = c.model.dropout;
  j["max_value_len"] = c.model.max_value_len;
  j["mode"] = std::string(mode_name(c.model.mode));
  j["batch_size"] = c.batch_size;
  j["learning_rate"] = c.learning_rate;
  j["epochs"] = c.epochs;
  j["seed"] = c.seed;
  j["eval_every"] = c.eval_every;
  j["stop_at_train_qm"] = c.stop_at_train_qm;
  std::vector<std::string> emb;
  for (const auto& p : c.embeddings) emb.push_back(absolute(p));
  j["embeddings"] = emb;
  j["gazetteer"] = absolute(c.gazetteer);
  j["train_examples"] = absolute(c.train_examples);
  j["train_tables"] = absolute(c.train_tables);
  j["dev_examples"] = absolute(c.dev_examples);
  j["dev_tables"] = absolute(c.dev_tables);
  j["checkpoint"] = absolute(c.checkpoint);
  return j.dump(2);
}

void save_config(const std::filesystem::path& path, const TrainConfig& config) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << config_json(config) << '\n';
}

}  // namespace typesql
