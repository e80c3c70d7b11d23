// typesql: tag / train / eval / predict / synth.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "typesql/harness/config.hpp"
#include "typesql/harness/dataset.hpp"
#include "typesql/harness/predictor.hpp"
#include "typesql/harness/synthetic.hpp"
#include "typesql/harness/trainer.hpp"
#include "typesql/numkernel/error.hpp"
#include "typesql/typerec/recognizer.hpp"

namespace fs = std::filesystem;
using namespace typesql;

namespace {

struct Common {
  std::string mode;
  std::optional<std::uint64_t> seed;
  std::string config;
  std::string checkpoint;
};

void require_file(const std::string& path, const char* what) {
  if (path.empty()) throw Error(std::string("missing ") + what + " path");
  if (!fs::exists(path)) throw Error(std::string(what) + " not found: " + path);
}

TrainConfig resolve_config(const Common& c) {
  TrainConfig cfg;
  if (!c.config.empty()) {
    require_file(c.config, "config");
    cfg = load_config(c.config);
  }
  if (!c.mode.empty()) cfg.model.mode = parse_mode(c.mode);
  if (c.seed) cfg.seed = *c.seed;
  if (!c.checkpoint.empty()) cfg.checkpoint = c.checkpoint;
  return cfg;
}

const Table& find_table(const TableMap& tables, const std::string& id) {
  auto it = tables.find(id);
  if (it == tables.end()) throw Error("unknown table id: " + id);
  return it->second;
}

// Config written next to a checkpoint by `train`, used when --config is absent.
TrainConfig config_for_checkpoint(const Common& c) {
  if (c.config.empty() && !c.checkpoint.empty() && fs::exists(c.checkpoint + ".json")) {
    Common with = c;
    with.config = c.checkpoint + ".json";
    return resolve_config(with);
  }
  return resolve_config(c);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"TypeSQL slot-filling text-to-SQL"};
  app.require_subcommand(1);
  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--mode", common.mode, "type recognition mode")
        ->check(CLI::IsMember({"insensitive", "content"}));
    sub->add_option("--seed", common.seed, "random seed");
    sub->add_option("--config", common.config, "JSON training config");
    sub->add_option("--checkpoint", common.checkpoint, "checkpoint file");
  };

  std::string question, tables_path, table_id, gazetteer_path, examples_path, preds_path, out_dir;

  auto* tag = app.add_subcommand("tag", "print the type tags of a question as a JSON array");
  add_common(tag);
  tag->add_option("--question,-q", question, "question text")->required();
  tag->add_option("--tables", tables_path, "tables JSONL")->required();
  tag->add_option("--table-id", table_id, "table id")->required();
  tag->add_option("--gazetteer", gazetteer_path, "gazetteer TSV");

  auto* train = app.add_subcommand("train", "train a model from a config");
  add_common(train);

  auto* eval = app.add_subcommand("eval", "print the six metrics as JSON");
  add_common(eval);
  eval->add_option("--examples", examples_path, "gold examples JSONL")->required();
  eval->add_option("--tables", tables_path, "tables JSONL")->required();
  eval->add_option("--preds", preds_path, "predicted examples JSONL (parallel to --examples)");

  auto* predict = app.add_subcommand("predict", "translate one question into SQL");
  add_common(predict);
  predict->add_option("--question,-q", question, "question text")->required();
  predict->add_option("--tables", tables_path, "tables JSONL")->required();
  predict->add_option("--table-id", table_id, "table id")->required();

  auto* synth = app.add_subcommand("synth", "write the synthetic corpus and a config");
  add_common(synth);
  synth->add_option("--out", out_dir, "output directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*tag) {
      require_file(tables_path, "tables");
      const TableMap tables = load_tables(tables_path);
      const Table& table = find_table(tables, table_id);
      TrainConfig cfg = resolve_config(common);
      if (gazetteer_path.empty()) gazetteer_path = cfg.gazetteer;
      std::optional<Gazetteer> gaz;
      if (!gazetteer_path.empty()) {
        require_file(gazetteer_path, "gazetteer");
        gaz = Gazetteer::load_file(gazetteer_path);
      }
      const TypingMode mode = common.mode.empty() ? cfg.model.mode : parse_mode(common.mode);
      const TaggedQuestion tq = recognize(question, table.schema, &table, mode, gaz ? &*gaz : nullptr);
      nlohmann::json out = nlohmann::json::array();
      for (const auto& t : tq.tags) out.push_back(tag_label(t, table.schema));
      std::cout << out.dump() << '\n';
    } else if (*train) {
      if (common.config.empty()) throw Error("train requires --config");
      const TrainConfig cfg = resolve_config(common);
      require_file(cfg.train_examples, "train examples");
      require_file(cfg.train_tables, "train tables");
      const TrainingRun run = run_training(cfg, &std::cerr);
      nlohmann::json out;
      out["train"] = nlohmann::json::parse(metrics_json(run.train_metrics));
      if (run.dev_metrics) out["dev"] = nlohmann::json::parse(metrics_json(*run.dev_metrics));
      out["epochs"] = run.result.log.size();
      std::cout << out.dump() << '\n';
    } else if (*eval) {
      require_file(examples_path, "examples");
      require_file(tables_path, "tables");
      const Dataset gold = load_dataset(examples_path, tables_path);
      std::vector<SqlQuery> preds;
      if (!preds_path.empty()) {
        require_file(preds_path, "predictions");
        std::ifstream in(preds_path);
        for (auto& e : read_examples(in, preds_path)) preds.push_back(std::move(e.gold));
      } else {
        if (common.checkpoint.empty()) throw Error("eval requires --preds or --checkpoint");
        const TrainConfig cfg = config_for_checkpoint(common);
        const Resources res = load_resources(cfg);
        TypeSqlModel model = load_model(cfg, res, common.checkpoint);
        preds = predict_dataset(model, gold, res);
      }
      std::cout << metrics_json(evaluate_predictions(preds, gold)) << '\n';
    } else if (*predict) {
      if (common.checkpoint.empty()) throw Error("predict requires --checkpoint");
      require_file(tables_path, "tables");
      const TableMap tables = load_tables(tables_path);
      const Table& table = find_table(tables, table_id);
      const TrainConfig cfg = config_for_checkpoint(common);
      const Resources res = load_resources(cfg);
      TypeSqlModel model = load_model(cfg, res, common.checkpoint);
      std::cout << render(predict_query(model, question, table, res), table.schema) << '\n';
    } else if (*synth) {
      SyntheticOptions opts;
      if (common.seed) opts.seed = *common.seed;
      const SyntheticCorpus corpus = generate_synthetic(opts);
      write_synthetic(out_dir, corpus);
      TrainConfig cfg;
      const fs::path dir = fs::absolute(out_dir);
      if (!common.mode.empty()) cfg.model.mode = parse_mode(common.mode);
      cfg.embeddings = {(dir / "embeddings.txt").string()};
      cfg.gazetteer = (dir / "gazetteer.tsv").string();
      cfg.train_examples = (dir / "train.jsonl").string();
      cfg.train_tables = (dir / "tables.jsonl").string();
      cfg.dev_examples = (dir / "dev.jsonl").string();
      cfg.dev_tables = (dir / "tables.jsonl").string();
      cfg.checkpoint = (dir / "model.tsq").string();
      save_config(dir / "config.json", cfg);
      std::cout << "wrote " << corpus.train.size() << " train and " << corpus.dev.size()
                << " dev examples to " << dir.string() << '\n';
    }
  } catch (const std::exception& e) {
    std::cerr << "typesql: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
