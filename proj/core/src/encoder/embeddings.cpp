#include "typesql/encoder/embeddings.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "typesql/execeval/table.hpp"
#include "typesql/numkernel/error.hpp"

namespace typesql {

void EmbeddingStore::add(const std::string& token, std::vector<double> vec) {
  if (vec.size() != dim_) {
    throw Error("embedding for '" + token + "' has dimension " + std::to_string(vec.size()) +
                ", expected " + std::to_string(dim_));
  }
  vectors_.try_emplace(token, std::move(vec));
}

std::span<const double> EmbeddingStore::lookup(const std::string& token) const {
  auto it = vectors_.find(token);
  if (it == vectors_.end()) return zero_;
  return it->second;
}

EmbeddingStore EmbeddingStore::load(std::istream& in, const std::string& source) {
  EmbeddingStore store;
  bool have_dim = false;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream fields(line);
    std::string token;
    if (!(fields >> token)) continue;
    std::vector<double> vec;
    std::string num;
    while (fields >> num) {
      double v = 0.0;
      if (!parse_number(num, v)) {
        throw Error(source + ":" + std::to_string(lineno) + ": bad number '" + num + "'");
      }
      vec.push_back(v);
    }
    if (!have_dim) {
      if (vec.empty()) throw Error(source + ":" + std::to_string(lineno) + ": no vector values");
      store = EmbeddingStore(vec.size());
      have_dim = true;
    } else if (vec.size() != store.dim()) {
      throw Error(source + ":" + std::to_string(lineno) + ": dimension " +
                  std::to_string(vec.size()) + " differs from " + std::to_string(store.dim()));
    }
    for (auto& ch : token) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    store.vectors_.try_emplace(std::move(token), std::move(vec));
  }
  if (!have_dim) throw Error(source + ": no embeddings found");
  return store;
}

EmbeddingStore EmbeddingStore::load_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open embedding file " + path.string());
  return load(in, path.string());
}

EmbeddingStore EmbeddingStore::concat(const EmbeddingStore& first, const EmbeddingStore& second) {
  EmbeddingStore out(first.dim() + second.dim());
  auto join = [&](const std::string& token) {
    std::vector<double> v;
    v.reserve(out.dim());
    auto a = first.lookup(token);
    auto b = second.lookup(token);
    v.insert(v.end(), a.begin(), a.end());
    v.insert(v.end(), b.begin(), b.end());
    out.vectors_.try_emplace(token, std::move(v));
  };
  for (const auto& [token, _] : first.vectors()) join(token);
  for (const auto& [token, _] : second.vectors())
    if (!out.contains(token)) join(token);
  return out;
}

EmbeddingStore load_embeddings(const std::vector<std::filesystem::path>& paths) {
  if (paths.empty() || paths.size() > 2) throw Error("expected one or two embedding files");
  EmbeddingStore first = EmbeddingStore::load_file(paths[0]);
  if (paths.size() == 1) return first;
  return EmbeddingStore::concat(first, EmbeddingStore::load_file(paths[1]));
}

}  // namespace typesql
