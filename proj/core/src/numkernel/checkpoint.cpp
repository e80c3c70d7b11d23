#include "typesql/numkernel/checkpoint.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "typesql/numkernel/error.hpp"

namespace typesql {

namespace {

constexpr std::array<char, 4> kMagic = {'T', 'S', 'Q', '1'};

void put_u32(std::ostream& out, std::uint32_t v) {
  const char bytes[4] = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
                         static_cast<char>((v >> 16) & 0xff), static_cast<char>((v >> 24) & 0xff)};
  out.write(bytes, 4);
}

std::uint32_t get_u32(std::istream& in) {
  unsigned char bytes[4];
  if (!in.read(reinterpret_cast<char*>(bytes), 4)) throw Error("checkpoint: truncated file");
  return static_cast<std::uint32_t>(bytes[0]) | (static_cast<std::uint32_t>(bytes[1]) << 8) |
         (static_cast<std::uint32_t>(bytes[2]) << 16) |
         (static_cast<std::uint32_t>(bytes[3]) << 24);
}

std::uint32_t narrow(std::size_t v) {
  if (v > UINT32_MAX) throw Error("checkpoint: value exceeds 32 bits");
  return static_cast<std::uint32_t>(v);
}

}  // namespace

void write_checkpoint(std::ostream& out, const ParamStore& store) {
  out.write(kMagic.data(), kMagic.size());
  put_u32(out, narrow(store.size()));
  for (const auto& [name, tensor] : store.entries()) {
    put_u32(out, narrow(name.size()));
    out.write(name.data(), static_cast<std::streamsize>(name.size()));
    put_u32(out, narrow(tensor.rank()));
    for (auto d : tensor.shape) put_u32(out, narrow(d));
    for (double v : tensor.data) put_u32(out, std::bit_cast<std::uint32_t>(static_cast<float>(v)));
  }
  if (!out) throw Error("checkpoint: write failed");
}

void save_checkpoint(const std::filesystem::path& path, const ParamStore& store) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("checkpoint: cannot open " + path.string() + " for writing");
  write_checkpoint(out, store);
}

void read_checkpoint(std::istream& in, ParamStore& store) {
  std::array<char, 4> magic{};
  if (!in.read(magic.data(), 4) || magic != kMagic) throw Error("checkpoint: bad magic");
  const std::uint32_t count = get_u32(in);
  std::map<std::string, std::vector<double>> loaded;
  for (std::uint32_t r = 0; r < count; ++r) {
    const std::uint32_t len = get_u32(in);
    if (len > (1u << 16)) throw Error("checkpoint: implausible name length");
    std::string name(len, '\0');
    if (!in.read(name.data(), len)) throw Error("checkpoint: truncated file");
    if (!store.contains(name)) throw Error("checkpoint: unexpected parameter " + name);
    const Tensor& expected = store.at(name);
    const std::uint32_t rank = get_u32(in);
    std::vector<std::size_t> shape(rank);
    for (auto& d : shape) d = get_u32(in);
    if (shape != expected.shape) {
      throw Error("checkpoint: shape mismatch for " + name + ": file " + shape_string(shape) +
                  ", model " + shape_string(expected.shape));
    }
    std::vector<double> data(expected.numel());
    for (auto& v : data) v = static_cast<double>(std::bit_cast<float>(get_u32(in)));
    if (!loaded.emplace(name, std::move(data)).second) {
      throw Error("checkpoint: duplicate parameter " + name);
    }
  }
  if (loaded.size() != store.size()) {
    for (const auto& [name, _] : store.entries())
      if (!loaded.contains(name)) throw Error("checkpoint: missing parameter " + name);
  }
  for (auto& [name, data] : loaded) store.at(name).data = std::move(data);
}

void load_checkpoint(const std::filesystem::path& path, ParamStore& store) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("checkpoint: cannot open " + path.string());
  read_checkpoint(in, store);
}

}  // namespace typesql
