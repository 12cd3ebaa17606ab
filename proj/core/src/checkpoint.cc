// Copyright 2026 The DIGAT Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "digat/checkpoint.h"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

#include "digat/errors.h"

namespace digat {
namespace {

constexpr char kMagic[8] = {'D', 'I', 'G', 'A', 'T', 'C', 'K', 'P'};
constexpr std::uint32_t kVersion = 1;

class Writer {
 public:
  explicit Writer(std::ostream& out) : out_(out) {}

  template <typename T>
  void Int(T v) {
    unsigned char b[sizeof(T)];
    for (std::size_t i = 0; i < sizeof(T); ++i) b[i] = (v >> (8 * i)) & 0xff;
    out_.write(reinterpret_cast<const char*>(b), sizeof(T));
  }
  void Double(double v) { Int(std::bit_cast<std::uint64_t>(v)); }
  void String(const std::string& s) {
    Int(static_cast<std::uint32_t>(s.size()));
    out_.write(s.data(), static_cast<std::streamsize>(s.size()));
  }
  void Doubles(std::span<const double> values) {
    for (double v : values) Double(v);
  }

 private:
  std::ostream& out_;
};

class Reader {
 public:
  Reader(std::istream& in, std::string path) : in_(in), path_(std::move(path)) {}

  template <typename T>
  T Int() {
    unsigned char b[sizeof(T)];
    Bytes(reinterpret_cast<char*>(b), sizeof(T));
    T v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) v |= static_cast<T>(b[i]) << (8 * i);
    return v;
  }
  double Double() { return std::bit_cast<double>(Int<std::uint64_t>()); }
  std::string String() {
    const auto n = Int<std::uint32_t>();
    if (n > (1u << 20)) Fail("implausible name length");
    std::string s(n, '\0');
    Bytes(s.data(), n);
    return s;
  }
  std::vector<double> Doubles(std::size_t n) {
    std::vector<double> v(n);
    for (double& x : v) x = Double();
    return v;
  }
  void Bytes(char* dst, std::size_t n) {
    in_.read(dst, static_cast<std::streamsize>(n));
    if (static_cast<std::size_t>(in_.gcount()) != n) Fail("truncated file");
    offset_ += n;
  }
  [[noreturn]] void Fail(const std::string& what) const {
    throw ParseError(path_ + ": " + what + " at byte offset " +
                     std::to_string(offset_));
  }

 private:
  std::istream& in_;
  std::string path_;
  std::size_t offset_ = 0;
};

}  // namespace

void SaveCheckpoint(const std::filesystem::path& path,
                    const CheckpointHeader& header, const ParamStore& params,
                    const AdamState* optimizer) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write checkpoint " + path.string());
  Writer w(out);
  out.write(kMagic, sizeof(kMagic));
  w.Int(kVersion);
  w.Int(header.config_hash);
  w.Int(header.seed);
  w.Int(header.step);
  w.Int(header.epoch);
  w.Int(static_cast<std::uint64_t>(params.size()));
  for (const auto& [name, value] : params) {
    w.String(name);
    w.Int(static_cast<std::uint32_t>(value.rank()));
    for (std::size_t d : value.shape()) w.Int(static_cast<std::uint64_t>(d));
    w.Doubles(value.data());
  }
  w.Int(static_cast<std::uint8_t>(optimizer ? 1 : 0));
  if (optimizer) {
    w.Double(optimizer->options.learning_rate);
    w.Double(optimizer->options.beta1);
    w.Double(optimizer->options.beta2);
    w.Double(optimizer->options.epsilon);
    w.Int(optimizer->step);
    w.Int(static_cast<std::uint64_t>(optimizer->moments.size()));
    for (const auto& [name, m] : optimizer->moments) {
      w.String(name);
      w.Int(static_cast<std::uint64_t>(m.first.size()));
      w.Doubles(m.first);
      w.Doubles(m.second);
    }
  }
  if (!out) throw IoError("failed writing checkpoint " + path.string());
}

Checkpoint LoadCheckpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open checkpoint " + path.string());
  Reader r(in, path.string());
  char magic[8];
  r.Bytes(magic, sizeof(magic));
  if (std::memcmp(magic, kMagic, sizeof(magic)) != 0) r.Fail("bad magic");
  if (r.Int<std::uint32_t>() != kVersion) r.Fail("unsupported version");
  Checkpoint ckpt;
  ckpt.header.config_hash = r.Int<std::uint64_t>();
  ckpt.header.seed = r.Int<std::uint64_t>();
  ckpt.header.step = r.Int<std::uint64_t>();
  ckpt.header.epoch = r.Int<std::uint64_t>();
  const auto count = r.Int<std::uint64_t>();
  for (std::uint64_t i = 0; i < count; ++i) {
    std::string name = r.String();
    const auto rank = r.Int<std::uint32_t>();
    if (rank > 8) r.Fail("implausible rank for '" + name + "'");
    Shape shape(rank);
    for (auto& d : shape) d = static_cast<std::size_t>(r.Int<std::uint64_t>());
    std::vector<double> data = r.Doubles(ShapeSize(shape));
    ckpt.params.push_back(
        {std::move(name), Tensor::FromData(std::move(shape), std::move(data))});
  }
  if (r.Int<std::uint8_t>() == 1) {
    AdamState state;
    state.options.learning_rate = r.Double();
    state.options.beta1 = r.Double();
    state.options.beta2 = r.Double();
    state.options.epsilon = r.Double();
    state.step = r.Int<std::uint64_t>();
    const auto n = r.Int<std::uint64_t>();
    for (std::uint64_t i = 0; i < n; ++i) {
      std::string name = r.String();
      const auto len = static_cast<std::size_t>(r.Int<std::uint64_t>());
      AdamMoments m;
      m.first = r.Doubles(len);
      m.second = r.Doubles(len);
      state.moments.emplace(std::move(name), std::move(m));
    }
    ckpt.optimizer = std::move(state);
  }
  return ckpt;
}

void RestoreParams(const Checkpoint& checkpoint, ParamStore& params) {
  if (checkpoint.params.size() != params.size()) {
    throw ContractError("checkpoint holds " +
                        std::to_string(checkpoint.params.size()) +
                        " parameters, model expects " +
                        std::to_string(params.size()));
  }
  for (const auto& [name, value] : checkpoint.params) {
    Tensor& dst = params.Get(name);
    if (dst.shape() != value.shape()) {
      throw ShapeError("checkpoint parameter '" + name + "' has shape " +
                       ShapeToString(value.shape()) + ", model expects " +
                       ShapeToString(dst.shape()));
    }
    auto src = value.data();
    std::copy(src.begin(), src.end(), dst.mutable_data().begin());
  }
}

}  // namespace digat
