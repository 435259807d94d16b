#include "htc/weight_file.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include "file_util.hpp"
#include "htc/errors.hpp"

namespace htc {

namespace {

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

void put_f64(std::string& out, double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, sizeof(bits));
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((bits >> (8 * i)) & 0xFF));
}

class Reader {
 public:
  Reader(std::string data, std::string path)
      : data_(std::move(data)), path_(std::move(path)) {}

  std::uint32_t u32(const char* what) {
    need(4, what);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) {
      v |= static_cast<std::uint32_t>(static_cast<unsigned char>(data_[pos_ + i])) << (8 * i);
    }
    pos_ += 4;
    return v;
  }

  double f64(const char* what) {
    need(8, what);
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) {
      bits |= static_cast<std::uint64_t>(static_cast<unsigned char>(data_[pos_ + i])) << (8 * i);
    }
    pos_ += 8;
    double v;
    std::memcpy(&v, &bits, sizeof(v));
    return v;
  }

  std::size_t pos() const { return pos_; }
  std::size_t remaining() const { return data_.size() - pos_; }
  const std::string& raw() const { return data_; }

  void need(std::size_t n, const char* what) {
    if (data_.size() - pos_ < n) {
      throw FormatError(path_ + ": truncated " + what + " at byte offset " +
                        std::to_string(pos_));
    }
  }

 private:
  std::string data_;
  std::string path_;
  std::size_t pos_ = 0;
};

}  // namespace

void write_weight_file(const std::string& path, const std::vector<Matrix>& layers) {
  if (layers.empty()) throw DomainError("write_weight_file: no layers");
  std::string out;
  std::size_t payload = 0;
  for (const auto& m : layers) payload += m.size();
  out.reserve(12 + 8 * layers.size() + 8 * payload);

  out.append(kWeightMagic, 4);
  put_u32(out, kWeightFormatVersion);
  put_u32(out, static_cast<std::uint32_t>(layers.size()));
  for (const auto& m : layers) {
    put_u32(out, static_cast<std::uint32_t>(m.rows()));
    put_u32(out, static_cast<std::uint32_t>(m.cols()));
  }
  for (const auto& m : layers) {
    for (double v : m.data()) put_f64(out, v);
  }
  detail::write_file_atomic(path, out);
}

void write_weight_file(const std::string& path, const FcnWeights& net) {
  write_weight_file(path, net.layers);
}

std::vector<Matrix> read_weight_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open for reading: " + path);
  std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  Reader r(std::move(data), path);

  r.need(4, "magic");
  if (std::memcmp(r.raw().data(), kWeightMagic, 4) != 0) {
    throw FormatError(path + ": bad magic at byte offset 0");
  }
  r.u32("magic");
  const std::uint32_t version = r.u32("format version");
  if (version != kWeightFormatVersion) {
    throw FormatError(path + ": unsupported format version " + std::to_string(version) +
                      " at byte offset 4");
  }
  const std::uint32_t layer_count = r.u32("layer count");
  if (layer_count == 0) throw FormatError(path + ": zero layers at byte offset 8");

  std::vector<std::pair<std::uint32_t, std::uint32_t>> shapes;
  shapes.reserve(layer_count);
  for (std::uint32_t l = 0; l < layer_count; ++l) {
    const std::size_t at = r.pos();
    const std::uint32_t rows = r.u32("layer shape");
    const std::uint32_t cols = r.u32("layer shape");
    if (rows == 0 || cols == 0) {
      throw FormatError(path + ": empty layer shape at byte offset " + std::to_string(at));
    }
    shapes.emplace_back(rows, cols);
  }
  for (std::uint32_t l = 0; l + 1 < layer_count; ++l) {
    if (shapes[l + 1].second != shapes[l].first) {
      throw FormatError(path + ": layer shape chain mismatch between layers " +
                        std::to_string(l + 1) + " and " + std::to_string(l + 2));
    }
  }

  std::size_t payload = 0;
  for (const auto& [rows, cols] : shapes) {
    payload += static_cast<std::size_t>(rows) * cols;
  }
  if (r.remaining() != payload * 8) {
    throw FormatError(path + ": payload length mismatch at byte offset " +
                      std::to_string(r.pos()) + " (expected " + std::to_string(payload * 8) +
                      " bytes, found " + std::to_string(r.remaining()) + ")");
  }

  std::vector<Matrix> layers;
  layers.reserve(layer_count);
  for (const auto& [rows, cols] : shapes) {
    Matrix m(rows, cols);
    for (double& v : m.data()) v = r.f64("payload");
    layers.push_back(std::move(m));
  }
  return layers;
}

FcnWeights read_network(const std::string& path) {
  FcnWeights net;
  net.layers = read_weight_file(path);
  net.validate();
  return net;
}

}  // namespace htc
