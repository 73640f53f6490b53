#include "userdp/dataset_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <limits>
#include <vector>

namespace userdp {

namespace {

constexpr char kMagic[4] = {'U', 'D', 'P', '1'};
constexpr std::size_t kHeaderSize = 4 + 3 * 4 + 1;
constexpr std::uint64_t kMaxEntries = std::uint64_t{1} << 33;

void put_u32(std::string& buf, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) {
    buf.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
  }
}

void put_u64(std::string& buf, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) {
    buf.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
  }
}

std::uint32_t get_u32(const unsigned char* p) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= std::uint32_t{p[i]} << (8 * i);
  return v;
}

std::uint64_t get_u64(const unsigned char* p) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= std::uint64_t{p[i]} << (8 * i);
  return v;
}

std::uint32_t checked_u32(std::size_t v, const char* what) {
  if (v > std::numeric_limits<std::uint32_t>::max()) {
    throw IoError(std::string("dataset too large: ") + what);
  }
  return static_cast<std::uint32_t>(v);
}

std::string header(std::size_t n, std::size_t m, std::size_t d,
                   DatasetKind kind) {
  std::string buf;
  buf.append(kMagic, 4);
  put_u32(buf, checked_u32(n, "n"));
  put_u32(buf, checked_u32(m, "m"));
  put_u32(buf, checked_u32(d, "d"));
  buf.push_back(static_cast<char>(kind));
  return buf;
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + path);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("short write: " + path);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open: " + path);
  std::string bytes((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("read failure: " + path);
  return bytes;
}

}  // namespace

void save_dataset(const std::string& path, const UserDataset& dataset) {
  dataset.validate();
  std::string buf = header(dataset.n, dataset.m, dataset.d, DatasetKind::kReal);
  buf.reserve(buf.size() + dataset.data.size() * 8);
  for (double x : dataset.data) {
    put_u64(buf, std::bit_cast<std::uint64_t>(x));
  }
  write_file(path, buf);
}

void save_dataset(const std::string& path, const DiscreteSamples& samples) {
  samples.validate();
  std::string buf =
      header(samples.n, samples.m, samples.d, DatasetKind::kCategorical);
  buf.reserve(buf.size() + samples.data.size() * 4);
  for (std::uint32_t c : samples.data) put_u32(buf, c);
  write_file(path, buf);
}

LoadedDataset load_dataset(const std::string& path) {
  const std::string bytes = read_file(path);
  if (bytes.size() < kHeaderSize) throw IoError("truncated header: " + path);
  if (std::memcmp(bytes.data(), kMagic, 4) != 0) {
    throw IoError("bad magic: " + path);
  }
  const auto* p = reinterpret_cast<const unsigned char*>(bytes.data());
  const std::uint64_t n = get_u32(p + 4);
  const std::uint64_t m = get_u32(p + 8);
  const std::uint64_t d = get_u32(p + 12);
  const std::uint8_t kind = p[16];
  if (n == 0 || m == 0 || d == 0) throw IoError("zero dimension: " + path);
  if (kind > 1) throw IoError("unknown dataset kind: " + path);

  LoadedDataset out;
  out.kind = static_cast<DatasetKind>(kind);
  if (out.kind == DatasetKind::kReal) {
    const std::uint64_t entries = n * m * d;
    if (entries > kMaxEntries / 8) throw IoError("payload too large: " + path);
    if (bytes.size() != kHeaderSize + entries * 8) {
      throw IoError("payload size mismatch: " + path);
    }
    out.real.n = n;
    out.real.m = m;
    out.real.d = d;
    out.real.data.resize(entries);
    for (std::uint64_t i = 0; i < entries; ++i) {
      out.real.data[i] =
          std::bit_cast<double>(get_u64(p + kHeaderSize + 8 * i));
    }
  } else {
    const std::uint64_t entries = n * m;
    if (entries > kMaxEntries / 4) throw IoError("payload too large: " + path);
    if (bytes.size() != kHeaderSize + entries * 4) {
      throw IoError("payload size mismatch: " + path);
    }
    out.discrete.n = n;
    out.discrete.m = m;
    out.discrete.d = d;
    out.discrete.data.resize(entries);
    for (std::uint64_t i = 0; i < entries; ++i) {
      out.discrete.data[i] = get_u32(p + kHeaderSize + 4 * i);
    }
    try {
      out.discrete.validate();
    } catch (const std::exception& e) {
      throw IoError(std::string(e.what()) + ": " + path);
    }
  }
  return out;
}

}  // namespace userdp
