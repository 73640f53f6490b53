#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <string>

#include "doctest.h"
#include "userdp/dataset_io.hpp"

using namespace userdp;

namespace {

std::string temp_path(const char* name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

struct FileGuard {
  std::string path;
  ~FileGuard() { std::remove(path.c_str()); }
};

}  // namespace

TEST_SUITE("dataset_io") {

TEST_CASE("real dataset round-trips bit for bit") {
  UserDataset ds;
  ds.n = 2;
  ds.m = 3;
  ds.d = 2;
  ds.data = {0.0,  -0.0, 1.5,    -2.25,
             1e-308, std::numeric_limits<double>::infinity(),
             3.14159, -1e300, 0.1, 0.2, 0.3, 0.4};
  const std::string path = temp_path("udp_io_real.bin");
  FileGuard guard{path};
  save_dataset(path, ds);
  const LoadedDataset back = load_dataset(path);
  REQUIRE(back.kind == DatasetKind::kReal);
  CHECK(back.real.n == 2);
  CHECK(back.real.m == 3);
  CHECK(back.real.d == 2);
  REQUIRE(back.real.data.size() == ds.data.size());
  for (std::size_t i = 0; i < ds.data.size(); ++i) {
    CHECK(std::bit_cast<std::uint64_t>(back.real.data[i]) ==
          std::bit_cast<std::uint64_t>(ds.data[i]));
  }
}

TEST_CASE("categorical dataset round-trips") {
  DiscreteSamples cat;
  cat.n = 3;
  cat.m = 2;
  cat.d = 5;
  cat.data = {1, 5, 2, 2, 4, 3};
  const std::string path = temp_path("udp_io_cat.bin");
  FileGuard guard{path};
  save_dataset(path, cat);
  const LoadedDataset back = load_dataset(path);
  REQUIRE(back.kind == DatasetKind::kCategorical);
  CHECK(back.discrete.data == cat.data);
  CHECK(back.discrete.d == 5);
}

TEST_CASE("corrupted files are rejected") {
  const std::string path = temp_path("udp_io_bad.bin");
  FileGuard guard{path};

  CHECK_THROWS_AS(load_dataset(temp_path("udp_does_not_exist.bin")), IoError);

  {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << "UDP";
  }
  CHECK_THROWS_AS(load_dataset(path), IoError);  // truncated header

  {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << "XXXX";
    out.write(std::string(13, '\0').c_str(), 13);
  }
  CHECK_THROWS_AS(load_dataset(path), IoError);  // bad magic

  UserDataset ds;
  ds.n = 1;
  ds.m = 1;
  ds.d = 1;
  ds.data = {1.0};
  save_dataset(path, ds);
  {
    std::ifstream in(path, std::ios::binary);
    std::string bytes((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
    bytes.pop_back();
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out.write(bytes.data(), std::streamsize(bytes.size()));
  }
  CHECK_THROWS_AS(load_dataset(path), IoError);  // payload size mismatch

  {
    // kind byte outside {0, 1}
    std::string bytes = "UDP1";
    const char dims[12] = {1, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0};
    bytes.append(dims, 12);
    bytes.push_back(char(7));
    bytes.append(8, '\0');
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out.write(bytes.data(), std::streamsize(bytes.size()));
  }
  CHECK_THROWS_AS(load_dataset(path), IoError);

  {
    // categorical entry above d
    std::string bytes = "UDP1";
    const char dims[12] = {1, 0, 0, 0, 1, 0, 0, 0, 2, 0, 0, 0};
    bytes.append(dims, 12);
    bytes.push_back(char(1));
    const char entry[4] = {9, 0, 0, 0};
    bytes.append(entry, 4);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out.write(bytes.data(), std::streamsize(bytes.size()));
  }
  CHECK_THROWS_AS(load_dataset(path), IoError);
}

TEST_CASE("unwritable destinations raise io errors") {
  UserDataset ds;
  ds.n = 1;
  ds.m = 1;
  ds.d = 1;
  ds.data = {1.0};
  CHECK_THROWS_AS(save_dataset("/no_such_dir_udp/x.bin", ds), IoError);
}

TEST_CASE("the format is little-endian on disk") {
  UserDataset ds;
  ds.n = 1;
  ds.m = 1;
  ds.d = 1;
  ds.data = {1.0};  // bits 0x3FF0000000000000
  const std::string path = temp_path("udp_io_le.bin");
  FileGuard guard{path};
  save_dataset(path, ds);
  std::ifstream in(path, std::ios::binary);
  std::string bytes((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
  REQUIRE(bytes.size() == 17 + 8);
  CHECK(bytes.substr(0, 4) == "UDP1");
  CHECK(static_cast<unsigned char>(bytes[4]) == 1);   // n low byte first
  CHECK(static_cast<unsigned char>(bytes[16]) == 0);  // kind
  CHECK(static_cast<unsigned char>(bytes[17 + 6]) == 0xF0);
  CHECK(static_cast<unsigned char>(bytes[17 + 7]) == 0x3F);
}

}  // TEST_SUITE
