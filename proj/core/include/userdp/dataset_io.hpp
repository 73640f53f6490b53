#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "userdp/userlevel.hpp"

namespace userdp {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Binary container, little-endian regardless of host:
//   "UDP1" | u32 n | u32 m | u32 d | u8 kind | payload
// kind 0: n*m*d f64 values, row-major (user, sample, coordinate).
// kind 1: n*m u32 categories in 1..d.
enum class DatasetKind : std::uint8_t { kReal = 0, kCategorical = 1 };

struct LoadedDataset {
  DatasetKind kind = DatasetKind::kReal;
  UserDataset real;          // kind == kReal
  DiscreteSamples discrete;  // kind == kCategorical
};

void save_dataset(const std::string& path, const UserDataset& dataset);
void save_dataset(const std::string& path, const DiscreteSamples& samples);

// Throws IoError on anything wrong with the file: unreadable, bad magic,
// truncated or oversized payload, out-of-range categories.
LoadedDataset load_dataset(const std::string& path);

}  // namespace userdp
