#pragma once

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "userdp/geometry.hpp"
#include "userdp/synthdata.hpp"

namespace cli {

using json = nlohmann::ordered_json;

// %.17g round-trips every double; the CSV side of a run must agree with the
// JSON side bit for bit.
std::string fmt17(double v);

// Linear interpolation between order statistics; input must be sorted.
double quantile(const std::vector<double>& sorted, double p);

// Writes to a file, or to stdout when path is "-" or empty.
class OutputSink {
 public:
  explicit OutputSink(const std::string& path);
  std::ostream& stream();

 private:
  std::ofstream file_;
  bool to_stdout_ = false;
};

json budget_json(double eps, double delta);

// Dataset sidecar: the generating spec plus the population mean, written
// next to the binary file as <path>.json.
struct Sidecar {
  json spec;
  userdp::Point true_mean;
};

void write_sidecar(const std::string& dataset_path, const json& spec,
                   const userdp::Point& true_mean);
std::optional<Sidecar> load_sidecar(const std::string& dataset_path);

json spec_json(const userdp::DataSpec& spec);

}  // namespace cli
