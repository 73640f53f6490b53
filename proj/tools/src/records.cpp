#include "records.hpp"

#include <cmath>
#include <stdexcept>

#include "userdp/dataset_io.hpp"

namespace cli {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double quantile(const std::vector<double>& sorted, double p) {
  if (sorted.empty()) return std::nan("");
  if (sorted.size() == 1) return sorted.front();
  const double pos = p * double(sorted.size() - 1);
  const auto lo = std::size_t(pos);
  if (lo + 1 >= sorted.size()) return sorted.back();
  const double frac = pos - double(lo);
  return sorted[lo] * (1.0 - frac) + sorted[lo + 1] * frac;
}

OutputSink::OutputSink(const std::string& path) {
  if (path.empty() || path == "-") {
    to_stdout_ = true;
    return;
  }
  file_.open(path, std::ios::binary | std::ios::trunc);
  if (!file_) {
    throw userdp::IoError("cannot open output file: " + path);
  }
}

std::ostream& OutputSink::stream() { return to_stdout_ ? std::cout : file_; }

json budget_json(double eps, double delta) {
  return json{{"eps", eps}, {"delta", delta}};
}

void write_sidecar(const std::string& dataset_path, const json& spec,
                   const userdp::Point& true_mean) {
  json side;
  side["spec"] = spec;
  side["true_mean"] = true_mean;
  std::ofstream out(dataset_path + ".json", std::ios::binary | std::ios::trunc);
  if (!out) {
    throw userdp::IoError("cannot open sidecar for writing: " + dataset_path +
                          ".json");
  }
  out << side.dump() << "\n";
}

std::optional<Sidecar> load_sidecar(const std::string& dataset_path) {
  std::ifstream in(dataset_path + ".json", std::ios::binary);
  if (!in) return std::nullopt;
  json side;
  try {
    in >> side;
  } catch (const json::exception& e) {
    throw userdp::IoError("bad sidecar " + dataset_path + ".json: " + e.what());
  }
  Sidecar result;
  result.spec = side.value("spec", json::object());
  if (side.contains("true_mean")) {
    result.true_mean = side["true_mean"].get<userdp::Point>();
  }
  return result;
}

json spec_json(const userdp::DataSpec& spec) {
  json j;
  j["n"] = spec.n;
  j["m"] = spec.m;
  j["d"] = spec.d;
  j["family"] = userdp::family_name(spec.family);
  j["r"] = spec.r;
  j["rho"] = spec.rho;
  j["mean"] = spec.mean;
  j["probs"] = spec.probs;
  j["seed"] = spec.seed;
  return j;
}

}  // namespace cli
