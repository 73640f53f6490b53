#pragma once

#include <cstdint>
#include <vector>

#include "userdp/random.hpp"
#include "userdp/userlevel.hpp"

namespace userdp {

enum class Family {
  kUniformBall,
  kGaussianClipped,
  kPointMass,
  kDiscrete,
};

const char* family_name(Family family);
Family family_from_name(const std::string& name);

// Every continuous family keeps all samples inside B(mean, r): user centers
// sit on a sphere of radius rho * r / sqrt(m) around the mean and per-sample
// noise fills the remaining radius, so user means concentrate at the
// r / sqrt(m) scale when rho is order one.
struct DataSpec {
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t d = 0;
  Family family = Family::kUniformBall;
  double r = 1.0;
  double rho = 0.0;
  Point mean;                 // empty means origin
  std::vector<double> probs;  // kDiscrete only, must sum to 1
  std::uint64_t seed = 1;

  void validate() const;
};

UserDataset generate(const DataSpec& spec);
DiscreteSamples generate_discrete(const DataSpec& spec);

enum class Adversary {
  kFarCluster,
  kMirror,
  kScatter,
};

const char* adversary_name(Adversary strategy);
Adversary adversary_from_name(const std::string& name);

struct AdversarySpec {
  double fraction = 0.0;
  Adversary strategy = Adversary::kFarCluster;
  Point target;                 // kFarCluster / kScatter center, empty = origin
  double scatter_radius = 1.0;  // kScatter only
  std::uint64_t seed = 1;

  void validate() const;
};

// Replaces floor(fraction * n) users, chosen uniformly, in place. Mirror
// reflects through the grand mean taken before any corruption. Returns the
// corrupted user indices, sorted.
std::vector<std::size_t> corrupt(UserDataset& dataset,
                                 const AdversarySpec& spec);

}  // namespace userdp
