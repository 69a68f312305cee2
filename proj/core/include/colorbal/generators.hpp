#pragma once

#include <cstdint>
#include <string>

#include "colorbal/linalg.hpp"
#include "colorbal/model.hpp"

namespace colorbal {

enum class GenKind {
  CubeVertices,
  UnitSphere,
  SharpSigned,
  PairedAntipodal,
  DirichletMixture,
};

std::string to_string(GenKind k);
GenKind gen_kind_from_string(const std::string& s);

struct GenSpec {
  GenKind kind = GenKind::DirichletMixture;
  int d = 2;
  int n = 2;           // ignored by SharpSigned, which uses n = d
  int min_size = 2;
  int max_size = 4;
  NormKind norm = NormKind::Euclidean;
  std::uint64_t seed = 0;
};

struct GeneratedInstance {
  Instance instance;
  Coefficients witness;  // feasible point with V lambda = 0
};

// Deterministic in the spec: identical spec gives a bit-identical instance.
// The returned instance always validates and the witness satisfies
// ||V lambda||_inf <= 1e-10 by construction.
GeneratedInstance generate(const GenSpec& spec);

}  // namespace colorbal
