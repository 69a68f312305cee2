#include "colorbal/generators.hpp"

#include <algorithm>
#include <cmath>

namespace colorbal {

std::string to_string(GenKind k) {
  switch (k) {
    case GenKind::CubeVertices: return "cube";
    case GenKind::UnitSphere: return "sphere";
    case GenKind::SharpSigned: return "sharp";
    case GenKind::PairedAntipodal: return "antipodal";
    case GenKind::DirichletMixture: return "dirichlet";
  }
  throw PreconditionError("unknown generator kind");
}

GenKind gen_kind_from_string(const std::string& s) {
  if (s == "cube") return GenKind::CubeVertices;
  if (s == "sphere") return GenKind::UnitSphere;
  if (s == "sharp") return GenKind::SharpSigned;
  if (s == "antipodal") return GenKind::PairedAntipodal;
  if (s == "dirichlet") return GenKind::DirichletMixture;
  throw PreconditionError("unknown generator kind: " + s);
}

namespace {

Eigen::VectorXd random_unit(int d, Rng& rng) {
  Eigen::VectorXd v(d);
  double len = 0.0;
  do {
    for (int i = 0; i < d; ++i) v[i] = rng.next_normal();
    len = v.norm();
  } while (len < 1e-12);
  return v / len;
}

// Random cube vertex, scaled into the unit ball of the requested norm.
Eigen::VectorXd random_vertex(int d, NormKind norm, Rng& rng) {
  Eigen::VectorXd v(d);
  for (int i = 0; i < d; ++i) v[i] = rng.next_double() < 0.5 ? -1.0 : 1.0;
  if (norm == NormKind::Euclidean) v /= std::sqrt(double(d));
  return v;
}

// Random point of the ball scaled by `margin`.
Eigen::VectorXd random_in_ball(int d, NormKind norm, double margin, Rng& rng) {
  if (norm == NormKind::Maximum) {
    Eigen::VectorXd v(d);
    for (int i = 0; i < d; ++i) v[i] = margin * (2.0 * rng.next_double() - 1.0);
    return v;
  }
  return margin * rng.next_double() * random_unit(d, rng);
}

int sample_size(int lo, int hi, Rng& rng) {
  if (lo > hi) std::swap(lo, hi);
  return lo + static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
}

GeneratedInstance antipodal_based(const GenSpec& spec, bool extras, Rng& rng) {
  std::vector<std::vector<Eigen::VectorXd>> families;
  std::vector<double> witness;
  auto sample = [&](Rng& r) {
    switch (spec.kind) {
      case GenKind::CubeVertices: return random_vertex(spec.d, spec.norm, r);
      case GenKind::UnitSphere: return random_unit(spec.d, r);
      default: return spec.norm == NormKind::Euclidean
                          ? random_unit(spec.d, r)
                          : random_in_ball(spec.d, spec.norm, 1.0, r);
    }
  };
  for (int f = 0; f < spec.n; ++f) {
    int size = extras ? std::max(2, sample_size(spec.min_size, spec.max_size, rng)) : 2;
    std::vector<Eigen::VectorXd> fam;
    Eigen::VectorXd v = sample(rng);
    fam.push_back(v);
    fam.push_back(-v);
    witness.push_back(0.5);
    witness.push_back(0.5);
    for (int j = 2; j < size; ++j) {
      fam.push_back(sample(rng));
      witness.push_back(0.0);
    }
    families.push_back(std::move(fam));
  }
  Instance inst(spec.d, spec.norm, families);
  Eigen::VectorXd w = Eigen::Map<Eigen::VectorXd>(witness.data(), witness.size());
  Coefficients wit(inst.layout(), std::move(w));
  return {std::move(inst), std::move(wit)};
}

GeneratedInstance dirichlet_mixture(const GenSpec& spec, Rng& rng) {
  const int d = spec.d;
  const int n = spec.n;
  std::vector<std::vector<Eigen::VectorXd>> families(n);
  std::vector<std::vector<double>> lambdas(n);

  for (int f = 0; f < n; ++f) {
    int size = std::max(1, sample_size(spec.min_size, spec.max_size, rng));
    // Flat Dirichlet weights via normalized exponentials.
    double total = 0.0;
    for (int j = 0; j < size; ++j) {
      families[f].push_back(random_in_ball(d, spec.norm, 0.8, rng));
      double e = -std::log(rng.next_double());
      lambdas[f].push_back(e);
      total += e;
    }
    for (double& w : lambdas[f]) w /= total;
  }

  // Cancel the mixture drift by pulling every member of every family back by
  // drift/n; the weighted sum then vanishes identically. A single global
  // rescale restores ball membership without disturbing the cancellation.
  Eigen::VectorXd drift = Eigen::VectorXd::Zero(d);
  for (int f = 0; f < n; ++f)
    for (size_t j = 0; j < families[f].size(); ++j)
      drift += lambdas[f][j] * families[f][j];
  Eigen::VectorXd shift = drift / double(n);
  double max_norm = 0.0;
  for (auto& fam : families)
    for (auto& v : fam) {
      v -= shift;
      max_norm = std::max(max_norm, vector_norm(v, spec.norm));
    }
  if (max_norm > 1.0)
    for (auto& fam : families)
      for (auto& v : fam) v /= max_norm;

  Instance inst(d, spec.norm, families);
  Eigen::VectorXd w(inst.total_members());
  int idx = 0;
  for (int f = 0; f < n; ++f)
    for (double lam : lambdas[f]) w[idx++] = lam;
  Coefficients wit(inst.layout(), std::move(w));
  return {std::move(inst), std::move(wit)};
}

}  // namespace

GeneratedInstance generate(const GenSpec& spec) {
  if (spec.d < 1 || spec.n < 1)
    throw PreconditionError("generator needs d >= 1 and n >= 1");
  if (spec.min_size < 1 || spec.max_size < spec.min_size)
    throw PreconditionError("generator needs 1 <= min_size <= max_size");
  Rng rng(spec.seed);

  GeneratedInstance out = [&]() -> GeneratedInstance {
    switch (spec.kind) {
      case GenKind::SharpSigned: {
        std::vector<std::vector<Eigen::VectorXd>> families;
        std::vector<double> w;
        for (int i = 0; i < spec.d; ++i) {
          Eigen::VectorXd e = Eigen::VectorXd::Unit(spec.d, i);
          families.push_back({e, -e});
          w.push_back(0.5);
          w.push_back(0.5);
        }
        Instance inst(spec.d, spec.norm, families);
        Eigen::VectorXd wvec = Eigen::Map<Eigen::VectorXd>(w.data(), w.size());
        Coefficients wit(inst.layout(), std::move(wvec));
        return {std::move(inst), std::move(wit)};
      }
      case GenKind::PairedAntipodal:
        return antipodal_based(spec, /*extras=*/false, rng);
      case GenKind::CubeVertices:
      case GenKind::UnitSphere:
        return antipodal_based(spec, /*extras=*/true, rng);
      case GenKind::DirichletMixture:
        return dirichlet_mixture(spec, rng);
    }
    throw PreconditionError("unknown generator kind");
  }();

  if (!validate_instance(out.instance).ok())
    throw Error("generated instance failed validation");
  if (!out.witness.simplex_violations().empty())
    throw Error("generated witness left the coefficient polytope");
  double residual =
      (out.instance.matrix() * out.witness.values()).lpNorm<Eigen::Infinity>();
  if (residual > 1e-10)
    throw Error("generated witness does not cancel");
  return out;
}

}  // namespace colorbal
