#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "colorbal/generators.hpp"
#include "colorbal/model.hpp"

namespace colorbal::testing {

inline Instance make_instance(
    int d, NormKind norm,
    const std::vector<std::vector<std::vector<double>>>& fams) {
  std::vector<std::vector<Eigen::VectorXd>> families;
  for (const auto& fam : fams) {
    std::vector<Eigen::VectorXd> members;
    for (const auto& v : fam) {
      Eigen::VectorXd x(d);
      for (int i = 0; i < d; ++i) x[i] = v[i];
      members.push_back(std::move(x));
    }
    families.push_back(std::move(members));
  }
  return Instance(d, norm, families);
}

inline Coefficients coeffs(const Instance& inst,
                           const std::vector<double>& vals) {
  Eigen::VectorXd v(static_cast<int>(vals.size()));
  for (int i = 0; i < v.size(); ++i) v[i] = vals[i];
  return Coefficients(inst.layout(), std::move(v));
}

// Every vertex of {V lambda = 0, family sums 1, lambda >= 0} by enumerating
// independent column subsets of the equality system. Usable for small m only.
inline std::vector<Eigen::VectorXd> enumerate_zero_vertices(
    const Instance& inst) {
  const int m = inst.total_members();
  const int n = inst.families();
  const int d = inst.dimension();
  const int p = n + d;

  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(p, m);
  for (int f = 0; f < n; ++f)
    M.row(f).segment(inst.layout().offset(f), inst.family_size(f)).setOnes();
  M.bottomRows(d) = inst.matrix();
  Eigen::VectorXd b = Eigen::VectorXd::Zero(p);
  b.head(n).setOnes();

  std::vector<Eigen::VectorXd> vertices;
  for (unsigned mask = 1; mask < (1u << m); ++mask) {
    std::vector<int> cols;
    for (int j = 0; j < m; ++j)
      if (mask & (1u << j)) cols.push_back(j);
    if (static_cast<int>(cols.size()) > p) continue;

    Eigen::MatrixXd sub(p, static_cast<int>(cols.size()));
    for (size_t j = 0; j < cols.size(); ++j) sub.col(j) = M.col(cols[j]);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(sub);
    lu.setThreshold(1e-10);
    if (lu.rank() < static_cast<int>(cols.size())) continue;

    Eigen::VectorXd x = sub.colPivHouseholderQr().solve(b);
    if ((sub * x - b).lpNorm<Eigen::Infinity>() > 1e-9) continue;
    if ((x.array() < -1e-10).any()) continue;

    Eigen::VectorXd lambda = Eigen::VectorXd::Zero(m);
    for (size_t j = 0; j < cols.size(); ++j)
      lambda[cols[j]] = std::max(0.0, x[j]);

    bool fresh = true;
    for (const Eigen::VectorXd& v : vertices)
      if ((v - lambda).lpNorm<Eigen::Infinity>() <= 1e-8) {
        fresh = false;
        break;
      }
    if (fresh) vertices.push_back(std::move(lambda));
  }
  return vertices;
}

// Deterministic mixed-kind schedule used by the acceptance and statistical
// suites.
inline GenSpec schedule_spec(int i, NormKind norm, int max_d, int max_n,
                             int min_size, int max_size,
                             std::uint64_t seed_base) {
  constexpr GenKind kinds[] = {GenKind::CubeVertices, GenKind::UnitSphere,
                               GenKind::SharpSigned, GenKind::PairedAntipodal,
                               GenKind::DirichletMixture};
  GenSpec spec;
  spec.kind = kinds[i % 5];
  spec.d = 1 + (i * 7 + 3) % max_d;
  spec.n = 1 + (i * 11 + 5) % max_n;
  spec.min_size = min_size;
  spec.max_size = max_size;
  spec.norm = norm;
  spec.seed = seed_base + static_cast<std::uint64_t>(i);
  return spec;
}

}  // namespace colorbal::testing
