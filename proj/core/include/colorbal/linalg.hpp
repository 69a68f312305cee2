#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

namespace colorbal {

// Counter-based generator: identical seed gives an identical stream,
// bit-exact across runs. Normal deviates come from Box-Muller pairs.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed) {}

  // Independent stream for a worker, derived from (master seed, index).
  Rng derived(std::uint64_t stream) const;

  std::uint64_t next_u64();
  // Uniform on (0, 1).
  double next_double();
  double next_normal();

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_ = 0;
  std::uint64_t counter_ = 0;
  bool has_cached_ = false;
  double cached_ = 0.0;
};

// A linear subspace of R^m held as an orthonormal column basis, together
// with the constraint normals it was built to annihilate.
class Subspace {
 public:
  Subspace(int ambient_dim, Eigen::MatrixXd basis, Eigen::MatrixXd normals);

  // All of R^m (standard basis).
  static Subspace full(int ambient_dim);

  int ambient_dim() const { return ambient_; }
  int dim() const { return static_cast<int>(basis_.cols()); }
  const Eigen::MatrixXd& basis() const { return basis_; }
  const Eigen::MatrixXd& recorded_normals() const { return normals_; }

  // Largest |<b_i, b_j> - delta_ij| over basis pairs.
  double orthonormality_defect() const;
  // Largest |<normal, b_j>| over recorded normals and basis vectors.
  double annihilation_defect() const;

 private:
  int ambient_;
  Eigen::MatrixXd basis_;    // m x r, orthonormal columns
  Eigen::MatrixXd normals_;  // m x p
};

// Orthonormal basis of {x in `within` : <x, z> = 0 for all z in normals}.
// Rank decisions use kRankTol on residual length; the basis is built by
// two-pass modified Gram-Schmidt.
Subspace null_space_basis(const std::vector<Eigen::VectorXd>& normals,
                          const Subspace& within);

// Orthogonal projection of u onto the subspace.
Eigen::VectorXd project(const Subspace& sub, const Eigen::VectorXd& u);

// Standard Gaussian on the subspace: sum of g_j b_j with g_j iid N(0,1).
Eigen::VectorXd gaussian_on(const Subspace& sub, Rng& rng);
// Allocation-free variant for hot loops; `out` must have ambient length.
void gaussian_on(const Subspace& sub, Rng& rng, Eigen::VectorXd& out);

inline constexpr double kRankTol = 1e-8;
inline constexpr double kOrthonormalityTol = 1e-10;

}  // namespace colorbal
