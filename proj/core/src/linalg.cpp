#include "colorbal/linalg.hpp"

#include <cmath>
#include <numbers>

#include "colorbal/errors.hpp"

namespace colorbal {

namespace {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

Rng Rng::derived(std::uint64_t stream) const {
  return Rng(splitmix64(seed_ ^ splitmix64(stream + 0x51a9b1c0de5f37ULL)));
}

std::uint64_t Rng::next_u64() { return splitmix64(seed_ ^ splitmix64(++counter_)); }

double Rng::next_double() {
  // 53 mantissa bits, offset by half an ulp so the value is never 0.
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double Rng::next_normal() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_;
  }
  double u1 = next_double();
  double u2 = next_double();
  double r = std::sqrt(-2.0 * std::log(u1));
  double angle = 2.0 * std::numbers::pi * u2;
  cached_ = r * std::sin(angle);
  has_cached_ = true;
  return r * std::cos(angle);
}

Subspace::Subspace(int ambient_dim, Eigen::MatrixXd basis,
                   Eigen::MatrixXd normals)
    : ambient_(ambient_dim), basis_(std::move(basis)),
      normals_(std::move(normals)) {
  if (basis_.size() > 0 && basis_.rows() != ambient_)
    throw PreconditionError("basis rows do not match ambient dimension");
  if (basis_.size() == 0) basis_.resize(ambient_, 0);
  if (normals_.size() == 0) normals_.resize(ambient_, 0);
}

Subspace Subspace::full(int ambient_dim) {
  return Subspace(ambient_dim,
                  Eigen::MatrixXd::Identity(ambient_dim, ambient_dim),
                  Eigen::MatrixXd(ambient_dim, 0));
}

double Subspace::orthonormality_defect() const {
  if (dim() == 0) return 0.0;
  Eigen::MatrixXd gram = basis_.transpose() * basis_;
  gram -= Eigen::MatrixXd::Identity(dim(), dim());
  return gram.cwiseAbs().maxCoeff();
}

double Subspace::annihilation_defect() const {
  if (dim() == 0 || normals_.cols() == 0) return 0.0;
  return (normals_.transpose() * basis_).cwiseAbs().maxCoeff();
}

namespace {

// Orthogonalize v against the columns of Q twice (drift from a single pass
// compounds over the thousands of rebuilds the walk performs).
void orthogonalize_twice(const Eigen::MatrixXd& Q, int cols,
                         Eigen::VectorXd& v) {
  for (int pass = 0; pass < 2; ++pass)
    for (int j = 0; j < cols; ++j)
      v -= Q.col(j).dot(v) * Q.col(j);
}

}  // namespace

Subspace null_space_basis(const std::vector<Eigen::VectorXd>& normals,
                          const Subspace& within) {
  const int m = within.ambient_dim();
  const int r = within.dim();
  const Eigen::MatrixXd& B = within.basis();

  // Coordinates of the normals inside `within`, reduced to an orthonormal
  // spanning set. Residuals below kRankTol mean the normal adds nothing.
  Eigen::MatrixXd span(r, std::min<int>(r, static_cast<int>(normals.size())));
  int rank = 0;
  for (const Eigen::VectorXd& z : normals) {
    if (z.size() != m)
      throw PreconditionError("normal length does not match ambient dim");
    if (rank == r) break;
    Eigen::VectorXd c = B.transpose() * z;
    orthogonalize_twice(span, rank, c);
    double len = c.norm();
    if (len > kRankTol) span.col(rank++) = c / len;
  }

  // Complete to a basis of the coordinate space; the completion columns are
  // the null-space directions. Pivoted modified Gram-Schmidt: residuals are
  // updated after every take, so each pick reflects what is actually left.
  const int out_dim = r - rank;
  Eigen::MatrixXd complement(r, out_dim);
  int taken = 0;
  std::vector<Eigen::VectorXd> residuals(r);
  std::vector<char> used(r, 0);
  for (int i = 0; i < r; ++i) {
    residuals[i] = Eigen::VectorXd::Unit(r, i);
    orthogonalize_twice(span, rank, residuals[i]);
  }
  while (taken < out_dim) {
    int best = -1;
    double best_len = -1.0;
    for (int i = 0; i < r; ++i) {
      if (used[i]) continue;
      double len = residuals[i].norm();
      if (len > best_len + 1e-15) {
        best_len = len;
        best = i;
      }
    }
    Eigen::VectorXd v = residuals[best];
    orthogonalize_twice(complement, taken, v);
    double len = v.norm();
    if (len <= kRankTol)
      throw NumericallyDegenerateError("null space completion lost rank");
    Eigen::VectorXd unit = v / len;
    complement.col(taken++) = unit;
    used[best] = 1;
    for (int i = 0; i < r; ++i)
      if (!used[i]) residuals[i] -= unit.dot(residuals[i]) * unit;
  }

  Eigen::MatrixXd basis = B * complement;

  Eigen::MatrixXd recorded(m, within.recorded_normals().cols() +
                                  static_cast<int>(normals.size()));
  recorded.leftCols(within.recorded_normals().cols()) =
      within.recorded_normals();
  for (int i = 0; i < static_cast<int>(normals.size()); ++i)
    recorded.col(within.recorded_normals().cols() + i) = normals[i];

  return Subspace(m, std::move(basis), std::move(recorded));
}

Eigen::VectorXd project(const Subspace& sub, const Eigen::VectorXd& u) {
  if (sub.dim() == 0) return Eigen::VectorXd::Zero(sub.ambient_dim());
  return sub.basis() * (sub.basis().transpose() * u);
}

void gaussian_on(const Subspace& sub, Rng& rng, Eigen::VectorXd& out) {
  out.setZero();
  const Eigen::MatrixXd& B = sub.basis();
  for (int j = 0; j < sub.dim(); ++j) out += rng.next_normal() * B.col(j);
}

Eigen::VectorXd gaussian_on(const Subspace& sub, Rng& rng) {
  Eigen::VectorXd out(sub.ambient_dim());
  gaussian_on(sub, rng, out);
  return out;
}

}  // namespace colorbal
