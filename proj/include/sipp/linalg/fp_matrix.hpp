#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace sipp {

using FpEntries = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

std::int64_t mod_reduce(std::int64_t a, std::int64_t p);
std::int64_t pow_mod(std::int64_t a, std::int64_t e, std::int64_t p);
std::int64_t inv_mod(std::int64_t a, std::int64_t p);
// Smallest generator of F_p^x.
std::int64_t primitive_root(std::int64_t p);
// log base the smallest primitive root, in Z/(p-1).
std::int64_t discrete_log(std::int64_t a, std::int64_t p);

// Dense matrix over the prime field F_p, entries kept in [0, p).
class FpMatrix {
 public:
  static constexpr std::int64_t kMaxField = 46340;

  FpMatrix() = default;
  FpMatrix(std::int64_t p, Eigen::Index rows, Eigen::Index cols);
  FpMatrix(std::int64_t p, const FpEntries& entries);
  FpMatrix(std::int64_t p, std::initializer_list<std::initializer_list<std::int64_t>> rows);

  static FpMatrix identity(std::int64_t p, Eigen::Index n);
  static FpMatrix zero(std::int64_t p, Eigen::Index rows, Eigen::Index cols) { return FpMatrix(p, rows, cols); }
  static FpMatrix scalar(std::int64_t p, Eigen::Index n, std::int64_t c);

  std::int64_t field() const { return p_; }
  Eigen::Index rows() const { return a_.rows(); }
  Eigen::Index cols() const { return a_.cols(); }
  bool is_square() const { return rows() == cols(); }
  std::int64_t operator()(Eigen::Index i, Eigen::Index j) const { return a_(i, j); }
  void set(Eigen::Index i, Eigen::Index j, std::int64_t v) { a_(i, j) = mod_reduce(v, p_); }
  const FpEntries& entries() const { return a_; }

  FpMatrix block(Eigen::Index i, Eigen::Index j, Eigen::Index r, Eigen::Index c) const;
  void set_block(Eigen::Index i, Eigen::Index j, const FpMatrix& b);
  FpMatrix col(Eigen::Index j) const { return block(0, j, rows(), 1); }
  FpMatrix transpose() const;
  bool is_zero() const { return a_.isZero(); }
  bool is_identity() const;

  friend FpMatrix operator*(const FpMatrix& a, const FpMatrix& b);
  friend FpMatrix operator+(const FpMatrix& a, const FpMatrix& b);
  friend FpMatrix operator-(const FpMatrix& a, const FpMatrix& b);
  friend FpMatrix operator*(std::int64_t c, const FpMatrix& a);
  friend bool operator==(const FpMatrix& a, const FpMatrix& b);

  std::string to_string() const;

 private:
  std::int64_t p_ = 2;
  FpEntries a_;
};

// Reduced row echelon form and pivot columns.
struct Echelon {
  FpMatrix rref;
  std::vector<Eigen::Index> pivots;
};
Echelon row_echelon(const FpMatrix& a);

Eigen::Index rank(const FpMatrix& a);
// Columns form a basis of {x : a x = 0}.
FpMatrix nullspace(const FpMatrix& a);
// Columns form a basis of the column space, chosen among the columns of a.
FpMatrix column_basis(const FpMatrix& a);
std::optional<FpMatrix> inverse(const FpMatrix& a);
bool is_invertible(const FpMatrix& a);
// Some X with a X = b.
std::optional<FpMatrix> solve(const FpMatrix& a, const FpMatrix& b);
// L with L b = id, for b of full column rank.
FpMatrix left_inverse(const FpMatrix& b);

// Blocks (i, j) = a(i, j) · b
FpMatrix kron(const FpMatrix& a, const FpMatrix& b);
FpMatrix direct_sum(std::span<const FpMatrix> blocks);
FpMatrix hstack(std::span<const FpMatrix> blocks);
FpMatrix vstack(std::span<const FpMatrix> blocks);

FpMatrix random_matrix(std::int64_t p, Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng);
FpMatrix random_invertible(std::int64_t p, Eigen::Index n, std::mt19937_64& rng);

void check_field(std::int64_t p);

}  // namespace sipp
