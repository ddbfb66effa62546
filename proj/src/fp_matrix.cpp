#include "sipp/linalg/fp_matrix.hpp"

#include <sstream>

#include "sipp/arith.hpp"
#include "sipp/error.hpp"

namespace sipp {

std::int64_t mod_reduce(std::int64_t a, std::int64_t p) {
  std::int64_t r = a % p;
  return r < 0 ? r + p : r;
}

std::int64_t pow_mod(std::int64_t a, std::int64_t e, std::int64_t p) {
  a = mod_reduce(a, p);
  std::int64_t r = 1 % p;
  while (e > 0) {
    if (e & 1) r = r * a % p;
    a = a * a % p;
    e >>= 1;
  }
  return r;
}

std::int64_t inv_mod(std::int64_t a, std::int64_t p) {
  a = mod_reduce(a, p);
  if (a == 0) throw Error(Errc::NotInvertible, "zero has no inverse mod " + std::to_string(p));
  std::int64_t t = 0, nt = 1, r = p, nr = a;
  while (nr != 0) {
    std::int64_t q = r / nr;
    std::tie(t, nt) = std::pair{nt, t - q * nt};
    std::tie(r, nr) = std::pair{nr, r - q * nr};
  }
  if (r != 1) throw Error(Errc::NotInvertible, "not a unit");
  return mod_reduce(t, p);
}

std::int64_t primitive_root(std::int64_t p) {
  check_field(p);
  if (p == 2) return 1;
  std::vector<std::int64_t> primes;
  std::int64_t n = p - 1;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) {
      primes.push_back(d);
      while (n % d == 0) n /= d;
    }
  if (n > 1) primes.push_back(n);
  for (std::int64_t g = 2; g < p; ++g) {
    bool ok = true;
    for (auto q : primes)
      if (pow_mod(g, (p - 1) / q, p) == 1) {
        ok = false;
        break;
      }
    if (ok) return g;
  }
  throw Error(Errc::PreconditionViolated, "no primitive root");
}

std::int64_t discrete_log(std::int64_t a, std::int64_t p) {
  a = mod_reduce(a, p);
  if (a == 0) throw Error(Errc::NotInvertible, "log of zero");
  std::int64_t g = primitive_root(p);
  std::int64_t x = 1;
  for (std::int64_t k = 0; k < p - 1; ++k) {
    if (x == a) return k;
    x = x * g % p;
  }
  throw Error(Errc::PreconditionViolated, "discrete log failed");
}

void check_field(std::int64_t p) {
  if (p < 2 || p > FpMatrix::kMaxField || !is_prime(static_cast<std::uint64_t>(p)))
    throw Error(Errc::NotPrime, "field characteristic must be a prime below 46341, got " + std::to_string(p));
}

namespace {
void same_field(const FpMatrix& a, const FpMatrix& b) {
  if (a.field() != b.field()) throw Error(Errc::FieldMismatch, "matrices over different fields");
}
}  // namespace

FpMatrix::FpMatrix(std::int64_t p, Eigen::Index rows, Eigen::Index cols) : p_(p), a_(FpEntries::Zero(rows, cols)) {
  check_field(p);
}

FpMatrix::FpMatrix(std::int64_t p, const FpEntries& entries) : p_(p), a_(entries) {
  check_field(p);
  a_ = a_.unaryExpr([p](std::int64_t v) { return mod_reduce(v, p); });
}

FpMatrix::FpMatrix(std::int64_t p, std::initializer_list<std::initializer_list<std::int64_t>> rows) : p_(p) {
  check_field(p);
  const auto r = static_cast<Eigen::Index>(rows.size());
  const auto c = r ? static_cast<Eigen::Index>(rows.begin()->size()) : 0;
  a_ = FpEntries::Zero(r, c);
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    if (static_cast<Eigen::Index>(row.size()) != c) throw Error(Errc::DimensionMismatch, "ragged rows");
    Eigen::Index j = 0;
    for (auto v : row) a_(i, j++) = mod_reduce(v, p);
    ++i;
  }
}

FpMatrix FpMatrix::identity(std::int64_t p, Eigen::Index n) { return FpMatrix(p, FpEntries::Identity(n, n)); }

FpMatrix FpMatrix::scalar(std::int64_t p, Eigen::Index n, std::int64_t c) {
  return FpMatrix(p, FpEntries::Identity(n, n) * mod_reduce(c, p));
}

FpMatrix FpMatrix::block(Eigen::Index i, Eigen::Index j, Eigen::Index r, Eigen::Index c) const {
  FpMatrix out;
  out.p_ = p_;
  out.a_ = a_.block(i, j, r, c);
  return out;
}

void FpMatrix::set_block(Eigen::Index i, Eigen::Index j, const FpMatrix& b) {
  same_field(*this, b);
  a_.block(i, j, b.rows(), b.cols()) = b.a_;
}

FpMatrix FpMatrix::transpose() const {
  FpMatrix out;
  out.p_ = p_;
  out.a_ = a_.transpose();
  return out;
}

bool FpMatrix::is_identity() const { return is_square() && a_ == FpEntries::Identity(rows(), cols()); }

FpMatrix operator*(const FpMatrix& a, const FpMatrix& b) {
  same_field(a, b);
  if (a.cols() != b.rows()) throw Error(Errc::DimensionMismatch, "product shapes");
  FpMatrix out;
  out.p_ = a.p_;
  const std::int64_t p = a.p_;
  out.a_ = (a.a_ * b.a_).unaryExpr([p](std::int64_t v) { return v % p; });
  return out;
}

FpMatrix operator+(const FpMatrix& a, const FpMatrix& b) {
  same_field(a, b);
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error(Errc::DimensionMismatch, "sum shapes");
  FpMatrix out;
  out.p_ = a.p_;
  const std::int64_t p = a.p_;
  out.a_ = (a.a_ + b.a_).unaryExpr([p](std::int64_t v) { return v >= p ? v - p : v; });
  return out;
}

FpMatrix operator-(const FpMatrix& a, const FpMatrix& b) {
  same_field(a, b);
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error(Errc::DimensionMismatch, "difference shapes");
  FpMatrix out;
  out.p_ = a.p_;
  const std::int64_t p = a.p_;
  out.a_ = (a.a_ - b.a_).unaryExpr([p](std::int64_t v) { return v < 0 ? v + p : v; });
  return out;
}

FpMatrix operator*(std::int64_t c, const FpMatrix& a) {
  FpMatrix out;
  out.p_ = a.p_;
  const std::int64_t p = a.p_;
  const std::int64_t cr = mod_reduce(c, p);
  out.a_ = a.a_.unaryExpr([p, cr](std::int64_t v) { return v * cr % p; });
  return out;
}

bool operator==(const FpMatrix& a, const FpMatrix& b) {
  return a.p_ == b.p_ && a.rows() == b.rows() && a.cols() == b.cols() && a.a_ == b.a_;
}

std::string FpMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (Eigen::Index i = 0; i < rows(); ++i) {
    if (i) os << ", ";
    os << '[';
    for (Eigen::Index j = 0; j < cols(); ++j) os << (j ? "," : "") << a_(i, j);
    os << ']';
  }
  os << ']';
  return os.str();
}

Echelon row_echelon(const FpMatrix& a) {
  const std::int64_t p = a.field();
  FpEntries m = a.entries();
  std::vector<Eigen::Index> pivots;
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < m.cols() && r < m.rows(); ++c) {
    Eigen::Index piv = -1;
    for (Eigen::Index i = r; i < m.rows(); ++i)
      if (m(i, c) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    m.row(piv).swap(m.row(r));
    std::int64_t inv = inv_mod(m(r, c), p);
    for (Eigen::Index j = c; j < m.cols(); ++j) m(r, j) = m(r, j) * inv % p;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      std::int64_t f = m(i, c);
      for (Eigen::Index j = c; j < m.cols(); ++j) m(i, j) = mod_reduce(m(i, j) - f * m(r, j), p);
    }
    pivots.push_back(c);
    ++r;
  }
  return {FpMatrix(p, m), pivots};
}

Eigen::Index rank(const FpMatrix& a) { return static_cast<Eigen::Index>(row_echelon(a).pivots.size()); }

FpMatrix nullspace(const FpMatrix& a) {
  Echelon e = row_echelon(a);
  const std::int64_t p = a.field();
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto c : e.pivots) is_pivot[c] = true;
  std::vector<Eigen::Index> free;
  for (Eigen::Index c = 0; c < a.cols(); ++c)
    if (!is_pivot[c]) free.push_back(c);
  FpMatrix n(p, a.cols(), static_cast<Eigen::Index>(free.size()));
  for (std::size_t k = 0; k < free.size(); ++k) {
    n.set(free[k], static_cast<Eigen::Index>(k), 1);
    for (std::size_t r = 0; r < e.pivots.size(); ++r)
      n.set(e.pivots[r], static_cast<Eigen::Index>(k), -e.rref(static_cast<Eigen::Index>(r), free[k]));
  }
  return n;
}

FpMatrix column_basis(const FpMatrix& a) {
  Echelon e = row_echelon(a);
  FpMatrix out(a.field(), a.rows(), static_cast<Eigen::Index>(e.pivots.size()));
  for (std::size_t k = 0; k < e.pivots.size(); ++k) out.set_block(0, static_cast<Eigen::Index>(k), a.col(e.pivots[k]));
  return out;
}

std::optional<FpMatrix> inverse(const FpMatrix& a) {
  if (!a.is_square()) return std::nullopt;
  const Eigen::Index n = a.rows();
  FpMatrix aug(a.field(), n, 2 * n);
  aug.set_block(0, 0, a);
  aug.set_block(0, n, FpMatrix::identity(a.field(), n));
  Echelon e = row_echelon(aug);
  if (static_cast<Eigen::Index>(e.pivots.size()) < n || (n > 0 && e.pivots[n - 1] != n - 1)) return std::nullopt;
  return e.rref.block(0, n, n, n);
}

bool is_invertible(const FpMatrix& a) { return a.is_square() && rank(a) == a.rows(); }

std::optional<FpMatrix> solve(const FpMatrix& a, const FpMatrix& b) {
  if (a.rows() != b.rows()) throw Error(Errc::DimensionMismatch, "solve shapes");
  const Eigen::Index n = a.cols();
  FpMatrix aug(a.field(), a.rows(), n + b.cols());
  aug.set_block(0, 0, a);
  aug.set_block(0, n, b);
  Echelon e = row_echelon(aug);
  FpMatrix x(a.field(), n, b.cols());
  for (std::size_t r = 0; r < e.pivots.size(); ++r) {
    if (e.pivots[r] >= n) return std::nullopt;
    for (Eigen::Index j = 0; j < b.cols(); ++j) x.set(e.pivots[r], j, e.rref(static_cast<Eigen::Index>(r), n + j));
  }
  return x;
}

FpMatrix left_inverse(const FpMatrix& b) {
  // Solve L b = I as b^T L^T = I.
  auto lt = solve(b.transpose(), FpMatrix::identity(b.field(), b.cols()));
  if (!lt) throw Error(Errc::NotInvertible, "matrix has no left inverse");
  return lt->transpose();
}

FpMatrix kron(const FpMatrix& a, const FpMatrix& b) {
  same_field(a, b);
  FpMatrix out(a.field(), a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (a(i, j) != 0) out.set_block(i * b.rows(), j * b.cols(), a(i, j) * b);
  return out;
}

FpMatrix direct_sum(std::span<const FpMatrix> blocks) {
  if (blocks.empty()) throw Error(Errc::DimensionMismatch, "direct sum of nothing");
  Eigen::Index r = 0, c = 0;
  for (const auto& b : blocks) {
    r += b.rows();
    c += b.cols();
  }
  FpMatrix out(blocks[0].field(), r, c);
  r = c = 0;
  for (const auto& b : blocks) {
    out.set_block(r, c, b);
    r += b.rows();
    c += b.cols();
  }
  return out;
}

FpMatrix hstack(std::span<const FpMatrix> blocks) {
  if (blocks.empty()) throw Error(Errc::DimensionMismatch, "hstack of nothing");
  Eigen::Index c = 0;
  for (const auto& b : blocks) {
    if (b.rows() != blocks[0].rows()) throw Error(Errc::DimensionMismatch, "hstack rows");
    c += b.cols();
  }
  FpMatrix out(blocks[0].field(), blocks[0].rows(), c);
  c = 0;
  for (const auto& b : blocks) {
    out.set_block(0, c, b);
    c += b.cols();
  }
  return out;
}

FpMatrix vstack(std::span<const FpMatrix> blocks) {
  if (blocks.empty()) throw Error(Errc::DimensionMismatch, "vstack of nothing");
  Eigen::Index r = 0;
  for (const auto& b : blocks) {
    if (b.cols() != blocks[0].cols()) throw Error(Errc::DimensionMismatch, "vstack cols");
    r += b.rows();
  }
  FpMatrix out(blocks[0].field(), r, blocks[0].cols());
  r = 0;
  for (const auto& b : blocks) {
    out.set_block(r, 0, b);
    r += b.rows();
  }
  return out;
}

FpMatrix random_matrix(std::int64_t p, Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::int64_t> d(0, p - 1);
  FpMatrix m(p, rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m.set(i, j, d(rng));
  return m;
}

FpMatrix random_invertible(std::int64_t p, Eigen::Index n, std::mt19937_64& rng) {
  while (true) {
    FpMatrix m = random_matrix(p, n, n, rng);
    if (is_invertible(m)) return m;
  }
}

}  // namespace sipp
