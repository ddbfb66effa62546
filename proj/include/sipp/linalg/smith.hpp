#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Core>
#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/eigen.hpp>

#include "sipp/error.hpp"

namespace sipp {

using BigInt = boost::multiprecision::cpp_int;

template <class Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

namespace checked {

inline std::int64_t add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw Error(Errc::Overflow, "int64 addition");
  return r;
}
inline std::int64_t sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw Error(Errc::Overflow, "int64 subtraction");
  return r;
}
inline std::int64_t mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error(Errc::Overflow, "int64 multiplication");
  return r;
}
inline std::int64_t neg(std::int64_t a) { return sub(0, a); }

inline BigInt add(const BigInt& a, const BigInt& b) { return a + b; }
inline BigInt sub(const BigInt& a, const BigInt& b) { return a - b; }
inline BigInt mul(const BigInt& a, const BigInt& b) { return a * b; }
inline BigInt neg(const BigInt& a) { return -a; }

inline std::int64_t abs(std::int64_t a) { return a < 0 ? neg(a) : a; }
inline BigInt abs(const BigInt& a) { return a < 0 ? BigInt(-a) : a; }

// Nonnegative remainder of a mod m (m > 0).
template <class S>
S mod(const S& a, const S& m) {
  S r = a % m;
  if (r < 0) r = add(r, m);
  return r;
}

template <class S>
Mat<S> matmul(const Mat<S>& a, const Mat<S>& b) {
  if (a.cols() != b.rows()) throw Error(Errc::DimensionMismatch, "product shapes");
  Mat<S> out(a.rows(), b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < b.cols(); ++j) {
      S acc = 0;
      for (Eigen::Index k = 0; k < a.cols(); ++k)
        if (a(i, k) != 0 && b(k, j) != 0) acc = add(acc, mul(a(i, k), b(k, j)));
      out(i, j) = acc;
    }
  return out;
}

}  // namespace checked

template <class To, class From>
Mat<To> convert(const Mat<From>& m) {
  Mat<To> out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if constexpr (std::is_same_v<To, std::int64_t> && std::is_same_v<From, BigInt>) {
        if (m(i, j) > INT64_MAX || m(i, j) < INT64_MIN) throw Error(Errc::Overflow, "entry exceeds int64");
        out(i, j) = static_cast<std::int64_t>(m(i, j));
      } else {
        out(i, j) = To(m(i, j));
      }
    }
  return out;
}

// M = U D V with U, V unimodular and D diagonal, d1 | d2 | ... (nonnegative).
// Also P = U^-1 and Q = V^-1, so that P M Q = D.
template <class Scalar>
struct SmithForm {
  Mat<Scalar> U, D, V;
  Mat<Scalar> P, Q;
  Eigen::Index rank = 0;

  std::vector<Scalar> diagonal() const {
    std::vector<Scalar> d;
    for (Eigen::Index i = 0; i < rank; ++i) d.push_back(D(i, i));
    return d;
  }
};

template <class Scalar>
SmithForm<Scalar> smith_normal_form(const Mat<Scalar>& m) {
  using namespace checked;
  const Eigen::Index R = m.rows(), C = m.cols();
  Mat<Scalar> A = m;
  Mat<Scalar> P = Mat<Scalar>::Identity(R, R), Pinv = Mat<Scalar>::Identity(R, R);
  Mat<Scalar> Q = Mat<Scalar>::Identity(C, C), Qinv = Mat<Scalar>::Identity(C, C);

  // row_i += c row_j (and inverse bookkeeping)
  auto row_add = [&](Eigen::Index i, Eigen::Index j, const Scalar& c) {
    if (c == 0) return;
    for (Eigen::Index k = 0; k < C; ++k) A(i, k) = add(A(i, k), mul(c, A(j, k)));
    for (Eigen::Index k = 0; k < R; ++k) P(i, k) = add(P(i, k), mul(c, P(j, k)));
    for (Eigen::Index k = 0; k < R; ++k) Pinv(k, j) = sub(Pinv(k, j), mul(c, Pinv(k, i)));
  };
  auto row_swap = [&](Eigen::Index i, Eigen::Index j) {
    if (i == j) return;
    A.row(i).swap(A.row(j));
    P.row(i).swap(P.row(j));
    Pinv.col(i).swap(Pinv.col(j));
  };
  auto row_neg = [&](Eigen::Index i) {
    for (Eigen::Index k = 0; k < C; ++k) A(i, k) = neg(A(i, k));
    for (Eigen::Index k = 0; k < R; ++k) P(i, k) = neg(P(i, k));
    for (Eigen::Index k = 0; k < R; ++k) Pinv(k, i) = neg(Pinv(k, i));
  };
  // col_i += c col_j
  auto col_add = [&](Eigen::Index i, Eigen::Index j, const Scalar& c) {
    if (c == 0) return;
    for (Eigen::Index k = 0; k < R; ++k) A(k, i) = add(A(k, i), mul(c, A(k, j)));
    for (Eigen::Index k = 0; k < C; ++k) Q(k, i) = add(Q(k, i), mul(c, Q(k, j)));
    for (Eigen::Index k = 0; k < C; ++k) Qinv(j, k) = sub(Qinv(j, k), mul(c, Qinv(i, k)));
  };
  auto col_swap = [&](Eigen::Index i, Eigen::Index j) {
    if (i == j) return;
    A.col(i).swap(A.col(j));
    Q.col(i).swap(Q.col(j));
    Qinv.row(i).swap(Qinv.row(j));
  };

  Eigen::Index t = 0;
  for (; t < std::min(R, C); ++t) {
    // smallest nonzero entry of the trailing block goes to (t, t)
    Eigen::Index bi = -1, bj = -1;
    Scalar best = 0;
    for (Eigen::Index i = t; i < R; ++i)
      for (Eigen::Index j = t; j < C; ++j)
        if (A(i, j) != 0 && (bi < 0 || abs(A(i, j)) < best)) {
          bi = i;
          bj = j;
          best = abs(A(i, j));
        }
    if (bi < 0) break;
    row_swap(t, bi);
    col_swap(t, bj);

    while (true) {
      bool clean = true;
      for (Eigen::Index i = t + 1; i < R; ++i)
        if (A(i, t) != 0) {
          Scalar q = A(i, t) / A(t, t);
          row_add(i, t, neg(q));
          if (A(i, t) != 0) clean = false;
        }
      for (Eigen::Index j = t + 1; j < C; ++j)
        if (A(t, j) != 0) {
          Scalar q = A(t, j) / A(t, t);
          col_add(j, t, neg(q));
          if (A(t, j) != 0) clean = false;
        }
      if (!clean) {
        Eigen::Index mi = t, mj = t;
        Scalar mv = abs(A(t, t));
        for (Eigen::Index i = t + 1; i < R; ++i)
          if (A(i, t) != 0 && abs(A(i, t)) < mv) {
            mv = abs(A(i, t));
            mi = i;
            mj = t;
          }
        for (Eigen::Index j = t + 1; j < C; ++j)
          if (A(t, j) != 0 && abs(A(t, j)) < mv) {
            mv = abs(A(t, j));
            mi = t;
            mj = j;
          }
        row_swap(t, mi);
        col_swap(t, mj);
        continue;
      }
      // divisibility of the trailing block by the pivot
      Eigen::Index bad = -1;
      for (Eigen::Index i = t + 1; i < R && bad < 0; ++i)
        for (Eigen::Index j = t + 1; j < C; ++j)
          if (A(i, j) % A(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad < 0) break;
      row_add(t, bad, Scalar(1));
    }
    if (A(t, t) < 0) row_neg(t);
  }

  SmithForm<Scalar> out;
  out.D = A;
  out.P = P;
  out.Q = Q;
  out.U = Pinv;
  out.V = Qinv;
  out.rank = t;
  return out;
}

// int64 first, redone over big integers on overflow.
template <class Fn>
auto with_promotion(Fn&& fn) {
  try {
    return fn(std::int64_t{});
  } catch (const Error& e) {
    if (e.code() != Errc::Overflow) throw;
    return fn(BigInt{});
  }
}

}  // namespace sipp
