#include "webgeom/kernels.hpp"

#include <omp.h>

#include <boost/multiprecision/mpfr.hpp>

#include "webgeom/errors.hpp"
#include "webgeom/linalg.hpp"

namespace webgeom::kernels {

int max_threads() { return omp_get_max_threads(); }

Matrix<BigFloat> evaluate_serial(const Matrix<Expr>& m, const Point& pt) { return eval_float(m, pt); }

Matrix<BigFloat> evaluate_parallel(const Matrix<Expr>& m, const Point& pt) {
  Matrix<BigFloat> out(m.rows(), m.cols());
  const long rows = static_cast<long>(m.rows());
  bool failed = false;
  std::string message;
  int kind = 0;  // 1 DivisionByZero, 2 DomainError, 3 other Error
#pragma omp parallel
  {
    FloatEvaluator ev(pt);
#pragma omp for schedule(dynamic)
    for (long i = 0; i < rows; ++i) {
      try {
        for (std::size_t j = 0; j < m.cols(); ++j) out(static_cast<std::size_t>(i), j) = ev(m(static_cast<std::size_t>(i), j));
      } catch (const Error& e) {
#pragma omp critical(webgeom_eval_error)
        {
          if (!failed) {
            failed = true;
            message = e.what();
            kind = dynamic_cast<const DivisionByZero*>(&e) ? 1 : dynamic_cast<const DomainError*>(&e) ? 2 : 3;
          }
        }
      }
    }
  }
  if (failed) {
    if (kind == 1) throw DivisionByZero(message);
    if (kind == 2) throw DomainError(message);
    throw Error(message);
  }
  return out;
}

std::size_t numeric_rank_parallel(Matrix<BigFloat> m, const BigFloat& tol) {
  using boost::multiprecision::abs;
  std::vector<BigFloat> row_max(m.rows(), BigFloat(0));
  const long rows = static_cast<long>(m.rows());
#pragma omp parallel for
  for (long i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      BigFloat a = abs(m(static_cast<std::size_t>(i), j));
      if (a > row_max[static_cast<std::size_t>(i)]) row_max[static_cast<std::size_t>(i)] = a;
    }
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t best = m.rows();
    BigFloat best_scaled = 0;
    for (std::size_t i = r; i < m.rows(); ++i) {
      if (row_max[i] == 0) continue;
      BigFloat a = abs(m(i, c));
      if (a <= tol * row_max[i]) continue;
      BigFloat s = a / row_max[i];
      if (best == m.rows() || s > best_scaled) {
        best = i;
        best_scaled = s;
      }
    }
    if (best == m.rows()) continue;
    m.swap_rows(r, best);
    std::swap(row_max[r], row_max[best]);
    const long first = static_cast<long>(r + 1);
#pragma omp parallel for schedule(static)
    for (long il = first; il < rows; ++il) {
      std::size_t i = static_cast<std::size_t>(il);
      if (m(i, c) == 0) continue;
      BigFloat f = m(i, c) / m(r, c);
      m(i, c) = 0;
      for (std::size_t j = c + 1; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    ++r;
  }
  return r;
}

namespace {

PointRank rank_one(const Matrix<Expr>& m, const Point& pt, const RankOptions& opt, const BigFloat& tol) {
  PointRank out;
  try {
    if (opt.backend == Backend::Exact) {
      out.rank = exact_rank(eval_exact(m, pt));
    } else {
      out.rank = numeric_rank(evaluate_serial(m, pt), tol);
    }
    out.ok = true;
  } catch (const Error& e) {
    out.error = e.what();
  }
  return out;
}

}  // namespace

std::vector<PointRank> ranks_serial(const Matrix<Expr>& m, const std::vector<Point>& points, const RankOptions& opt) {
  PrecisionScope scope(opt.digits);
  BigFloat tol(opt.tolerance);
  std::vector<PointRank> out;
  for (const Point& pt : points) out.push_back(rank_one(m, pt, opt, tol));
  return out;
}

std::vector<PointRank> ranks_parallel(const Matrix<Expr>& m, const std::vector<Point>& points,
                                      const RankOptions& opt) {
  // Precision is process-wide: fix it before the parallel region.
  PrecisionScope scope(opt.digits);
  BigFloat tol(opt.tolerance);
  std::vector<PointRank> out(points.size());
  const long count = static_cast<long>(points.size());
#pragma omp parallel for schedule(dynamic)
  for (long k = 0; k < count; ++k) out[static_cast<std::size_t>(k)] = rank_one(m, points[static_cast<std::size_t>(k)], opt, tol);
  return out;
}

}  // namespace webgeom::kernels
