#include "hartman/lattice.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace hartman::lattice {

namespace {

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
  return q;
}

void axpy_row(IntVector& dst, const Integer& k, const IntVector& src) {
  if (k == 0) return;
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] -= k * src[i];
}

}  // namespace

HermiteForm hermite_form(const IntMatrix& input) {
  HermiteForm out;
  const std::size_t m = input.size();
  out.columns = m == 0 ? 0 : input.front().size();
  for (const auto& row : input) {
    if (row.size() != out.columns) throw std::invalid_argument("ragged integer matrix");
  }
  IntMatrix a = input;
  IntMatrix u(m, IntVector(m, Integer(0)));
  for (std::size_t i = 0; i < m; ++i) u[i][i] = 1;

  std::size_t r = 0;
  for (std::size_t c = 0; c < out.columns && r < m; ++c) {
    // Euclid on column c among rows r..m-1 until a single nonzero remains.
    while (true) {
      std::size_t best = m;
      for (std::size_t i = r; i < m; ++i) {
        if (a[i][c] != 0 && (best == m || abs(a[i][c]) < abs(a[best][c]))) best = i;
      }
      if (best == m) break;
      std::swap(a[r], a[best]);
      std::swap(u[r], u[best]);
      bool done = true;
      for (std::size_t i = r + 1; i < m; ++i) {
        if (a[i][c] == 0) continue;
        Integer q = floor_div(a[i][c], a[r][c]);
        axpy_row(a[i], q, a[r]);
        axpy_row(u[i], q, u[r]);
        if (a[i][c] != 0) done = false;
      }
      if (done) break;
    }
    if (a[r][c] == 0) continue;
    if (a[r][c] < 0) {
      for (auto& x : a[r]) x = -x;
      for (auto& x : u[r]) x = -x;
    }
    for (std::size_t i = 0; i < r; ++i) {
      Integer q = floor_div(a[i][c], a[r][c]);
      axpy_row(a[i], q, a[r]);
      axpy_row(u[i], q, u[r]);
    }
    out.pivots.push_back(c);
    ++r;
  }
  a.resize(r);
  u.resize(r);
  out.rows = std::move(a);
  out.transform = std::move(u);
  return out;
}

std::optional<IntVector> solve_echelon(const HermiteForm& hnf, IntVector target) {
  if (target.size() != hnf.columns) throw std::invalid_argument("target dimension mismatch");
  IntVector x(hnf.rows.size(), Integer(0));
  std::size_t next_col = 0;
  for (std::size_t i = 0; i < hnf.rows.size(); ++i) {
    std::size_t p = hnf.pivots[i];
    for (; next_col < p; ++next_col) {
      if (target[next_col] != 0) return std::nullopt;
    }
    const Integer& piv = hnf.rows[i][p];
    if (target[p] % piv != 0) return std::nullopt;
    x[i] = target[p] / piv;
    axpy_row(target, x[i], hnf.rows[i]);
    next_col = p + 1;
  }
  for (const auto& v : target) {
    if (v != 0) return std::nullopt;
  }
  return x;
}

std::optional<IntVector> solve_input(const HermiteForm& hnf, const IntVector& target) {
  auto x = solve_echelon(hnf, target);
  if (!x) return std::nullopt;
  const std::size_t m = hnf.transform.empty() ? 0 : hnf.transform.front().size();
  IntVector y(m, Integer(0));
  for (std::size_t i = 0; i < x->size(); ++i) {
    for (std::size_t j = 0; j < m; ++j) y[j] += (*x)[i] * hnf.transform[i][j];
  }
  return y;
}

IntVector smith_invariants(IntMatrix m) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows == 0 ? 0 : m.front().size();
  std::size_t t = 0;
  while (t < rows && t < cols) {
    // Pick the smallest nonzero entry in the remaining block as pivot.
    std::size_t pr = rows, pc = cols;
    for (std::size_t i = t; i < rows; ++i) {
      for (std::size_t j = t; j < cols; ++j) {
        if (m[i][j] != 0 && (pr == rows || abs(m[i][j]) < abs(m[pr][pc]))) {
          pr = i;
          pc = j;
        }
      }
    }
    if (pr == rows) break;
    std::swap(m[t], m[pr]);
    for (auto& row : m) std::swap(row[t], row[pc]);

    bool clean = true;
    for (std::size_t i = t + 1; i < rows; ++i) {
      if (m[i][t] == 0) continue;
      Integer q = floor_div(m[i][t], m[t][t]);
      axpy_row(m[i], q, m[t]);
      if (m[i][t] != 0) clean = false;
    }
    for (std::size_t j = t + 1; j < cols; ++j) {
      if (m[t][j] == 0) continue;
      Integer q = floor_div(m[t][j], m[t][t]);
      for (std::size_t i = 0; i < rows; ++i) m[i][j] -= q * m[i][t];
      if (m[t][j] != 0) clean = false;
    }
    if (!clean) continue;
    // Divisibility: the pivot must divide every remaining entry.
    bool divides = true;
    for (std::size_t i = t + 1; i < rows && divides; ++i) {
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (m[i][j] % m[t][t] != 0) {
          for (std::size_t k = 0; k < cols; ++k) m[t][k] += m[i][k];
          divides = false;
          break;
        }
      }
    }
    if (!divides) continue;
    ++t;
  }
  IntVector out;
  for (std::size_t i = 0; i < t; ++i) out.push_back(abs(m[i][i]));
  std::sort(out.begin(), out.end());
  return out;
}

DiagonalForm diagonal_form(IntMatrix a) {
  const std::size_t n = a.size();
  for (const auto& row : a) {
    if (row.size() != n) throw std::invalid_argument("diagonal_form needs a square matrix");
  }
  IntMatrix v(n, IntVector(n, Integer(0))), vinv = v;
  for (std::size_t i = 0; i < n; ++i) v[i][i] = vinv[i][i] = 1;
  // Column op col_j -= q·col_t on A and V; the inverse op row_t += q·row_j on V⁻¹.
  auto col_axpy = [&](std::size_t j, const Integer& q, std::size_t t) {
    for (std::size_t i = 0; i < n; ++i) {
      a[i][j] -= q * a[i][t];
      v[i][j] -= q * v[i][t];
    }
    for (std::size_t i = 0; i < n; ++i) vinv[t][i] += q * vinv[j][i];
  };
  auto col_swap = [&](std::size_t j, std::size_t t) {
    for (std::size_t i = 0; i < n; ++i) {
      std::swap(a[i][j], a[i][t]);
      std::swap(v[i][j], v[i][t]);
    }
    std::swap(vinv[j], vinv[t]);
  };
  for (std::size_t t = 0; t < n; ++t) {
    while (true) {
      std::size_t pr = n, pc = n;
      for (std::size_t i = t; i < n; ++i) {
        for (std::size_t j = t; j < n; ++j) {
          if (a[i][j] != 0 && (pr == n || abs(a[i][j]) < abs(a[pr][pc]))) {
            pr = i;
            pc = j;
          }
        }
      }
      if (pr == n) throw std::invalid_argument("diagonal_form needs a nonsingular matrix");
      std::swap(a[t], a[pr]);
      col_swap(t, pc);
      bool clean = true;
      for (std::size_t i = t + 1; i < n; ++i) {
        if (a[i][t] == 0) continue;
        axpy_row(a[i], floor_div(a[i][t], a[t][t]), a[t]);
        if (a[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (a[t][j] == 0) continue;
        col_axpy(j, floor_div(a[t][j], a[t][t]), t);
        if (a[t][j] != 0) clean = false;
      }
      if (clean) break;
    }
  }
  DiagonalForm out;
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i][i] < 0) {
      // Negate column i: V's column and V⁻¹'s row.
      for (std::size_t r = 0; r < n; ++r) v[r][i] = -v[r][i];
      for (auto& x : vinv[i]) x = -x;
      a[i][i] = -a[i][i];
    }
    out.diagonal.push_back(a[i][i]);
  }
  out.right = std::move(v);
  out.right_inverse = std::move(vinv);
  return out;
}

}  // namespace hartman::lattice
