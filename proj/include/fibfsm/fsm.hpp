#pragma once

// Finite sections A_n = (a_ij), l_n <= i,j <= r_n, of the Fibonacci
// Hamiltonian: a_nn = v_n, a_{n,n+-1} = 1, zero elsewhere.  Cutoff
// schedules, a pivoted tridiagonal solver (double and exact-rational),
// Sturm-sequence eigenvalue bisection, inverse-norm estimation for
// p in {1,2,inf}, stability sweeps and pointwise convergence of the
// embedded inverses.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "transfer.hpp"
#include "word.hpp"

namespace fibfsm {

class ExactlySingular : public std::runtime_error {
public:
  explicit ExactlySingular(const std::string& what)
      : std::runtime_error(what) {}
};

class NearSingular : public std::runtime_error {
public:
  explicit NearSingular(const std::string& what) : std::runtime_error(what) {}
};

struct CutoffPair {
  long l;
  long r;
};

/// Generator of truncation pairs (l_n, r_n).  Two-sided kinds diverge
/// monotonically on both ends; one_sided keeps l_n = 1.
struct CutoffSchedule {
  enum class Kind { symmetric, fibonacci, random, one_sided, explicit_list };

  Kind kind = Kind::symmetric;
  long step = 1;            // stride for symmetric / one_sided
  std::uint64_t seed = 0;   // random kind
  long max_step = 8;        // random kind: per-side increment in [1, max_step]
  std::vector<CutoffPair> pairs; // explicit_list

  std::string kind_name() const {
    switch (kind) {
    case Kind::symmetric: return "symmetric";
    case Kind::fibonacci: return "fibonacci";
    case Kind::random: return "random";
    case Kind::one_sided: return "one_sided";
    case Kind::explicit_list: return "explicit";
    }
    return "?";
  }

  std::vector<CutoffPair> first(std::size_t count) const {
    std::vector<CutoffPair> out;
    out.reserve(count);
    switch (kind) {
    case Kind::symmetric:
      for (std::size_t n = 1; n <= count; ++n)
        out.push_back({-static_cast<long>(n) * step,
                       static_cast<long>(n) * step});
      break;
    case Kind::one_sided:
      for (std::size_t n = 1; n <= count; ++n)
        out.push_back({1, static_cast<long>(n) * step});
      break;
    case Kind::fibonacci: {
      long a = 1, b = 2;
      for (std::size_t n = 1; n <= count; ++n) {
        out.push_back({-a, b});
        long c = a + b;
        a = b;
        b = c;
      }
      break;
    }
    case Kind::random: {
      std::mt19937_64 rng(seed);
      std::uniform_int_distribution<long> inc(1, max_step);
      long l = 0, r = 0;
      for (std::size_t n = 1; n <= count; ++n) {
        l -= inc(rng);
        r += inc(rng);
        out.push_back({l, r});
      }
      break;
    }
    case Kind::explicit_list:
      for (std::size_t n = 0; n < std::min(count, pairs.size()); ++n)
        out.push_back(pairs[n]);
      break;
    }
    for (const auto& p : out)
      if (p.l > p.r)
        throw std::invalid_argument("CutoffSchedule: l_n > r_n");
    return out;
  }
};

/// Symmetric tridiagonal section: diagonal = Fibonacci potential on
/// [lo, hi], off-diagonals constant 1.
struct TriSection {
  long lo = 0;
  long hi = 0;
  std::vector<int> diag; // v_lo .. v_hi

  std::size_t dim() const { return diag.size(); }
};

inline TriSection assemble(long l, long r) {
  if (l > r)
    throw std::invalid_argument("assemble: l > r");
  PotentialWindow w = window(l, r);
  TriSection s;
  s.lo = l;
  s.hi = r;
  s.diag.reserve(w.letters.size());
  for (std::size_t i = 0; i < w.letters.size(); ++i)
    s.diag.push_back(w.letters[i] - '0');
  return s;
}

namespace detail {

template <class T> T abs_val(const T& x) { return x < 0 ? -x : x; }

// Banded LU with partial pivoting for a tridiagonal matrix; fill-in is one
// extra superdiagonal.  Factorization is kept so that many right-hand
// sides can be solved in O(n) each.
template <class T> struct TriFactor {
  std::size_t n = 0;
  std::vector<T> u0, u1, u2; // diagonal and two superdiagonals of U
  std::vector<T> mult;       // elimination multipliers
  std::vector<char> swapped; // pivot row interchanged at step i
  bool singular = false;

  template <class Diag>
  static TriFactor factor(const Diag& diag) {
    const std::size_t n = diag.size();
    TriFactor f;
    f.n = n;
    f.u0.assign(n, T(0));
    f.u1.assign(n, T(0));
    f.u2.assign(n, T(0));
    f.mult.assign(n, T(0));
    f.swapped.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i)
      f.u0[i] = T(diag[i]);
    for (std::size_t i = 0; i + 1 < n; ++i)
      f.u1[i] = T(1);
    std::vector<T> sub(n, T(0)); // current subdiagonal entries
    for (std::size_t i = 0; i + 1 < n; ++i)
      sub[i + 1] = T(1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (abs_val(sub[i + 1]) > abs_val(f.u0[i])) {
        std::swap(f.u0[i], sub[i + 1]);
        std::swap(f.u1[i], f.u0[i + 1]);
        std::swap(f.u2[i], f.u1[i + 1]);
        f.swapped[i] = 1;
      }
      if (f.u0[i] == T(0)) {
        f.singular = true;
        return f;
      }
      T m = sub[i + 1] / f.u0[i];
      f.mult[i] = m;
      f.u0[i + 1] -= m * f.u1[i];
      f.u1[i + 1] -= m * f.u2[i];
      sub[i + 1] = T(0);
    }
    if (n > 0 && f.u0[n - 1] == T(0))
      f.singular = true;
    return f;
  }

  std::vector<T> solve(std::vector<T> b) const {
    if (singular)
      throw ExactlySingular("TriFactor::solve: zero pivot");
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (swapped[i])
        std::swap(b[i], b[i + 1]);
      b[i + 1] -= mult[i] * b[i];
    }
    for (std::size_t i = n; i-- > 0;) {
      T s = b[i];
      if (i + 1 < n)
        s -= u1[i] * b[i + 1];
      if (i + 2 < n)
        s -= u2[i] * b[i + 2];
      b[i] = s / u0[i];
    }
    return b;
  }
};

} // namespace detail

/// Solve A_n x = b in double precision.
inline std::vector<double> solve(const TriSection& s,
                                 const std::vector<double>& rhs) {
  if (rhs.size() != s.dim())
    throw std::invalid_argument("solve: dimension mismatch");
  auto f = detail::TriFactor<double>::factor(s.diag);
  if (f.singular)
    throw ExactlySingular("solve: zero pivot in factorization");
  return f.solve(rhs);
}

/// Solve A_n x = b in exact rational arithmetic (intended for n <= 500).
inline std::vector<Rational> solve_exact(const TriSection& s,
                                         const std::vector<Rational>& rhs) {
  if (rhs.size() != s.dim())
    throw std::invalid_argument("solve_exact: dimension mismatch");
  auto f = detail::TriFactor<Rational>::factor(s.diag);
  if (f.singular)
    throw ExactlySingular("solve_exact: zero pivot");
  return f.solve(rhs);
}

namespace detail {

// Sturm count: number of eigenvalues of the section strictly below t.
// Standard LDL^T negative-pivot count with unit off-diagonals.
inline std::size_t sturm_count_below(const TriSection& s, double t) {
  const double tiny = 1e-300;
  std::size_t count = 0;
  double q = 1.0;
  for (std::size_t i = 0; i < s.dim(); ++i) {
    double prev_contrib = (i == 0) ? 0.0 : 1.0 / q;
    q = (static_cast<double>(s.diag[i]) - t) - prev_contrib;
    if (q == 0.0)
      q = -tiny;
    if (q < 0.0)
      ++count;
  }
  return count;
}

// Bisect for the k-th eigenvalue (0-based) on [lo, hi].
inline double bisect_eigenvalue(const TriSection& s, std::size_t k, double lo,
                                double hi, double tol) {
  while (hi - lo > tol) {
    double mid = 0.5 * (lo + hi);
    if (sturm_count_below(s, mid) >= k + 1)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

} // namespace detail

/// Number of eigenvalues strictly below t (exposed for validation).
inline std::size_t eigenvalue_count_below(const TriSection& s, double t) {
  return detail::sturm_count_below(s, t);
}

/// Smallest |lambda| over the spectrum, to absolute accuracy tol.
/// The spectrum lies in [-2+min v, 2+max v], a subset of [-3, 3].
inline double min_abs_eigenvalue(const TriSection& s, double tol = 1e-10) {
  if (tol <= 0)
    throw std::invalid_argument("min_abs_eigenvalue: tol must be positive");
  const std::size_t n = s.dim();
  const std::size_t below_zero = detail::sturm_count_below(s, 0.0);
  double best = std::numeric_limits<double>::infinity();
  if (below_zero > 0) {
    double lam = detail::bisect_eigenvalue(s, below_zero - 1, -3.0, 0.0, tol);
    best = std::min(best, std::abs(lam));
  }
  if (below_zero < n) {
    double lam = detail::bisect_eigenvalue(s, below_zero, 0.0, 3.0, tol);
    best = std::min(best, std::abs(lam));
  }
  return best < tol ? 0.0 : best;
}

/// Operator norm of A_n^{-1} on l^p.  p = 2 uses 1/min|lambda| (symmetry);
/// p in {1, inf} runs n unit-vector solves and takes the maximal absolute
/// column sum (equal to the row-sum norm since A_n^{-1} is symmetric).
inline double inverse_norm(const TriSection& s, int p) {
  if (p != 1 && p != 2 && p != 0) // 0 encodes infinity
    throw std::invalid_argument("inverse_norm: p must be 1, 2 or 0 (=inf)");
  if (p == 2) {
    double sigma = min_abs_eigenvalue(s);
    if (sigma <= 0.0)
      throw NearSingular("inverse_norm: zero eigenvalue at resolution");
    double norm = 1.0 / sigma;
    if (norm > 1e12)
      throw NearSingular("inverse_norm: condition estimate exceeds 1e12");
    return norm;
  }
  auto f = detail::TriFactor<double>::factor(s.diag);
  if (f.singular)
    throw ExactlySingular("inverse_norm: zero pivot");
  const std::size_t n = s.dim();
  double best = 0.0;
  std::vector<double> e(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    e.assign(n, 0.0);
    e[j] = 1.0;
    std::vector<double> x = f.solve(e);
    double colsum = 0.0;
    for (double xi : x)
      colsum += std::abs(xi);
    best = std::max(best, colsum);
  }
  if (best > 1e12)
    throw NearSingular("inverse_norm: condition estimate exceeds 1e12");
  return best;
}

struct StabilityRow {
  std::size_t n = 0;
  long l = 0;
  long r = 0;
  std::size_t dim = 0;
  double sigma_min = 0.0;
  double norm_p1 = 0.0;
  double norm_p2 = 0.0;
  double norm_pinf = 0.0;
  bool invertible = false;
};

struct StabilityReport {
  std::string schedule;
  std::uint64_t seed = 0;
  int p = 2;
  std::vector<StabilityRow> rows;
  double running_max = 0.0;
  std::size_t last_new_max_index = 0; // 1-based position in the sweep
  std::size_t n0 = 0; // last singular/near-singular index (0 if none)

  /// Plateau heuristic, first part: every section beyond n0 invertible and
  /// the last new running maximum sits in the first half of the sweep.
  bool plateau_reached() const {
    if (rows.empty())
      return false;
    for (const auto& row : rows)
      if (row.n > n0 && !row.invertible)
        return false;
    return last_new_max_index * 2 <= rows.size();
  }
};

/// Second part of the plateau heuristic: doubling the sweep must not grow
/// the running maximum by more than 1 percent.
inline bool plateau_stable_under_doubling(const StabilityReport& base,
                                          const StabilityReport& doubled) {
  if (base.running_max <= 0.0)
    return false;
  return doubled.running_max <= 1.01 * base.running_max;
}

/// Evaluate inverse norms over the first `count` truncations.  Singular
/// sections are recorded, not fatal: the stability theorems allow finitely
/// many below some n0.
inline StabilityReport stability_sweep(const CutoffSchedule& schedule,
                                       std::size_t count, int p) {
  if (count == 0)
    throw std::invalid_argument("stability_sweep: count must be >= 1");
  StabilityReport report;
  report.schedule = schedule.kind_name();
  report.seed = schedule.seed;
  report.p = p;
  const double sing_tol = 1e-10;
  auto pairs = schedule.first(count);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    StabilityRow row;
    row.n = i + 1;
    row.l = pairs[i].l;
    row.r = pairs[i].r;
    TriSection s = assemble(pairs[i].l, pairs[i].r);
    row.dim = s.dim();
    row.sigma_min = min_abs_eigenvalue(s);
    row.invertible = row.sigma_min > sing_tol;
    if (row.invertible) {
      row.norm_p2 = 1.0 / row.sigma_min;
      if (p == 1 || p == 0) {
        double nrm = inverse_norm(s, 1);
        row.norm_p1 = nrm;
        row.norm_pinf = nrm; // symmetric inverse
      }
      double tracked = (p == 2) ? row.norm_p2 : row.norm_p1;
      if (tracked > report.running_max) {
        report.running_max = tracked;
        report.last_new_max_index = row.n;
      }
    } else {
      report.n0 = row.n;
    }
    report.rows.push_back(row);
  }
  return report;
}

struct ConvergenceRow {
  std::size_t n = 0;
  long l = 0;
  long r = 0;
  std::size_t dim = 0;
  double deviation = 0.0; // max over the window vs the largest truncation
};

struct ConvergenceTable {
  std::string schedule;
  long rhs_index = 0;
  long window_lo = 0;
  long window_hi = 0;
  std::vector<ConvergenceRow> rows;
  std::vector<double> reference; // x^(N) restricted to the window
};

/// Pointwise convergence of the embedded inverses: solve A_n x = e_k for
/// every truncation, zero-extend, and compare on a fixed window against
/// the largest truncation.
inline ConvergenceTable fsm_convergence(const CutoffSchedule& schedule,
                                        long rhs_index, long window_lo,
                                        long window_hi, std::size_t count) {
  if (count == 0)
    throw std::invalid_argument("fsm_convergence: count must be >= 1");
  if (window_lo > window_hi)
    throw std::invalid_argument("fsm_convergence: bad window");
  auto pairs = schedule.first(count);

  auto solve_on_window = [&](const CutoffPair& c) {
    TriSection s = assemble(c.l, c.r);
    std::vector<double> rhs(s.dim(), 0.0);
    if (rhs_index >= c.l && rhs_index <= c.r)
      rhs[static_cast<std::size_t>(rhs_index - c.l)] = 1.0;
    std::vector<double> x = solve(s, rhs);
    // zero-extension outside [l, r]
    std::vector<double> win(static_cast<std::size_t>(window_hi - window_lo + 1),
                            0.0);
    for (long i = window_lo; i <= window_hi; ++i)
      if (i >= c.l && i <= c.r)
        win[static_cast<std::size_t>(i - window_lo)] =
            x[static_cast<std::size_t>(i - c.l)];
    return win;
  };

  ConvergenceTable table;
  table.schedule = schedule.kind_name();
  table.rhs_index = rhs_index;
  table.window_lo = window_lo;
  table.window_hi = window_hi;
  table.reference = solve_on_window(pairs.back());

  for (std::size_t i = 0; i < pairs.size(); ++i) {
    ConvergenceRow row;
    row.n = i + 1;
    row.l = pairs[i].l;
    row.r = pairs[i].r;
    row.dim = static_cast<std::size_t>(pairs[i].r - pairs[i].l + 1);
    std::vector<double> win = solve_on_window(pairs[i]);
    double dev = 0.0;
    for (std::size_t k = 0; k < win.size(); ++k)
      dev = std::max(dev, std::abs(win[k] - table.reference[k]));
    row.deviation = dev;
    table.rows.push_back(row);
  }
  return table;
}

/// Exact propagation of x_{n+1} = -v_n x_n - x_{n-1} across the section's
/// diagonal, given the pair (x_{lo-1}, x_lo).  Entry i of the result is
/// the solution value at index lo + i.
inline std::vector<Rational> homogeneous_replay(const TriSection& s,
                                                const Rational& x_prev,
                                                const Rational& x_start) {
  std::vector<Rational> out;
  out.reserve(s.dim());
  Rational prev = x_prev, cur = x_start;
  out.push_back(cur);
  for (std::size_t i = 0; i + 1 < s.dim(); ++i) {
    Rational next = -Rational(s.diag[i]) * cur - prev;
    prev = cur;
    cur = next;
    out.push_back(cur);
  }
  return out;
}

} // namespace fibfsm
