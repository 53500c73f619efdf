#include "varlex/maximal.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <thread>
#include <vector>

#include "varlex/parallel.hpp"

namespace varlex {

CubeFamily CubeFamily::for_domain(const Domain& dom) {
  const int k = dom.dim() == 1 ? dom.res(0) : std::max(dom.res(0), dom.res(1));
  return for_domain(dom, k);
}

CubeFamily CubeFamily::for_domain(const Domain& dom, int max_side) {
  if (max_side < 1)
    throw Error(ErrorCode::InvalidInput, "cube family: max side must be >= 1");
  return CubeFamily{dom.dim(), dom.spacing(), max_side};
}

namespace {

void require_family(const Domain& dom, const CubeFamily& family, const char* what) {
  if (!family.matches(dom)) {
    std::string msg(what);
    throw Error(ErrorCode::FamilyMismatch,
                msg + ": cube family was built for a different grid");
  }
}

void require_alpha(double alpha, int n, const char* what) {
  if (!(alpha >= 0.0) || !(alpha < n)) {
    std::ostringstream os;
    os << what << ": alpha must lie in [0, n) = [0, " << n << "), got " << alpha;
    throw Error(ErrorCode::InvalidInput, os.str());
  }
}

// Trailing window sums of the zero-padded input:
//   dst[t] = sum of src[i] for i in [t-k+1, t] intersect [0, len),  t in [0, len+k-2].
// Block prefix/suffix scheme: every window is the sum of at most two
// contiguous partial sums, so there is no subtraction and windows of zeros
// come out exactly 0. scratch_s / scratch_p must hold len + 2*(k-1) doubles.
void window_sum(const double* src, int len, int k, double* dst,
                double* scratch_s, double* scratch_p) {
  if (k == 1) {
    std::copy(src, src + len, dst);
    return;
  }
  const int pad = k - 1;
  const int lp = len + 2 * pad;  // padded length
  const auto padded = [&](int j) -> double {
    return (j >= pad && j < pad + len) ? src[j - pad] : 0.0;
  };
  for (int bs = 0; bs < lp; bs += k) {
    const int be = std::min(bs + k, lp);
    double acc = 0.0;
    for (int j = be - 1; j >= bs; --j) {
      acc += padded(j);
      scratch_s[j] = acc;
    }
    acc = 0.0;
    for (int j = bs; j < be; ++j) {
      acc += padded(j);
      scratch_p[j] = acc;
    }
  }
  const int out_len = len + k - 1;
  for (int t = 0; t < out_len; ++t) {
    // window [t, t+k-1] in padded coordinates
    dst[t] = (t % k == 0) ? scratch_s[t] : scratch_s[t] + scratch_p[t + k - 1];
  }
}

// dst[x] = max of src[t] for t in [x, x+k-1], x in [0, len-k]. Monotone deque;
// idx must hold len ints.
void sliding_max(const double* src, int len, int k, double* dst, int* idx) {
  int head = 0, tail = 0;  // deque in idx[head, tail)
  for (int t = 0; t < len; ++t) {
    while (tail > head && src[idx[tail - 1]] <= src[t]) --tail;
    idx[tail++] = t;
    if (idx[head] <= t - k) ++head;
    if (t >= k - 1) dst[t - k + 1] = src[idx[head]];
  }
}

struct FastScratch {
  std::vector<double> s, p;       // window_sum scratch
  std::vector<double> row_sums;   // 2D: m0 x P1 ; 1D: P0
  std::vector<double> col_in, col_out;
  std::vector<double> full_sums;  // 2D: P0 x P1
  std::vector<double> best;       // 2D: m0 x P1 after axis-0 max; then final per row
  std::vector<int> idx;
};

// Candidates for all side lengths k in `sides`, max-combined into out (cells).
void fast_candidates(const Domain& dom, const std::vector<double>& fabsv,
                     double alpha, const std::vector<int>& sides,
                     std::vector<double>& out, FastScratch& sc) {
  const int n = dom.dim();
  const double h = dom.spacing();
  const int m0 = dom.res(0);
  const int m1 = n == 2 ? dom.res(1) : 1;

  for (const int k : sides) {
    const double scale = std::pow(static_cast<double>(k), alpha - n) * std::pow(h, alpha);
    if (n == 1) {
      const int p0 = m0 + k - 1;
      sc.s.resize(m0 + 2 * (k - 1));
      sc.p.resize(m0 + 2 * (k - 1));
      sc.row_sums.resize(p0);
      sc.best.resize(m0);
      sc.idx.resize(p0);
      window_sum(fabsv.data(), m0, k, sc.row_sums.data(), sc.s.data(), sc.p.data());
      sliding_max(sc.row_sums.data(), p0, k, sc.best.data(), sc.idx.data());
      for (const std::int64_t c : dom.active_cells()) {
        const double cand = sc.best[static_cast<std::size_t>(c)] * scale;
        auto& slot = out[static_cast<std::size_t>(c)];
        if (cand > slot) slot = cand;
      }
    } else {
      const int p0 = m0 + k - 1;
      const int p1 = m1 + k - 1;
      const int pad_len = std::max(m0, m1) + 2 * (k - 1);
      sc.s.resize(pad_len);
      sc.p.resize(pad_len);
      sc.row_sums.resize(static_cast<std::size_t>(m0) * p1);
      sc.col_in.resize(std::max(m0, p1));
      sc.col_out.resize(std::max(p0, p1));
      sc.full_sums.resize(static_cast<std::size_t>(p0) * p1);
      sc.best.resize(static_cast<std::size_t>(m0) * p1);
      sc.idx.resize(std::max(p0, p1));

      // axis-1 window sums per row of f
      for (int i0 = 0; i0 < m0; ++i0)
        window_sum(fabsv.data() + static_cast<std::size_t>(i0) * m1, m1, k,
                   sc.row_sums.data() + static_cast<std::size_t>(i0) * p1,
                   sc.s.data(), sc.p.data());
      // axis-0 window sums per column of row_sums
      for (int t1 = 0; t1 < p1; ++t1) {
        for (int i0 = 0; i0 < m0; ++i0)
          sc.col_in[i0] = sc.row_sums[static_cast<std::size_t>(i0) * p1 + t1];
        window_sum(sc.col_in.data(), m0, k, sc.col_out.data(), sc.s.data(), sc.p.data());
        for (int t0 = 0; t0 < p0; ++t0)
          sc.full_sums[static_cast<std::size_t>(t0) * p1 + t1] = sc.col_out[t0];
      }
      // axis-0 sliding max per column: placements t0 containing x0
      for (int t1 = 0; t1 < p1; ++t1) {
        for (int t0 = 0; t0 < p0; ++t0)
          sc.col_in[t0] = sc.full_sums[static_cast<std::size_t>(t0) * p1 + t1];
        sliding_max(sc.col_in.data(), p0, k, sc.col_out.data(), sc.idx.data());
        for (int x0 = 0; x0 < m0; ++x0)
          sc.best[static_cast<std::size_t>(x0) * p1 + t1] = sc.col_out[x0];
      }
      // axis-1 sliding max per row, then combine
      for (int x0 = 0; x0 < m0; ++x0) {
        sliding_max(sc.best.data() + static_cast<std::size_t>(x0) * p1, p1, k,
                    sc.col_out.data(), sc.idx.data());
        const std::size_t row = static_cast<std::size_t>(x0) * m1;
        for (int x1 = 0; x1 < m1; ++x1) {
          const std::size_t cell = row + x1;
          if (!dom.active(static_cast<std::int64_t>(cell))) continue;
          const double cand = sc.col_out[x1] * scale;
          auto& slot = out[cell];
          if (cand > slot) slot = cand;
        }
      }
    }
  }
}

}  // namespace

GridFunction fractional_maximal(const GridFunction& f, double alpha,
                                const CubeFamily& family) {
  const auto& dom = *f.domain();
  require_family(dom, family, "fractional_maximal");
  require_alpha(alpha, dom.dim(), "fractional_maximal");

  const std::size_t cells = static_cast<std::size_t>(dom.cell_count());
  std::vector<double> fabsv(cells);
  for (std::size_t c = 0; c < cells; ++c) fabsv[c] = std::abs(f.values()[c]);

  const int k_max = family.max_side;
  std::vector<double> out(cells, 0.0);

  const std::int64_t work =
      static_cast<std::int64_t>(cells) * static_cast<std::int64_t>(k_max);
  const int budget = thread_budget();
  const int workers =
      (budget > 1 && work >= (std::int64_t{1} << 21)) ? std::min(budget, k_max) : 1;

  if (workers <= 1) {
    std::vector<int> sides(static_cast<std::size_t>(k_max));
    for (int k = 1; k <= k_max; ++k) sides[static_cast<std::size_t>(k - 1)] = k;
    FastScratch sc;
    fast_candidates(dom, fabsv, alpha, sides, out, sc);
  } else {
    // Strided side-length split; per-worker buffers are max-combined in a
    // fixed order afterwards (max is exact, so the result does not depend on
    // the split).
    std::vector<std::vector<double>> partial(
        static_cast<std::size_t>(workers), std::vector<double>(cells, 0.0));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        std::vector<int> sides;
        for (int k = w + 1; k <= k_max; k += workers) sides.push_back(k);
        FastScratch sc;
        fast_candidates(dom, fabsv, alpha, sides, partial[static_cast<std::size_t>(w)], sc);
      });
    }
    for (auto& th : pool) th.join();
    for (int w = 0; w < workers; ++w)
      for (std::size_t c = 0; c < cells; ++c)
        out[c] = std::max(out[c], partial[static_cast<std::size_t>(w)][c]);
  }

  return GridFunction(f.domain(), std::move(out));
}

GridFunction hl_maximal(const GridFunction& f, const CubeFamily& family) {
  return fractional_maximal(f, 0.0, family);
}

GridFunction naive_maximal(const GridFunction& f, double alpha,
                           const CubeFamily& family) {
  const auto& dom = *f.domain();
  require_family(dom, family, "naive_maximal");
  require_alpha(alpha, dom.dim(), "naive_maximal");

  const int n = dom.dim();
  const double h = dom.spacing();
  const int m0 = dom.res(0);
  const int m1 = n == 2 ? dom.res(1) : 1;
  const double hn = std::pow(h, n);
  const auto& v = f.values();

  std::vector<double> out(static_cast<std::size_t>(dom.cell_count()), 0.0);
  for (int k = 1; k <= family.max_side; ++k) {
    const double q_measure = std::pow(k * h, n);
    const double weight = std::pow(q_measure, alpha / n - 1.0);
    for (int o0 = -(k - 1); o0 < m0; ++o0) {
      const int a0 = std::max(0, o0);
      const int b0 = std::min(m0 - 1, o0 + k - 1);
      for (int o1 = n == 2 ? -(k - 1) : 0; o1 < (n == 2 ? m1 : 1); ++o1) {
        const int a1 = n == 2 ? std::max(0, o1) : 0;
        const int b1 = n == 2 ? std::min(m1 - 1, o1 + k - 1) : 0;
        double mass = 0.0;
        for (int i0 = a0; i0 <= b0; ++i0)
          for (int i1 = a1; i1 <= b1; ++i1)
            mass += std::abs(v[static_cast<std::size_t>(i0) * m1 + i1]);
        const double value = mass * hn * weight;
        for (int i0 = a0; i0 <= b0; ++i0)
          for (int i1 = a1; i1 <= b1; ++i1) {
            const std::size_t cell = static_cast<std::size_t>(i0) * m1 + i1;
            if (!dom.active(static_cast<std::int64_t>(cell))) continue;
            if (value > out[cell]) out[cell] = value;
          }
      }
    }
  }
  return GridFunction(f.domain(), std::move(out));
}

}  // namespace varlex
