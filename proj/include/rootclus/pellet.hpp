// Soft Pellet counting test with Graeffe acceleration and adaptive precision
// doubling; the full-range exclusion test; and the head-coefficient falsehood
// filter that can certify the exclusion test cannot succeed, skipping it.
#pragma once

#include <cassert>
#include <cstdint>
#include <vector>

#include "rootclus/geometry.hpp"
#include "rootclus/poly.hpp"

namespace rootclus {

struct TestCounters {
  std::uint64_t n1 = 0;  // discarding (exclusion) tests run
  std::uint64_t n2 = 0;  // discarding tests that were inconclusive
  std::uint64_t n3 = 0;  // full-polynomial Graeffe iterations (prefix steps not counted)

  void merge(const TestCounters& o) {
    n1 += o.n1;
    n2 += o.n2;
    n3 += o.n3;
  }
};

// optional instrumentation for the loop-bound property
struct PelletTelemetry {
  std::uint64_t resolved_comparisons = 0;  // comparisons resolved at final precision
  std::uint64_t iterations_executed = 0;   // full Graeffe iterations (all precisions)
  Prec final_precision = 0;
};

enum class Strategy { V2, V3, V4, V4e };

inline const char* to_string(Strategy s) {
  switch (s) {
    case Strategy::V2: return "v2";
    case Strategy::V3: return "v3";
    case Strategy::V4: return "v4";
    default: return "v4e";
  }
}

// N = 4 + ceil(log2(1 + log2 d)), exactly: smallest t with 2^(2^t - 1) >= d.
inline int pellet_iterations(int d) {
  assert(d >= 1);
  int t = 0;
  while (!((static_cast<unsigned __int128>(1) << ((1u << t) - 1)) >=
           static_cast<unsigned __int128>(d))) {
    ++t;
  }
  return 4 + t;
}

// smallest i in [0, N] with 2^(N-i) <= d/4 (N when none): handoff point from
// full Graeffe iterates to head prefixes in the filter
inline int filter_full_iterations(int d, int N) {
  for (int i = 0; i <= N; ++i) {
    if ((static_cast<std::int64_t>(1) << (N - i)) * 4 <= d) return i;
  }
  return N;
}

namespace pellet_detail {

inline constexpr Prec kStartPrec = 53;
inline constexpr int kFilterSkip = -2;

// Approximation, Taylor shift, and Graeffe iterates of f on a disc at the
// current working precision; rebuilt from scratch when precision doubles.
class Session {
 public:
  Session(const CoeffOracle& f, const Disc& delta, TestCounters* ctr, PelletTelemetry* tel)
      : f_(f), delta_(delta), ctr_(ctr), tel_(tel) {
    rebuild(0);
  }

  Prec precision() const { return L_; }
  const BallPoly& iterate(int i) const { return iters_[i]; }

  void ensure(int i) {
    while (static_cast<int>(iters_.size()) - 1 < i) {
      iters_.push_back(graeffe_step(iters_.back(), L_));
      count_full_iteration();
    }
  }

  // L <- 2L, recompute shift and iterations 0..upto from scratch
  void double_precision(int upto) {
    L_ *= 2;
    rebuild(upto);
  }

  // certified magnitudes |f~|_j of iterate i, cached per (i, L)
  const std::vector<RealBall>& magnitudes(int i) {
    ensure(i);
    if (static_cast<int>(mags_.size()) <= i) mags_.resize(i + 1);
    if (mags_[i].empty()) {
      const BallPoly& p = iters_[i];
      mags_[i].reserve(p.degree() + 1);
      for (int j = 0; j <= p.degree(); ++j) mags_[i].push_back(p.coeff_abs(j, L_));
    }
    return mags_[i];
  }

 private:
  void rebuild(int upto) {
    BallPoly a = get_approximation(f_, L_);
    iters_.clear();
    mags_.clear();
    iters_.push_back(taylor_shift(a, delta_, L_));
    ensure(upto);
  }

  void count_full_iteration() {
    if (ctr_) ctr_->n3 += 1;
    if (tel_) tel_->iterations_executed += 1;
  }

  const CoeffOracle& f_;
  Disc delta_;
  TestCounters* ctr_;
  PelletTelemetry* tel_;
  Prec L_ = kStartPrec;
  std::vector<BallPoly> iters_;
  std::vector<std::vector<RealBall>> mags_;
};

// The hypothesis check of the filter: |f^[N]|_0 <= |f^[N]|_1 + |f^[N]|_d,
// evaluated from the session's iterates at its current precision.
//   |f^[N]|_0 = (|f_D|_0)^(2^N), |f^[N]|_d = (|f_D|_d)^(2^N) by pow2k;
//   |f^[N]|_1 by head prefixes of iterates i0+1..N.
inline TriBool filter_hypothesis(Session& s, int d, int N, int i0) {
  Prec L = s.precision();
  const std::vector<RealBall>& mags0 = s.magnitudes(0);
  RealBall a0 = ball_pow2k(mags0[0], N, L);
  RealBall ad = ball_pow2k(mags0[d], N, L);
  RealBall a1;
  if (i0 >= N) {
    s.ensure(N);
    a1 = s.magnitudes(N)[1];
  } else {
    s.ensure(i0);
    auto heads = graeffe_head(s.iterate(i0), N - i0, L);
    a1 = ball_cabs(heads.back()[1], L);
  }
  return int_compare(a0, ball_add(a1, ad, L));
}

}  // namespace pellet_detail

// Standalone falsehood filter: FALSE certifies that the full-range test on
// this disc cannot return 0 (skip it); TRUE means run the full test.
// Unresolved comparisons resolve to TRUE.
inline bool filter_c0minus(const CoeffOracle& f, const Disc& delta, Prec L) {
  int d = f.degree();
  int N = pellet_iterations(d);
  int i0 = filter_full_iterations(d, N);
  BallPoly a = get_approximation(f, L);
  BallPoly shifted = taylor_shift(a, delta, L);
  std::vector<BallPoly> iters{std::move(shifted)};
  for (int i = 1; i <= i0; ++i) iters.push_back(graeffe_step(iters.back(), L));
  RealBall m0 = iters[0].coeff_abs(0, L);
  RealBall md = iters[0].coeff_abs(d, L);
  RealBall a0 = ball_pow2k(m0, N, L);
  RealBall ad = ball_pow2k(md, N, L);
  RealBall a1;
  if (i0 >= N) {
    a1 = iters[N].coeff_abs(1, L);
  } else {
    auto heads = graeffe_head(iters[i0], N - i0, L);
    a1 = ball_cabs(heads.back()[1], L);
  }
  return int_compare(a0, ball_add(a1, ad, L)) != TriBool::False;
}

struct CountingOptions {
  bool use_filter = false;
  PelletTelemetry* telemetry = nullptr;
};

// The soft counting test. Returns r in {0..k} with the certificate
// #f(Delta) = r, or -1 when inconclusive after all Graeffe iterations
// (or pellet_detail::kFilterSkip when the filter short-circuited the run).
// Precision starts at 53 bits and doubles until each soft comparison resolves;
// every doubling recomputes the approximation, the shift, and the current
// number of Graeffe iterations from scratch.
inline int counting_test(const CoeffOracle& f, const Disc& delta, int k, TestCounters& counters,
                         const CountingOptions& opts = {}) {
  int d = f.degree();
  assert(k >= 0 && k <= d);
  assert(delta.radius.sign() > 0);
  int N = pellet_iterations(d);
  pellet_detail::Session s(f, delta, &counters, opts.telemetry);

  if (opts.use_filter) {
    int i0 = filter_full_iterations(d, N);
    s.ensure(i0);
    if (pellet_detail::filter_hypothesis(s, d, N, i0) == TriBool::False) {
      if (opts.telemetry) opts.telemetry->final_precision = s.precision();
      return pellet_detail::kFilterSkip;
    }
  }

  for (int i = 0; i <= N; ++i) {
    s.ensure(i);
    // prefix/suffix sums of magnitudes, so sum_{j != r} has no cancellation slack
    auto sums = [&](std::vector<RealBall>* pre, std::vector<RealBall>* suf) {
      const auto& mags = s.magnitudes(i);
      Prec L = s.precision();
      pre->assign(d + 2, RealBall());
      suf->assign(d + 2, RealBall());
      for (int j = 0; j <= d; ++j) (*pre)[j + 1] = ball_add((*pre)[j], mags[j], L);
      for (int j = d; j >= 0; --j) (*suf)[j] = ball_add((*suf)[j + 1], mags[j], L);
    };
    std::vector<RealBall> pre, suf;
    sums(&pre, &suf);
    for (int r = 0; r <= k; ++r) {
      TriBool j;
      while (true) {
        const auto& mags = s.magnitudes(i);
        RealBall rest = ball_add(pre[r], suf[r + 1], s.precision());
        j = int_compare(mags[r], rest);
        if (j != TriBool::Unresolved) break;
        s.double_precision(i);
        sums(&pre, &suf);
      }
      if (opts.telemetry) opts.telemetry->resolved_comparisons += 1;
      if (j == TriBool::True) {
        if (opts.telemetry) opts.telemetry->final_precision = s.precision();
        return r;
      }
    }
  }
  if (opts.telemetry) opts.telemetry->final_precision = s.precision();
  return -1;
}

struct ExclusionResult {
  bool exclude = false;
  // certified root count of the disc when the test produced one (> 0)
  std::optional<int> count;

  static ExclusionResult excluded() { return ExclusionResult{true, std::nullopt}; }
  static ExclusionResult keep_unknown() { return ExclusionResult{false, std::nullopt}; }
  static ExclusionResult keep(int c) { return ExclusionResult{false, c}; }
};

// Exclusion test on a disc under the given strategy.
//   V2: counting test with k = 0.
//   V3: counting test with k = d (upper-bounds the count instead of only
//       proving emptiness).
//   V4/V4e: V3 preceded by the falsehood filter; a filter FALSE keeps the
//       region without running the full test.
inline ExclusionResult exclusion_test(const CoeffOracle& f, const Disc& delta, Strategy strategy,
                                      TestCounters& counters) {
  counters.n1 += 1;
  CountingOptions opts;
  int k = 0;
  switch (strategy) {
    case Strategy::V2: k = 0; break;
    case Strategy::V3: k = f.degree(); break;
    case Strategy::V4:
    case Strategy::V4e:
      k = f.degree();
      opts.use_filter = true;
      break;
  }
  int r = counting_test(f, delta, k, counters, opts);
  if (r == 0) return ExclusionResult::excluded();
  if (r > 0) return ExclusionResult::keep(r);
  counters.n2 += 1;
  return ExclusionResult::keep_unknown();
}

}  // namespace rootclus
