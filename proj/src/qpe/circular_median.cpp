// Copyright 2026 The phaseforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "phaseforge/qpe/circular_median.hpp"

#include <algorithm>
#include <stdexcept>

namespace phaseforge {

namespace {

void check_args(std::size_t grid, std::size_t r) {
  if (grid < 4 || grid % 4 != 0) throw std::invalid_argument("median grid must be a multiple of 4");
  if (r % 2 == 0) throw std::invalid_argument("median needs an odd number of samples");
}

bool in_mid(std::size_t x, std::size_t grid) { return x >= grid / 4 && x < 3 * grid / 4; }

// Binomial pmf rows 0..r for success probability p, stored flat:
// t[n * (r + 1) + k] = P(Bin(n, p) = k).
void pmf_table(double p, std::size_t r, std::vector<double>& t) {
  const std::size_t w = r + 1;
  t.assign(w * w, 0.0);
  t[0] = 1.0;
  for (std::size_t n = 1; n <= r; ++n) {
    for (std::size_t k = 0; k <= n; ++k) {
      double v = 0;
      if (k < n) v += (1 - p) * t[(n - 1) * w + k];
      if (k > 0) v += p * t[(n - 1) * w + k - 1];
      t[n * w + k] = v;
    }
  }
}

// Upper tails in place of a pmf table: t[n * (r + 1) + c] = P(Bin(n, p) >= c)
// for c in 0..r; c = r + 1 is always 0 and handled by the caller.
void tail_table(double p, std::size_t r, std::vector<double>& t) {
  pmf_table(p, r, t);
  const std::size_t w = r + 1;
  for (std::size_t n = 0; n <= r; ++n) {
    double acc = 0;
    for (std::size_t c = r + 1; c-- > 0;) {
      acc += t[n * w + c];
      t[n * w + c] = acc;
    }
  }
}

double ratio(double num, double den) { return den > 0 ? std::clamp(num / den, 0.0, 1.0) : 0.0; }

// Cumulative distribution of the cut-at-zero branch:
// F(g) = P(#{x <= g} >= h and #{x in mid} >= h).
class BranchCdf {
 public:
  BranchCdf(std::span<const double> q, std::size_t r) : q_(q), r_(r), h_((r + 1) / 2) {
    const std::size_t grid = q.size();
    prefix_.assign(grid + 1, 0.0);
    prefix_mid_.assign(grid + 1, 0.0);
    for (std::size_t x = 0; x < grid; ++x) {
      prefix_[x + 1] = prefix_[x] + q[x];
      prefix_mid_[x + 1] = prefix_mid_[x] + (in_mid(x, grid) ? q[x] : 0.0);
    }
    total_ = prefix_[grid];
  }

  // g may be -1 (empty prefix).
  double operator()(long g) const {
    if (g < 0) return 0.0;
    const auto gi = static_cast<std::size_t>(g) + 1;
    const double pa = prefix_mid_[gi];
    const double pb = std::max(0.0, prefix_[gi] - pa);
    const double pc = std::max(0.0, prefix_mid_.back() - pa);
    const double pd = std::max(0.0, total_ - pa - pb - pc);
    const std::size_t w = r_ + 1;
    pmf_table(ratio(pa, pa + pb + pc + pd), r_, a_);
    pmf_table(ratio(pb, pb + pc + pd), r_, b_);
    tail_table(ratio(pc, pc + pd), r_, c_);
    double f = 0;
    for (std::size_t a = 0; a <= r_; ++a) {
      const double pa_a = a_[r_ * w + a];
      if (pa_a == 0) continue;
      if (a >= h_) {
        f += pa_a;
        continue;
      }
      const std::size_t need = h_ - a;
      const std::size_t n = r_ - a;
      double hit = 0;
      for (std::size_t b = need; b <= n; ++b) hit += b_[n * w + b] * c_[(n - b) * w + need];
      f += pa_a * hit;
    }
    return f;
  }

  // Probability of the cyclic interval [lo, lo + len) under this branch.
  double interval(std::size_t lo, std::size_t len) const {
    const auto grid = static_cast<long>(q_.size());
    const auto l = static_cast<long>(lo);
    const auto n = static_cast<long>(len);
    if (n >= grid) return (*this)(grid - 1);
    if (l + n <= grid) return (*this)(l + n - 1) - (*this)(l - 1);
    return (*this)(grid - 1) - (*this)(l - 1) + (*this)(l + n - 1 - grid);
  }

 private:
  std::span<const double> q_;
  std::size_t r_, h_;
  std::vector<double> prefix_, prefix_mid_;
  double total_ = 0;
  mutable std::vector<double> a_, b_, c_;  // scratch for the binomial tables
};

std::vector<double> rotated(std::span<const double> q) {
  const std::size_t grid = q.size();
  std::vector<double> out(grid);
  for (std::size_t y = 0; y < grid; ++y) out[y] = q[(y + grid - grid / 2) % grid];
  return out;
}

}  // namespace

std::size_t circular_median(std::span<const std::size_t> samples, std::size_t grid) {
  const std::size_t r = samples.size();
  check_args(grid, r);
  const std::size_t h = (r + 1) / 2;
  const auto mid = static_cast<std::size_t>(
      std::count_if(samples.begin(), samples.end(), [&](std::size_t x) { return in_mid(x, grid); }));
  std::vector<std::size_t> s(samples.begin(), samples.end());
  const std::size_t shift = mid >= h ? 0 : grid / 2;
  for (auto& x : s) {
    if (x >= grid) throw std::invalid_argument("sample outside the grid");
    x = (x + shift) % grid;
  }
  std::nth_element(s.begin(), s.begin() + static_cast<long>(h - 1), s.end());
  return (s[h - 1] + grid - shift) % grid;
}

std::vector<double> circular_median_distribution(std::span<const double> q, std::size_t r) {
  const std::size_t grid = q.size();
  check_args(grid, r);
  const std::vector<double> q_rot = rotated(q);
  const BranchCdf direct(q, r);
  const BranchCdf shifted(q_rot, r);
  std::vector<double> out(grid, 0.0);
  double prev_d = 0, prev_s = 0;
  for (std::size_t g = 0; g < grid; ++g) {
    const double fd = direct(static_cast<long>(g));
    const double fs = shifted(static_cast<long>(g));
    out[g] += fd - prev_d;
    out[(g + grid - grid / 2) % grid] += fs - prev_s;
    prev_d = fd;
    prev_s = fs;
  }
  return out;
}

double circular_median_arc_probability(std::span<const double> q, std::size_t r, std::size_t lo,
                                       std::size_t len) {
  const std::size_t grid = q.size();
  check_args(grid, r);
  len = std::min(grid, len);
  lo %= grid;
  const std::vector<double> q_rot = rotated(q);
  return BranchCdf(q, r).interval(lo, len) +
         BranchCdf(q_rot, r).interval((lo + grid / 2) % grid, len);
}

double circular_median_window_probability(std::span<const double> q, std::size_t r,
                                          std::size_t center, std::size_t half_width) {
  const std::size_t grid = q.size();
  check_args(grid, r);
  const std::size_t len = std::min(grid, 2 * half_width + 1);
  const std::size_t lo = (center % grid + grid - half_width % grid) % grid;
  return circular_median_arc_probability(q, r, lo, len);
}

}  // namespace phaseforge
