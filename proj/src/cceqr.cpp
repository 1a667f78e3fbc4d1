// Copyright 2026 The CCEQR Authors
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

#include "cceqr/cceqr.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <unordered_map>

#include "cceqr/errors.hpp"
#include "cceqr/pivoted_qr.hpp"

namespace cceqr {
namespace {

// The first pivot of a cycle must clear max(delta, mu) in exact arithmetic.
// Freshly computed candidate norms and downdated gammas can disagree in the
// last few bits when the two are tied, so the check allows this much slack.
constexpr double kFirstPivotSlack = 1e-10;

double sum_squares(const double* x, Index n) {
  double s = 0.0;
  for (Index i = 0; i < n; ++i) s += x[i] * x[i];
  return s;
}

void swap_slots(CceqrState& st, Index a, Index b) {
  if (a == b) return;
  st.R.swap_columns(a, b);
  std::swap(st.gamma[static_cast<std::size_t>(a)], st.gamma[static_cast<std::size_t>(b)]);
  std::swap(st.p[static_cast<std::size_t>(a)], st.p[static_cast<std::size_t>(b)]);
}

// Brings the columns currently at positions src[0], src[1], ... to
// dst, dst+1, ... by swaps. Displaced columns take the vacated slots.
void gather_to(CceqrState& st, std::span<const Index> src, Index dst) {
  std::unordered_map<Index, Index> where;  // original slot -> current slot
  std::unordered_map<Index, Index> owner;  // current slot -> original slot
  where.reserve(src.size() * 2);
  owner.reserve(src.size() * 2);
  auto lookup = [](const std::unordered_map<Index, Index>& map, Index key) {
    auto it = map.find(key);
    return it == map.end() ? key : it->second;
  };
  for (std::size_t i = 0; i < src.size(); ++i) {
    const Index target = dst + static_cast<Index>(i);
    const Index cur = lookup(where, src[i]);
    if (cur == target) continue;
    const Index displaced = lookup(owner, target);
    swap_slots(st, cur, target);
    where[src[i]] = target;
    owner[target] = src[i];
    where[displaced] = cur;
    owner[cur] = displaced;
  }
}

}  // namespace

CceqrState initialize(const Matrix& a, Index k, double rho) {
  const Index kmax = std::min(a.rows(), a.cols());
  if (k < 1 || k > kmax)
    throw ArgumentError("k = " + std::to_string(k) + " outside [1, " + std::to_string(kmax) +
                        "]");
  if (!(rho > 0.0 && rho < 1.0))
    throw ArgumentError("rho = " + std::to_string(rho) + " outside (0, 1)");

  CceqrState st;
  st.R = a;
  st.gamma = column_norms_squared(a.view());
  st.p.resize(static_cast<std::size_t>(a.cols()));
  std::iota(st.p.begin(), st.p.end(), Index{0});
  st.wy = CompactWY::zeros(a.rows(), k);
  st.s = 0;
  st.t = a.cols();
  st.mu = 0.0;
  st.k = k;
  st.rho = rho;
  st.first_cycle = true;
  return st;
}

CollectOutput collect(CceqrState& st) {
  const Index m = st.rows();
  const Index s = st.s;
  const Index t = st.t;
  if (s >= st.k || t < 1) throw InvariantError("collect: no work (s >= k or empty tracked set)");

  CollectOutput co;
  const Index b = std::min(1 + static_cast<Index>(std::floor(st.rho * static_cast<double>(t - 1))), t);
  co.b = b;

  // Only the b + 1 leading entries of the descending order are needed.
  std::vector<Index> order(static_cast<std::size_t>(t));
  std::iota(order.begin(), order.end(), s);
  const Index need = std::min(b + 1, t);
  std::partial_sort(order.begin(), order.begin() + need, order.end(), [&](Index x, Index y) {
    const double gx = st.gamma[static_cast<std::size_t>(x)];
    const double gy = st.gamma[static_cast<std::size_t>(y)];
    return gx > gy || (gx == gy && x < y);
  });
  co.delta = b < t ? st.gamma[static_cast<std::size_t>(order[static_cast<std::size_t>(b)])] : 0.0;
  order.resize(static_cast<std::size_t>(b));

  if (st.first_cycle) {
    st.t = b;
    st.mu = co.delta;
    st.first_cycle = false;
  }

  Matrix work(m - s, b);
  for (Index j = 0; j < b; ++j) {
    const auto src = st.R.col(order[static_cast<std::size_t>(j)]).subspan(static_cast<std::size_t>(s));
    std::ranges::copy(src, work.col(j).begin());
  }
  const Index depth = std::min({m - s, b, st.k - s});
  co.phat.resize(static_cast<std::size_t>(b));
  co.tauhat.resize(static_cast<std::size_t>(depth));
  gb_qr_inplace(work.view(), depth, co.phat, co.tauhat);

  std::vector<Index> placed(static_cast<std::size_t>(b));
  for (Index j = 0; j < b; ++j)
    placed[static_cast<std::size_t>(j)] =
        order[static_cast<std::size_t>(co.phat[static_cast<std::size_t>(j)])];
  gather_to(st, placed, s);

  co.vhat = Matrix(m - s, depth);
  co.rhat = Matrix(depth, b);
  for (Index j = 0; j < depth; ++j) {
    co.vhat(j, j) = 1.0;
    for (Index i = j + 1; i < m - s; ++i) co.vhat(i, j) = work(i, j);
  }
  for (Index j = 0; j < b; ++j)
    for (Index i = 0; i <= std::min(j, depth - 1); ++i) co.rhat(i, j) = work(i, j);
  return co;
}

Index acceptance_count(std::span<const double> rhat_diag, double delta, double mu) {
  const double threshold = std::max(delta, mu);
  if (rhat_diag.empty()) return 0;
  Index c = 0;
  for (double d : rhat_diag) {
    if (d * d < threshold) break;
    ++c;
  }
  if (c == 0) {
    const double d0 = rhat_diag.front();
    if (d0 * d0 < threshold * (1.0 - kFirstPivotSlack))
      throw InvariantError("first candidate pivot does not clear the acceptance threshold");
    c = 1;
  }
  return c;
}

Index acceptance_count(const Matrix& rhat, double delta, double mu) {
  const Index depth = std::min(rhat.rows(), rhat.cols());
  std::vector<double> diag(static_cast<std::size_t>(depth));
  for (Index i = 0; i < depth; ++i) diag[static_cast<std::size_t>(i)] = rhat(i, i);
  return acceptance_count(diag, delta, mu);
}

double commit(CceqrState& st, const CollectOutput& co) {
  const Index m = st.rows();
  const Index s = st.s;
  const Index t = st.t;
  const Index depth = co.vhat.cols();
  if (co.vhat.rows() != m - s || static_cast<Index>(co.tauhat.size()) != depth || co.b > t)
    throw ContractError("commit: collect output does not match the current state");

  const Index c = std::min(acceptance_count(co.rhat, co.delta, st.mu), st.k - s);
  if (c < 1) throw InvariantError("commit: nothing accepted");

  ConstMatrixView vc = co.vhat.block(0, 0, m - s, c);
  const Matrix that = compact_wy_factor(vc, std::span<const double>(co.tauhat).first(static_cast<std::size_t>(c)));
  apply_qt(st.R.block(s, s, m - s, t), vc, that.view());
  for (Index j = s; j < s + c; ++j)
    for (Index i = j + 1; i < m; ++i) st.R(i, j) = 0.0;

  Matrix padded(m, c);
  for (Index j = 0; j < c; ++j)
    std::ranges::copy(co.vhat.col(j), padded.col(j).begin() + s);
  update_wy(st.wy, padded.view(), that.view());

  double largest = 0.0;
  for (Index j = s + c; j < s + t; ++j) {
    auto& g = st.gamma[static_cast<std::size_t>(j)];
    g = std::max(g - sum_squares(&st.R(s, j), c), 0.0);
    largest = std::max(largest, g);
  }
  st.s = s + c;
  st.t = t - c;
  return largest;
}

void expand(CceqrState& st, double threshold) {
  const Index m = st.rows();
  const Index n = st.cols();
  const Index lo = st.s + st.t;
  if (st.s >= st.k || lo >= n) throw InvariantError("expand: no untracked columns or s >= k");

  auto pick = [&](double thr, std::vector<Index>& chosen) {
    chosen.clear();
    double rest = 0.0;
    for (Index j = lo; j < n; ++j) {
      const double g = st.gamma[static_cast<std::size_t>(j)];
      if (g >= thr)
        chosen.push_back(j);
      else
        rest = std::max(rest, g);
    }
    return rest;
  };
  std::vector<Index> chosen;
  double rest = pick(threshold, chosen);
  // Nothing cleared M: rest is now the largest untracked norm.
  if (chosen.empty()) rest = pick(0.9 * rest, chosen);
  if (chosen.empty()) throw InvariantError("expand: untracked norms are all zero");

  gather_to(st, chosen, lo);
  const auto r = static_cast<Index>(chosen.size());
  apply_qt_block(st.R, st.wy, Range{0, m}, Range{lo, lo + r});
  for (Index j = lo; j < lo + r; ++j) {
    auto& g = st.gamma[static_cast<std::size_t>(j)];
    g = std::max(g - sum_squares(&st.R(0, j), st.s), 0.0);
  }
  st.t += r;
  st.mu = rest;
}

SelectionResult select_columns(const Matrix& a, Index k, const CceqrOptions& options) {
  CceqrState st = initialize(a, k, options.rho);
  const Index n = st.cols();
  auto notify = [&](CycleEvent e) {
    if (options.observer) options.observer(st, e);
  };

  SelectionResult res;
  res.k = k;
  while (st.s < k) {
    CollectOutput co = collect(st);
    notify(CycleEvent::collected);
    res.tracked_history.push_back(st.t);
    res.max_tracked = std::max(res.max_tracked, st.t);
    res.max_covered = std::max(res.max_covered, st.s + st.t);

    const Index before = st.s;
    const double largest = commit(st, co);
    res.commits_per_cycle.push_back(st.s - before);
    ++res.cycles;
    notify(CycleEvent::committed);

    if (st.s >= k) break;
    if (st.s + st.t < n) {
      expand(st, largest);
      res.max_covered = std::max(res.max_covered, st.s + st.t);
      notify(CycleEvent::expanded);
    } else {
      st.mu = 0.0;
    }
  }

  if (options.full) {
    const Index lo = st.s + st.t;
    if (lo < n) apply_qt_block(st.R, st.wy, Range{0, st.rows()}, Range{lo, n});
    res.R = std::move(st.R);
  }
  res.p = std::move(st.p);
  res.wy = std::move(st.wy);
  return res;
}

}  // namespace cceqr
