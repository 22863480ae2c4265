#include "aligneval/stats.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <set>

#include "aligneval/error.h"

namespace aligneval {

std::string_view to_string(Level level) {
  return level == Level::Summary ? "summary" : "system";
}

std::string_view to_string(Coefficient coefficient) {
  return coefficient == Coefficient::Pearson ? "pearson" : "spearman";
}

std::string_view to_string(SummaryMode mode) {
  return mode == SummaryMode::Averaged ? "averaged" : "pooled";
}

double pearson(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw std::invalid_argument("pearson: length mismatch");
  if (xs.size() < 2) throw std::invalid_argument("pearson: need at least two points");
  double mx = 0.0, my = 0.0;
  for (double x : xs) mx += x;
  for (double y : ys) my += y;
  mx /= static_cast<double>(xs.size());
  my /= static_cast<double>(ys.size());
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double dx = xs[i] - mx;
    double dy = ys[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) throw DegenerateError("correlation undefined: zero variance");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

std::vector<double> average_ranks(std::span<const double> xs) {
  std::vector<std::size_t> order(xs.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
  std::vector<double> ranks(xs.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && xs[order[j + 1]] == xs[order[i]]) ++j;
    double avg = static_cast<double>(i + j) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
    i = j + 1;
  }
  return ranks;
}

double spearman(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw std::invalid_argument("spearman: length mismatch");
  auto rx = average_ranks(xs);
  auto ry = average_ranks(ys);
  return pearson(rx, ry);
}

namespace {

double coefficient_of(Coefficient c, std::span<const double> xs, std::span<const double> ys) {
  return c == Coefficient::Pearson ? pearson(xs, ys) : spearman(xs, ys);
}

}  // namespace

CorrelationReport correlate(const ScoreMatrix& a, const ScoreMatrix& b, Level level,
                            Coefficient coefficient, SummaryMode mode) {
  auto rep = correlate_report(a, b, level, coefficient, mode);
  if (!rep.defined)
    throw DegenerateError("correlation between '" + a.metric_name() + "' and '" +
                          b.metric_name() + "' is undefined: zero variance");
  return rep;
}

CorrelationReport correlate_report(const ScoreMatrix& a, const ScoreMatrix& b, Level level,
                                   Coefficient coefficient, SummaryMode mode) {
  // Shared cells, grouped both ways. Maps keep the iteration deterministic.
  std::map<std::string, std::vector<std::pair<double, double>>> by_system;
  std::map<std::string, std::vector<std::pair<double, double>>> by_instance;
  std::vector<std::pair<double, double>> pooled;
  for (const auto& [key, va] : a.entries()) {
    auto vb = b.get(key.first, key.second);
    if (!vb) continue;
    by_system[key.first].emplace_back(va, *vb);
    by_instance[key.second].emplace_back(va, *vb);
    pooled.emplace_back(va, *vb);
  }
  if (by_system.size() < 2 || by_instance.empty())
    throw ValidationError("insufficient overlap between '" + a.metric_name() + "' and '" +
                          b.metric_name() + "': need at least 2 shared systems and 1 shared instance");

  CorrelationReport rep;
  rep.metric_a = a.metric_name();
  rep.metric_b = b.metric_name();
  rep.level = level;
  rep.coefficient = coefficient;
  rep.mode = mode;

  auto split = [](const std::vector<std::pair<double, double>>& pts) {
    std::pair<std::vector<double>, std::vector<double>> out;
    for (const auto& [x, y] : pts) {
      out.first.push_back(x);
      out.second.push_back(y);
    }
    return out;
  };

  if (level == Level::System) {
    std::vector<double> xs, ys;
    for (const auto& [sys, pts] : by_system) {
      double sx = 0.0, sy = 0.0;
      for (const auto& [x, y] : pts) {
        sx += x;
        sy += y;
      }
      xs.push_back(sx / static_cast<double>(pts.size()));
      ys.push_back(sy / static_cast<double>(pts.size()));
    }
    rep.n = static_cast<int>(xs.size());
    try {
      rep.value = coefficient_of(coefficient, xs, ys);
    } catch (const DegenerateError&) {
      rep.defined = false;
    }
    return rep;
  }

  if (mode == SummaryMode::Pooled) {
    auto [xs, ys] = split(pooled);
    rep.n = static_cast<int>(xs.size());
    try {
      rep.value = coefficient_of(coefficient, xs, ys);
    } catch (const DegenerateError&) {
      rep.defined = false;
    }
    return rep;
  }

  double sum = 0.0;
  for (const auto& [inst, pts] : by_instance) {
    if (pts.size() < 2) {
      ++rep.skipped;
      continue;
    }
    auto [xs, ys] = split(pts);
    try {
      sum += coefficient_of(coefficient, xs, ys);
      ++rep.n;
    } catch (const DegenerateError&) {
      ++rep.skipped;
    }
  }
  if (rep.n == 0)
    rep.defined = false;
  else
    rep.value = sum / rep.n;
  return rep;
}

std::vector<DeltaRow> delta_table(const std::map<std::string, ScoreMatrix>& metrics,
                                  const std::string& anchor_a, const std::string& anchor_b,
                                  Level level, Coefficient coefficient, SummaryMode mode) {
  auto ia = metrics.find(anchor_a);
  auto ib = metrics.find(anchor_b);
  if (ia == metrics.end()) throw ValidationError("anchor metric '" + anchor_a + "' not found");
  if (ib == metrics.end()) throw ValidationError("anchor metric '" + anchor_b + "' not found");

  auto corr = [&](const ScoreMatrix& m, const ScoreMatrix& anchor) -> std::optional<double> {
    auto rep = correlate_report(m, anchor, level, coefficient, mode);
    if (!rep.defined) return std::nullopt;
    return rep.value;
  };

  std::vector<std::string> order = {anchor_a, anchor_b};
  for (const auto& [name, m] : metrics)
    if (name != anchor_a && name != anchor_b) order.push_back(name);

  std::vector<DeltaRow> rows;
  for (const auto& name : order) {
    const auto& m = metrics.at(name);
    DeltaRow row{name, corr(m, ia->second), corr(m, ib->second), std::nullopt};
    bool anchor = name == anchor_a || name == anchor_b;
    if (!anchor && row.corr_a && row.corr_b) row.delta = *row.corr_a - *row.corr_b;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace aligneval
