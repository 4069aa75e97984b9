#include "geolex/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>

#include <boost/math/distributions/students_t.hpp>

#include "geolex/error.hpp"
#include "geolex/ingest.hpp"
#include "geolex/text.hpp"

namespace geolex {

std::vector<double> rank_with_ties(std::span<const double> values) {
  if (values.empty()) throw Error(ErrorCode::insufficient_data, "cannot rank an empty list");
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i + 1;
    while (j < order.size() && values[order[j]] == values[order[i]]) ++j;
    // Positions i..j-1 hold ranks i+1..j; their mean is (i + 1 + j) / 2.
    double rank = static_cast<double>(i + 1 + j) / 2.0;
    for (std::size_t k = i; k < j; ++k) ranks[order[k]] = rank;
    i = j;
  }
  return ranks;
}

double spearman_p_value(double rho, std::size_t n) {
  if (std::abs(rho) >= 1.0) return 0.0;
  double df = static_cast<double>(n - 2);
  double t = rho * std::sqrt(df / (1.0 - rho * rho));
  boost::math::students_t dist(df);
  double p = 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t)));
  return std::clamp(p, 0.0, 1.0);
}

CorrelationResult spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw Error(ErrorCode::invalid_argument, "spearman: vectors differ in length");
  }
  const std::size_t n = x.size();
  if (n < 2) {
    throw Error(ErrorCode::insufficient_data,
                "spearman needs at least 2 paired values, got " + std::to_string(n));
  }
  auto rx = rank_with_ties(x);
  auto ry = rank_with_ties(y);
  // Mean rank is (n + 1) / 2 regardless of ties.
  const double mean = static_cast<double>(n + 1) / 2.0;
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double dx = rx[i] - mean;
    double dy = ry[i] - mean;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw Error(ErrorCode::undefined_correlation,
                "spearman undefined: one side has constant values");
  }
  CorrelationResult r;
  r.n = n;
  r.rho = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
  if (n >= kMinSampleForPValue) r.p_value = spearman_p_value(r.rho, n);
  return r;
}

CorrelationResult spearman(std::span<const std::optional<double>> x,
                           std::span<const std::optional<double>> y) {
  if (x.size() != y.size()) {
    throw Error(ErrorCode::invalid_argument, "spearman: vectors differ in length");
  }
  std::vector<double> px;
  std::vector<double> py;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] && y[i]) {
      px.push_back(*x[i]);
      py.push_back(*y[i]);
    }
  }
  return spearman(px, py);
}

namespace {

CategoryId require_category(const Matcher& matcher, std::string_view name) {
  auto id = matcher.find(name);
  if (!id) {
    throw Error(ErrorCode::not_found, "unknown category '" + std::string(name) +
                                          "' in lexicon '" + matcher.lexicon_name() + "'");
  }
  return *id;
}

}  // namespace

CategoryComparison compare_categories(const CorpusIndex& index, const Matcher& matcher,
                                      const ResolvedCategories& resolved,
                                      std::string_view a, std::string_view b) {
  CategoryComparison c;
  c.a = a;
  c.b = b;
  c.map_a = category_map(index, resolved, require_category(matcher, a));
  c.map_b = category_map(index, resolved, require_category(matcher, b));
  c.result = spearman(c.map_a.values, c.map_b.values);
  return c;
}

CategoryComparison compare_categories(const CorpusIndex& index, const Matcher& matcher,
                                      std::string_view a, std::string_view b) {
  return compare_categories(index, matcher, resolve_categories(index, matcher), a, b);
}

ExtremesReport correlation_extremes(const CorpusIndex& index, const Matcher& matcher,
                                    const ResolvedCategories& resolved, std::size_t k,
                                    unsigned workers) {
  const auto& cats = matcher.categories();
  if (cats.size() < 2) {
    throw Error(ErrorCode::insufficient_data, "need at least two categories");
  }
  if (k == 0) throw Error(ErrorCode::invalid_argument, "k must be >= 1");

  std::vector<ProportionVector> maps;
  maps.reserve(cats.size());
  for (const auto& c : cats) maps.push_back(category_map(index, resolved, c.id));

  struct Slot {
    std::size_t i, j;
    std::optional<CorrelationResult> result;
  };
  std::vector<Slot> slots;
  for (std::size_t i = 0; i < cats.size(); ++i) {
    for (std::size_t j = i + 1; j < cats.size(); ++j) slots.push_back({i, j, {}});
  }

  // Each worker fills a strided subset of slots; the reduction below reads
  // them in a fixed order, so scheduling cannot affect the result.
  auto evaluate = [&](std::size_t begin, std::size_t stride) {
    for (std::size_t s = begin; s < slots.size(); s += stride) {
      try {
        slots[s].result = spearman(maps[slots[s].i].values, maps[slots[s].j].values);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::undefined_correlation &&
            e.code() != ErrorCode::insufficient_data) {
          throw;
        }
      }
    }
  };
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, slots.size()));
  if (workers <= 1) {
    evaluate(0, 1);
  } else {
    std::vector<std::exception_ptr> failures(workers);
    {
      std::vector<std::jthread> pool;
      for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
          try {
            evaluate(w, workers);
          } catch (...) {
            failures[w] = std::current_exception();
          }
        });
      }
    }
    for (auto& f : failures) {
      if (f) std::rethrow_exception(f);
    }
  }

  ExtremesReport report;
  std::vector<CategoryPairReport> valid;
  for (const auto& s : slots) {
    ++report.pairs_evaluated;
    if (!s.result) {
      ++report.pairs_excluded;
      continue;
    }
    std::string a = cats[s.i].name;
    std::string b = cats[s.j].name;
    if (b < a) std::swap(a, b);
    valid.push_back({std::move(a), std::move(b), *s.result});
  }
  if (valid.empty()) {
    throw Error(ErrorCode::insufficient_data, "no category pair has a defined correlation");
  }

  auto by_name = [](const CategoryPairReport& x, const CategoryPairReport& y) {
    return std::tie(x.a, x.b) < std::tie(y.a, y.b);
  };
  auto n = std::min(k, valid.size());
  report.top = valid;
  std::sort(report.top.begin(), report.top.end(), [&](const auto& x, const auto& y) {
    if (x.result.rho != y.result.rho) return x.result.rho > y.result.rho;
    return by_name(x, y);
  });
  report.top.resize(n);
  report.bottom = std::move(valid);
  std::sort(report.bottom.begin(), report.bottom.end(), [&](const auto& x, const auto& y) {
    if (x.result.rho != y.result.rho) return x.result.rho < y.result.rho;
    return by_name(x, y);
  });
  report.bottom.resize(n);
  return report;
}

ExtremesReport correlation_extremes(const CorpusIndex& index, const Matcher& matcher,
                                    std::size_t k, unsigned workers) {
  return correlation_extremes(index, matcher, resolve_categories(index, matcher), k,
                              workers);
}

StateValues parse_state_csv(std::string_view text) {
  StateValues out{};
  std::array<bool, kStateCount> seen{};
  std::size_t line_no = 0;
  std::size_t start = 0;
  bool first = true;
  while (start < text.size()) {
    auto nl = text.find('\n', start);
    auto end = nl == std::string_view::npos ? text.size() : nl;
    auto line = trim(text.substr(start, end - start));
    start = end + 1;
    ++line_no;
    if (line.empty()) continue;
    auto comma = line.find(',');
    if (comma == std::string_view::npos) {
      throw FormatError("expected 'usps,value'", line_no);
    }
    auto key = trim(line.substr(0, comma));
    auto value_text = trim(line.substr(comma + 1));
    if (value_text.find(',') != std::string_view::npos) {
      throw FormatError("expected exactly two columns", line_no);
    }
    auto state = normalize_state(key);
    if (!state) {
      if (first) {  // header row
        first = false;
        continue;
      }
      throw FormatError("unknown state '" + std::string(key) + "'", line_no);
    }
    first = false;
    auto idx = state->index();
    if (seen[idx]) {
      throw FormatError("duplicate state " + std::string(state->usps()), line_no);
    }
    seen[idx] = true;
    if (value_text.empty()) continue;
    std::string v(value_text);
    std::size_t used = 0;
    double parsed = 0.0;
    try {
      parsed = std::stod(v, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != v.size() || !std::isfinite(parsed)) {
      throw FormatError("bad value '" + v + "'", line_no);
    }
    out[idx] = parsed;
  }
  return out;
}

}  // namespace geolex
