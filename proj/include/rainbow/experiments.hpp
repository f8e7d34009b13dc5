#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <initializer_list>
#include <limits>
#include <mutex>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "json.hpp"
#include "rainbow/components.hpp"
#include "rainbow/envelopes.hpp"
#include "rainbow/errors.hpp"
#include "rainbow/finders/rdfs.hpp"
#include "rainbow/finders/sprinkle.hpp"
#include "rainbow/finders/subcritical.hpp"
#include "rainbow/finders/supercritical.hpp"
#include "rainbow/forest.hpp"
#include "rainbow/oracles.hpp"
#include "rainbow/random_models.hpp"

namespace rainbow::experiments {

using Json = nlohmann::ordered_json;

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

/// How repetitions are run. Results never depend on `threads`.
struct Settings {
  std::uint64_t seed = 1;
  unsigned threads = 1;
  /// Keep one JSON record per repetition.
  bool raw = false;
};

/// One output line: a statistic over repetitions, or a `check:` line holding
/// the outcome of an envelope test.
struct SummaryRow {
  std::string experiment;
  std::string row;
  std::string params;
  double mean = 0.0;
  double std = 0.0;
  std::size_t reps = 0;
  double reference = kNaN;
  std::string reference_formula;
  std::string envelope;
  std::string status = "info";  // pass | fail | info
  double eps3n = kNaN;
};

struct Report {
  std::vector<SummaryRow> rows;
  Json records = Json::array();

  bool passed() const {
    return std::none_of(rows.begin(), rows.end(), [](const SummaryRow& r) { return r.status == "fail"; });
  }

  void append(Report other) {
    rows.insert(rows.end(), other.rows.begin(), other.rows.end());
    for (auto& record : other.records) records.push_back(std::move(record));
  }
};

namespace detail {

inline std::string format_number(double x) {
  if (std::isnan(x)) return "";
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.10g", x);
  return buffer;
}

inline std::string params(std::initializer_list<std::pair<const char*, double>> items) {
  std::string out;
  for (const auto& [key, value] : items) {
    if (!out.empty()) out += ';';
    out += key;
    out += '=';
    out += format_number(value);
  }
  return out;
}

// FNV-1a, to give every (experiment, row) its own family of streams.
inline std::uint64_t stream_tag(const std::string& experiment, const std::string& row) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char ch : experiment + '/' + row) {
    h ^= static_cast<unsigned char>(ch);
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline RngStream rep_stream(const Settings& s, std::uint64_t tag, std::size_t rep) {
  return RngStream(s.seed, rep).child(tag);
}

/// out[i] = fn(i) for i < count, spread over `threads` workers.
template <typename T, typename Fn>
std::vector<T> parallel_map(std::size_t count, unsigned threads, Fn fn) {
  std::vector<T> out(count);
  const auto workers = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, threads), count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&]() {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          out[i] = fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          next = count;
        }
      }
    });
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  return out;
}

struct Moments {
  double mean = 0.0;
  double std = 0.0;
};

inline Moments moments(const std::vector<double>& values) {
  Moments m;
  if (values.empty()) return m;
  for (double v : values) m.mean += v;
  m.mean /= static_cast<double>(values.size());
  if (values.size() < 2) return m;
  double ss = 0.0;
  for (double v : values) ss += (v - m.mean) * (v - m.mean);
  m.std = std::sqrt(ss / static_cast<double>(values.size() - 1));
  return m;
}

inline SummaryRow summarise(const std::string& experiment, const std::string& row, const std::string& params,
                            const std::vector<double>& values, double reference, const std::string& formula) {
  const Moments m = moments(values);
  SummaryRow out;
  out.experiment = experiment;
  out.row = row;
  out.params = params;
  out.mean = m.mean;
  out.std = m.std;
  out.reps = values.size();
  out.reference = reference;
  out.reference_formula = formula;
  return out;
}

inline SummaryRow check(const std::string& experiment, const std::string& name, const std::string& params,
                        double observed, double threshold, const std::string& envelope, bool ok, std::size_t reps) {
  SummaryRow out;
  out.experiment = experiment;
  out.row = "check:" + name;
  out.params = params;
  out.mean = observed;
  out.reps = reps;
  out.reference = threshold;
  out.envelope = envelope;
  out.status = ok ? "pass" : "fail";
  return out;
}

inline double fraction_if(const std::vector<double>& values, auto predicate) {
  if (values.empty()) return 0.0;
  const auto hits = std::count_if(values.begin(), values.end(), predicate);
  return static_cast<double>(hits) / static_cast<double>(values.size());
}

inline void record(Report& report, const Settings& s, const std::string& experiment, const std::string& row,
                   const std::vector<double>& values) {
  if (!s.raw) return;
  for (std::size_t i = 0; i < values.size(); ++i)
    report.records.push_back(Json{{"experiment", experiment}, {"row", row}, {"rep", i}, {"value", values[i]}});
}

inline void require_reps(std::size_t reps) {
  if (reps == 0) throw Error(ErrorCode::InvalidConfig, "reps must be positive");
}

// Mean of an estimator against an exact value, in standard errors.
inline SummaryRow exact_check(const std::string& experiment, const std::string& name, const std::string& params,
                              const SummaryRow& estimate, double exact, double sigmas) {
  const double se = estimate.std / std::sqrt(static_cast<double>(estimate.reps));
  const double gap = std::abs(estimate.mean - exact);
  const bool ok = se == 0.0 ? gap < 1e-12 : gap <= sigmas * se;
  return check(experiment, name, params, estimate.mean, exact,
               "|mean - exact| <= " + format_number(sigmas) + " standard errors", ok, estimate.reps);
}

}  // namespace detail

/// Min{|T1|, |T2|} after deleting a uniform edge of a uniform tree on m
/// vertices, one row per m. Consecutive m that quadruple must see the mean
/// roughly double, and m <= 7 is compared with exhaustive enumeration.
inline Report exp_min_split(const std::vector<std::size_t>& ms, std::size_t reps, const Settings& s) {
  detail::require_reps(reps);
  const std::string name = "min_split";
  Report report;
  std::vector<std::pair<std::size_t, double>> means;
  for (std::size_t m : ms) {
    if (m < 2) throw Error(ErrorCode::InvalidConfig, "min_split needs m >= 2");
    const std::string row = "m=" + std::to_string(m);
    const std::uint64_t tag = detail::stream_tag(name, row);
    const auto values = detail::parallel_map<double>(reps, s.threads, [&](std::size_t i) {
      RngStream rng = detail::rep_stream(s, tag, i);
      const RootedForest f = sample_uniform_forest(m, 1, rng);
      const std::size_t w = 1 + rng.below(m - 1);
      const std::size_t below = subtree_sizes(f)[w];
      return static_cast<double>(std::min(below, m - below));
    });
    const std::string p = detail::params({{"m", static_cast<double>(m)}, {"t", 1}});
    SummaryRow summary = detail::summarise(name, row, p, values, std::sqrt(static_cast<double>(m)), "sqrt(m)");
    report.rows.push_back(summary);
    detail::record(report, s, name, row, values);
    if (m <= 7)
      report.rows.push_back(detail::exact_check(name, "exact " + row, p, summary,
                                                exact_min_deleted_component_expectation(m).value(),
                                                envelopes::kExactSigmas));
    means.emplace_back(m, summary.mean);
  }
  for (std::size_t i = 1; i < means.size(); ++i) {
    if (means[i].first != 4 * means[i - 1].first) continue;
    const double ratio = means[i].second / means[i - 1].second;
    const bool ok = ratio >= envelopes::kMinSplitRatioLow && ratio <= envelopes::kMinSplitRatioHigh;
    report.rows.push_back(detail::check(
        name, "ratio m=" + std::to_string(means[i].first) + "/" + std::to_string(means[i - 1].first), "", ratio, 2.0,
        "[" + detail::format_number(envelopes::kMinSplitRatioLow) + ";" +
            detail::format_number(envelopes::kMinSplitRatioHigh) + "]",
        ok, reps));
  }
  return report;
}

/// Bridge number of a uniform edge of a uniform forest in F(m, t), checked
/// one-sidedly against m / (t + 1), and exactly for enumerable m.
inline Report exp_bridge_number(std::size_t m, std::size_t t, std::size_t reps, const Settings& s) {
  detail::require_reps(reps);
  if (t < 1 || t >= m) throw Error(ErrorCode::InvalidConfig, "bridge_number needs 1 <= t < m");
  const std::string name = "bridge_number";
  const std::string row = "m=" + std::to_string(m) + " t=" + std::to_string(t);
  const std::uint64_t tag = detail::stream_tag(name, row);
  const auto values = detail::parallel_map<double>(reps, s.threads, [&](std::size_t i) {
    RngStream rng = detail::rep_stream(s, tag, i);
    const RootedForest f = sample_uniform_forest(m, t, rng);
    const std::size_t w = t + rng.below(m - t);
    return static_cast<double>(subtree_sizes(f)[w]);
  });
  const std::string p = detail::params({{"m", static_cast<double>(m)}, {"t", static_cast<double>(t)}});
  const double bound = static_cast<double>(m) / static_cast<double>(t + 1);
  Report report;
  SummaryRow summary = detail::summarise(name, row, p, values, bound, "m/(t+1)");
  report.rows.push_back(summary);
  detail::record(report, s, name, row, values);
  report.rows.push_back(detail::check(name, "upper " + row, p, summary.mean, envelopes::kBridgeSlack * bound,
                                      "mean <= " + detail::format_number(envelopes::kBridgeSlack) + "*m/(t+1)",
                                      summary.mean <= envelopes::kBridgeSlack * bound, reps));
  if (m <= 7)
    report.rows.push_back(detail::exact_check(name, "exact " + row, p, summary, exact_mean_bridge_number(m, t).value(),
                                              envelopes::kSmallCaseSigmas));
  return report;
}

/// Min{B_e, B_e'} for two distinct uniform edges of F(m, t).
inline Report exp_min_double_bridge_at(std::size_t m, std::size_t t, std::size_t reps, const Settings& s) {
  detail::require_reps(reps);
  if (t < 1 || m < t + 2) throw Error(ErrorCode::InvalidConfig, "min_double_bridge needs at least two forest edges");
  const std::string name = "min_double_bridge";
  const std::string row = "m=" + std::to_string(m) + " t=" + std::to_string(t);
  const std::uint64_t tag = detail::stream_tag(name, row);
  const std::size_t edges = m - t;
  const auto values = detail::parallel_map<double>(reps, s.threads, [&](std::size_t i) {
    RngStream rng = detail::rep_stream(s, tag, i);
    const RootedForest f = sample_uniform_forest(m, t, rng);
    const std::size_t a = rng.below(edges);
    std::size_t b = rng.below(edges - 1);
    if (b >= a) ++b;
    const std::vector<std::size_t> size = subtree_sizes(f);
    return static_cast<double>(std::min(size[t + a], size[t + b]));
  });
  const std::string p = detail::params({{"m", static_cast<double>(m)}, {"t", static_cast<double>(t)}});
  Report report;
  SummaryRow summary =
      detail::summarise(name, row, p, values, static_cast<double>(m) / static_cast<double>(t), "m/t");
  report.rows.push_back(summary);
  detail::record(report, s, name, row, values);
  if (m <= 7)
    report.rows.push_back(detail::exact_check(name, "exact " + row, p, summary,
                                              exact_mean_min_double_bridge(m, t).value(), envelopes::kSmallCaseSigmas));
  return report;
}

/// exp_min_double_bridge_at over m = ratio * t for each t; the normalised
/// mean (mean * t / m) must strictly decrease along the grid.
inline Report exp_min_double_bridge(std::size_t ratio, const std::vector<std::size_t>& ts, std::size_t reps,
                                    const Settings& s) {
  const std::string name = "min_double_bridge";
  Report report;
  std::vector<double> normalised;
  for (std::size_t t : ts) {
    Report one = exp_min_double_bridge_at(ratio * t, t, reps, s);
    const SummaryRow& summary = one.rows.front();
    SummaryRow scaled = summary;
    scaled.row = "normalised t=" + std::to_string(t);
    scaled.mean = summary.mean / static_cast<double>(ratio);
    scaled.std = summary.std / static_cast<double>(ratio);
    scaled.reference = 1.0;
    scaled.reference_formula = "1 (o(1) expected)";
    normalised.push_back(scaled.mean);
    report.append(std::move(one));
    report.rows.push_back(scaled);
  }
  bool decreasing = true;
  for (std::size_t i = 1; i < normalised.size(); ++i) decreasing = decreasing && normalised[i] < normalised[i - 1];
  if (normalised.size() >= 2)
    report.rows.push_back(detail::check(name, "decreasing", detail::params({{"ratio", static_cast<double>(ratio)}}),
                                        normalised.back(), normalised.front(),
                                        "mean*t/m strictly decreasing in t", decreasing, reps));
  return report;
}

/// Law of the order of the tree of root 0 in F(m, t), against the Borel(1)
/// probabilities for k = 1..max_k.
inline Report exp_tree_size_law(std::size_t m, std::size_t t, std::size_t reps, const Settings& s,
                                std::size_t max_k = envelopes::kBorelMaxK) {
  detail::require_reps(reps);
  if (t < 1 || t > m) throw Error(ErrorCode::InvalidConfig, "tree_size_law needs 1 <= t <= m");
  const std::string name = "tree_size_law";
  const std::string base = "m=" + std::to_string(m) + " t=" + std::to_string(t);
  const std::uint64_t tag = detail::stream_tag(name, base);
  const auto sizes = detail::parallel_map<double>(reps, s.threads, [&](std::size_t i) {
    RngStream rng = detail::rep_stream(s, tag, i);
    return static_cast<double>(tree_orders(sample_uniform_forest(m, t, rng))[0]);
  });
  const std::string p = detail::params({{"m", static_cast<double>(m)}, {"t", static_cast<double>(t)}});
  Report report;
  report.rows.push_back(detail::summarise(name, "root_tree_order " + base, p, sizes, kNaN, ""));
  detail::record(report, s, name, "root_tree_order " + base, sizes);
  for (std::size_t k = 1; k <= max_k; ++k) {
    const double freq = detail::fraction_if(sizes, [k](double x) { return x == static_cast<double>(k); });
    SummaryRow row;
    row.experiment = name;
    row.row = "pmf k=" + std::to_string(k);
    row.params = p + ";k=" + std::to_string(k);
    row.mean = freq;
    row.std = std::sqrt(freq * (1.0 - freq));
    row.reps = reps;
    row.reference = borel_pmf(k);
    row.reference_formula = "exp(-k)*k^(k-1)/k!";
    row.envelope = "|freq - pmf| <= " + detail::format_number(envelopes::kBorelTolerance);
    row.status = std::abs(freq - row.reference) <= envelopes::kBorelTolerance ? "pass" : "fail";
    report.rows.push_back(row);
  }
  return report;
}

/// Largest rainbow tree across the phase transition in G_c(n, (1+ε)/n): the
/// subcritical finder for ε < 0, the core/forest pipeline for ε > 0 (falling
/// back to the subcritical finder on an empty core), plus the uncoloured
/// largest component for ε > 0.
inline Report exp_phase_transition(Vertex n, Colour c, const std::vector<double>& epsilons, std::size_t reps,
                                   const Settings& s) {
  detail::require_reps(reps);
  const std::string name = "phase_transition";
  Report report;
  struct Outcome {
    double tree = 0.0;
    double largest = 0.0;
    bool fallback = false;
    PipelineReport pipeline;
  };
  for (double eps : epsilons) {
    if (eps == 0.0 || !(std::abs(eps) < 1.0)) throw Error(ErrorCode::InvalidEpsilon, "need 0 < |eps| < 1");
    const std::string suffix = "eps=" + detail::format_number(eps);
    const std::uint64_t tag = detail::stream_tag(name, suffix);
    const auto outcomes = detail::parallel_map<Outcome>(reps, s.threads, [&](std::size_t i) {
      RngStream rng = detail::rep_stream(s, tag, i);
      const ColouredGraph g = sample_coloured_gnp(n, (1.0 + eps) / n, c, rng);
      Outcome out;
      out.largest = static_cast<double>(connected_components(g).largest_size());
      if (eps < 0) {
        out.tree = static_cast<double>(subcritical_rainbow_tree(g).order);
        return out;
      }
      try {
        SupercriticalResult r = supercritical_rainbow_tree(g);
        out.tree = static_cast<double>(r.tree.order);
        out.pipeline = std::move(r.report);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::EmptyCore) throw;
        out.fallback = true;
        out.tree = static_cast<double>(subcritical_rainbow_tree(g).order);
      }
      return out;
    });
    std::vector<double> trees, largest;
    for (const Outcome& o : outcomes) {
      trees.push_back(o.tree);
      largest.push_back(o.largest);
    }
    const double abs_eps = std::abs(eps);
    const double eps3n = abs_eps * abs_eps * abs_eps * n;
    const std::string p = detail::params({{"n", static_cast<double>(n)}, {"c", static_cast<double>(c)}, {"eps", eps}});
    const double needed = envelopes::kRunsInEnvelope;

    if (eps < 0) {
      const double reference = 2.0 / (eps * eps) * std::log(eps3n);
      SummaryRow tree = detail::summarise(name, "tree " + suffix, p, trees, reference, "(2/eps^2)*ln(eps^3*n)");
      tree.eps3n = eps3n;
      report.rows.push_back(tree);
      std::vector<double> ratios;
      for (double x : trees) ratios.push_back(x / reference);
      SummaryRow ratio = detail::summarise(name, "ratio " + suffix, p, ratios, 1.0, "order/((2/eps^2)*ln(eps^3*n))");
      ratio.eps3n = eps3n;
      report.rows.push_back(ratio);
      const double inside = detail::fraction_if(ratios, [](double r) {
        return r >= envelopes::kSubcriticalRatioLow && r <= envelopes::kSubcriticalRatioHigh;
      });
      SummaryRow verdict = detail::check(name, "subcritical " + suffix, p, inside, needed,
                                         "ratio in [" + detail::format_number(envelopes::kSubcriticalRatioLow) + ";" +
                                             detail::format_number(envelopes::kSubcriticalRatioHigh) +
                                             "] in >= " + detail::format_number(needed) + " of runs",
                                         inside >= needed - 1e-12, reps);
      verdict.eps3n = eps3n;
      report.rows.push_back(verdict);
    } else {
      const double reference = 2.0 * eps * n;
      SummaryRow tree = detail::summarise(name, "tree " + suffix, p, trees, reference, "2*eps*n");
      tree.eps3n = eps3n;
      report.rows.push_back(tree);
      const double floor = envelopes::kSupercriticalFraction * reference;
      const double above = detail::fraction_if(trees, [floor](double x) { return x >= floor; });
      SummaryRow verdict = detail::check(name, "supercritical " + suffix, p, above, needed,
                                         "order >= " + detail::format_number(envelopes::kSupercriticalFraction) +
                                             "*2*eps*n in >= " + detail::format_number(needed) + " of runs",
                                         above >= needed - 1e-12, reps);
      verdict.eps3n = eps3n;
      report.rows.push_back(verdict);
      SummaryRow giant = detail::summarise(name, "largest_component " + suffix, p, largest, reference, "2*eps*n");
      giant.eps3n = eps3n;
      giant.envelope = "|mean/reference - 1| <= " + detail::format_number(envelopes::kLargestComponentTolerance);
      giant.status = std::abs(giant.mean / reference - 1.0) <= envelopes::kLargestComponentTolerance ? "pass" : "fail";
      report.rows.push_back(giant);
      const auto fallbacks = std::count_if(outcomes.begin(), outcomes.end(), [](const Outcome& o) { return o.fallback; });
      SummaryRow fallback;
      fallback.experiment = name;
      fallback.row = "empty_core_fallback " + suffix;
      fallback.params = p;
      fallback.mean = static_cast<double>(fallbacks) / static_cast<double>(reps);
      fallback.reps = reps;
      fallback.eps3n = eps3n;
      report.rows.push_back(fallback);
    }
    if (s.raw)
      for (std::size_t i = 0; i < outcomes.size(); ++i) {
        const Outcome& o = outcomes[i];
        Json rec{{"experiment", name}, {"row", suffix}, {"rep", i}, {"tree_order", o.tree},
                 {"largest_component", o.largest}};
        if (eps > 0) {
          rec["fallback"] = o.fallback;
          const PipelineReport& r = o.pipeline;
          rec["pipeline"] = Json{{"lu_order", r.lu_order},
                                 {"core_order", r.core_order},
                                 {"core_size", r.core_size},
                                 {"non_unique_core_edges", r.non_unique_core_edges},
                                 {"hat_core_order", r.hat_core_order},
                                 {"colour_set_size", r.colour_set_size},
                                 {"x1", r.x1},
                                 {"x2", r.x2},
                                 {"x3", r.x3},
                                 {"x4", r.x4},
                                 {"final_tree_order", r.final_tree_order}};
        }
        report.records.push_back(std::move(rec));
      }
  }
  return report;
}

/// Largest-component fraction of G(n, d/n) against the survival probability.
inline Report exp_giant_benchmark(Vertex n, double d, std::size_t reps, const Settings& s) {
  detail::require_reps(reps);
  if (!(d > 0.0) || d > n) throw Error(ErrorCode::InvalidConfig, "need 0 < d <= n");
  const std::string name = "giant";
  const std::string row = "d=" + detail::format_number(d);
  const std::uint64_t tag = detail::stream_tag(name, row);
  const auto values = detail::parallel_map<double>(reps, s.threads, [&](std::size_t i) {
    RngStream rng = detail::rep_stream(s, tag, i);
    return static_cast<double>(connected_components(sample_gnp(n, d / n, rng)).largest_size()) / n;
  });
  const std::string p = detail::params({{"n", static_cast<double>(n)}, {"d", d}});
  const double gamma = survival_probability(d);
  Report report;
  SummaryRow summary = detail::summarise(name, row, p, values, gamma, "gamma(d): 1-gamma=exp(-gamma*d)");
  if (d <= 1.0) {
    summary.envelope = "mean < " + detail::format_number(envelopes::kSubcriticalGiantFraction);
    summary.status = summary.mean < envelopes::kSubcriticalGiantFraction ? "pass" : "fail";
  } else {
    summary.envelope = "|mean - gamma| <= " + detail::format_number(envelopes::kGiantTolerance);
    summary.status = std::abs(summary.mean - gamma) <= envelopes::kGiantTolerance ? "pass" : "fail";
  }
  report.rows.push_back(summary);
  detail::record(report, s, name, row, values);
  if (gamma > envelopes::kDenseGiantFraction)
    report.rows.push_back(detail::check(name, "dense " + row, p, summary.mean, envelopes::kDenseGiantFraction,
                                        "mean > " + detail::format_number(envelopes::kDenseGiantFraction),
                                        summary.mean > envelopes::kDenseGiantFraction, reps));
  return report;
}

/// Long rainbow paths and cycles in G_c(n, d/n) = G1 ∪ G2 with p1 = (d−1)/n:
/// a faithful rainbow DFS path in G1 (query budget ⌈δ²rn/8⌉) and the sprinkled
/// cycle, both against (1−δ) min{n, c}.
inline Report exp_cycle(Vertex n, Colour c, double d, double delta, std::size_t reps, const Settings& s) {
  detail::require_reps(reps);
  if (!(delta > 0.0 && delta < 1.0)) throw Error(ErrorCode::InvalidConfig, "need 0 < delta < 1");
  if (!(d > 1.0) || d > n) throw Error(ErrorCode::InvalidConfig, "need 1 < d <= n");
  if (c < 1) throw Error(ErrorCode::InvalidConfig, "need at least one colour");
  const std::string name = "cycle";
  const std::string base = "d=" + detail::format_number(d) + " delta=" + detail::format_number(delta);
  const std::uint64_t tag = detail::stream_tag(name, base);
  struct Outcome {
    double faithful_path = 0.0;
    double greedy_path = 0.0;
    double cycle = 0.0;
  };
  const auto outcomes = detail::parallel_map<Outcome>(reps, s.threads, [&](std::size_t i) {
    RngStream rng = detail::rep_stream(s, tag, i);
    const SprinkleRounds rounds = sample_sprinkle_rounds(n, c, d / n, (d - 1.0) / n, rng);
    Outcome out;
    out.faithful_path = static_cast<double>(
        rdfs_longest_path(rounds.first, {.mode = ExplorationMode::Faithful, .delta = delta}).edges.size());
    const SprinkledCycleRun run = sprinkled_cycle(rounds, delta);
    out.greedy_path = static_cast<double>(run.path.edges.size());
    out.cycle = run.cycle ? static_cast<double>(run.cycle->length()) : 0.0;
    return out;
  });
  std::vector<double> faithful, greedy, cycles;
  for (const Outcome& o : outcomes) {
    faithful.push_back(o.faithful_path);
    greedy.push_back(o.greedy_path);
    cycles.push_back(o.cycle);
  }
  const double r = std::min<double>(n, c);
  const double target = (1.0 - delta) * r;
  const std::string p = detail::params(
      {{"n", static_cast<double>(n)}, {"c", static_cast<double>(c)}, {"d", d}, {"d1", d - 1.0}, {"delta", delta}});
  const std::string formula = "(1-delta)*min(n,c)";
  Report report;
  report.rows.push_back(detail::summarise(name, "faithful_path " + base, p, faithful, target, formula));
  report.rows.push_back(detail::summarise(name, "greedy_path " + base, p, greedy, target, formula));
  report.rows.push_back(detail::summarise(name, "cycle " + base, p, cycles, target, formula));
  const double path_rate = detail::fraction_if(faithful, [target](double x) { return x >= target; });
  report.rows.push_back(detail::check(name, "path " + base, p, path_rate, envelopes::kPathSuccess,
                                      "faithful path >= (1-delta)*min(n,c) in >= " +
                                          detail::format_number(envelopes::kPathSuccess) + " of runs",
                                      path_rate >= envelopes::kPathSuccess - 1e-12, reps));
  const double cycle_rate = detail::fraction_if(cycles, [target](double x) { return x >= target; });
  report.rows.push_back(detail::check(name, "cycle " + base, p, cycle_rate, envelopes::kCycleSuccess,
                                      "cycle >= (1-delta)*min(n,c) in >= " +
                                          detail::format_number(envelopes::kCycleSuccess) + " of runs",
                                      cycle_rate >= envelopes::kCycleSuccess - 1e-12, reps));
  if (s.raw)
    for (std::size_t i = 0; i < outcomes.size(); ++i)
      report.records.push_back(Json{{"experiment", name},
                                    {"row", base},
                                    {"rep", i},
                                    {"faithful_path", outcomes[i].faithful_path},
                                    {"greedy_path", outcomes[i].greedy_path},
                                    {"cycle", outcomes[i].cycle}});
  return report;
}

// ---- suites ----

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"min-split", "bridge", "double-bridge", "borel",
                                              "phase",     "giant",  "cycle",         "all"};
  return names;
}

/// Workload overrides; unset fields keep the defaults of envelopes.hpp.
struct SuiteOptions {
  std::optional<std::size_t> reps;
  std::optional<Vertex> n;
};

inline Report run_suite(const std::string& suite, const SuiteOptions& o, const Settings& s) {
  auto reps = [&](std::size_t fallback) { return o.reps.value_or(fallback); };
  auto size = [&](Vertex fallback) { return o.n.value_or(fallback); };
  namespace E = envelopes;
  if (suite == "min-split") return exp_min_split(E::kMinSplitGrid, reps(E::kMinSplitReps), s);
  if (suite == "bridge") {
    Report r = exp_bridge_number(E::kBridgeM, E::kBridgeT, reps(E::kBridgeReps), s);
    r.append(exp_bridge_number(5, 2, reps(E::kSmallCaseReps), s));
    return r;
  }
  if (suite == "double-bridge") {
    Report r = exp_min_double_bridge(E::kDoubleBridgeRatio, E::kDoubleBridgeRoots, reps(E::kDoubleBridgeReps), s);
    r.append(exp_min_double_bridge_at(5, 2, reps(E::kSmallCaseReps), s));
    return r;
  }
  if (suite == "borel") return exp_tree_size_law(E::kBorelM, E::kBorelT, reps(E::kBorelReps), s);
  if (suite == "phase") {
    const Vertex n = size(E::kPhaseN);
    return exp_phase_transition(n, n, E::kPhaseEpsilons, reps(E::kPhaseReps), s);
  }
  if (suite == "giant") {
    Report r;
    for (double d : E::kGiantDegrees) r.append(exp_giant_benchmark(size(E::kGiantN), d, reps(E::kGiantReps), s));
    return r;
  }
  if (suite == "cycle") {
    const Vertex n = size(E::kCycleN);
    return exp_cycle(n, n, E::kCycleD, E::kCycleDelta, reps(E::kCycleReps), s);
  }
  if (suite == "all") {
    Report r;
    for (const std::string& name : suite_names())
      if (name != "all") r.append(run_suite(name, o, s));
    return r;
  }
  throw Error(ErrorCode::InvalidConfig, "unknown suite " + suite);
}

// ---- output ----

inline Json to_json(const SummaryRow& r) {
  auto number = [](double x) { return std::isnan(x) ? Json(nullptr) : Json(x); };
  return Json{{"experiment", r.experiment}, {"row", r.row},
              {"params", r.params},         {"mean", number(r.mean)},
              {"std", number(r.std)},       {"reps", r.reps},
              {"reference", number(r.reference)}, {"reference_formula", r.reference_formula},
              {"envelope", r.envelope},     {"status", r.status},
              {"eps3n", number(r.eps3n)}};
}

namespace detail {

inline std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char ch : text) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + '"';
}

}  // namespace detail

/// CSV with the resolved configuration as a `# {json}` first line.
inline void write_csv(std::ostream& out, const Json& config, const std::vector<SummaryRow>& rows) {
  out << "# " << config.dump() << '\n';
  out << "experiment,row,params,mean,std,reps,reference,reference_formula,envelope,status,eps3n\n";
  using detail::csv_field;
  using detail::format_number;
  for (const SummaryRow& r : rows)
    out << csv_field(r.experiment) << ',' << csv_field(r.row) << ',' << csv_field(r.params) << ','
        << format_number(r.mean) << ',' << format_number(r.std) << ',' << r.reps << ',' << format_number(r.reference)
        << ',' << csv_field(r.reference_formula) << ',' << csv_field(r.envelope) << ',' << r.status << ','
        << format_number(r.eps3n) << '\n';
}

inline Json raw_json(const Json& config, const Report& report) {
  Json rows = Json::array();
  for (const SummaryRow& r : report.rows) rows.push_back(to_json(r));
  return Json{{"config", config}, {"rows", rows}, {"records", report.records}};
}

}  // namespace rainbow::experiments
