#pragma once

#include <cstddef>
#include <cstdio>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "pcm/analysis.hpp"
#include "pcm/core.hpp"
#include "pcm/gmm.hpp"

// JSON schema, version 1. Every top-level document carries
// "schema_version" and "kind" ("estimate", "ranking", "comparison",
// "analysis"). Indices are 0-based. Doubles are written with enough digits
// to round-trip exactly.
//
//   estimate:   {method, c, lambda, normalized,
//                elements: [{index, label, omega_star, delta, omega, domega}]}
//   ranking:    {sigma, order: [idx], pairs: [{i, k, verdict}], warnings: [[i, k]]}
//   comparison: {sigma, gmm: estimate, em: estimate, gmm_ranking: ranking,
//                em_ranking: ranking, interval_overlap: [bool],
//                mean_rank_reversal_pairs: [[i, k]], resolved}
//   analysis:   {estimates: [estimate]}

namespace pcm {

inline constexpr int kSchemaVersion = 1;

enum class ReportFormat { TEXT, JSON };

using nlohmann::json;

namespace detail {

inline Method method_from_string(const std::string& s) {
  if (s == "gmm") return Method::GMM;
  if (s == "em") return Method::EM;
  if (s == "gmm_transposed") return Method::GMM_TRANSPOSED;
  throw Error(ErrorCode::ParseError, "unknown method: " + s);
}

inline Verdict verdict_from_string(const std::string& s) {
  if (s == "reliable_gt") return Verdict::RELIABLE_GT;
  if (s == "reliable_lt") return Verdict::RELIABLE_LT;
  if (s == "indistinguishable") return Verdict::INDISTINGUISHABLE;
  throw Error(ErrorCode::ParseError, "unknown verdict: " + s);
}

inline ElementLabels labels_for(const std::optional<ElementLabels>& labels, std::size_t n) {
  return labels && labels->size() == n ? *labels : ElementLabels::numbered(n);
}

inline json pairs_to_json(const std::vector<IndexPair>& pairs) {
  json out = json::array();
  for (const auto& p : pairs) out.push_back({p.first, p.second});
  return out;
}

inline std::vector<IndexPair> pairs_from_json(const json& j) {
  std::vector<IndexPair> out;
  for (const auto& p : j) out.push_back({p.at(0).get<std::size_t>(), p.at(1).get<std::size_t>()});
  return out;
}

}  // namespace detail

inline json to_json(const PriorityEstimate& e, const std::optional<ElementLabels>& labels = std::nullopt) {
  const auto names = detail::labels_for(labels, e.size());
  json elements = json::array();
  for (std::size_t i = 0; i < e.size(); ++i)
    elements.push_back({{"index", i},
                        {"label", names[i]},
                        {"omega_star", e.omega_star[i]},
                        {"delta", e.delta[i]},
                        {"omega", e.omega[i]},
                        {"domega", e.domega[i]}});
  return {{"kind", "estimate"},
          {"method", to_string(e.method)},
          {"c", e.c},
          {"lambda", e.lambda},
          {"normalized", e.normalized},
          {"elements", std::move(elements)}};
}

inline json to_json(const RankingReport& r) {
  json pairs = json::array();
  for (const auto& p : r.pair_verdicts)
    pairs.push_back({{"i", p.first}, {"k", p.second}, {"verdict", to_string(p.verdict)}});
  return {{"kind", "ranking"},
          {"sigma", r.sigma},
          {"order", r.order},
          {"pairs", std::move(pairs)},
          {"warnings", detail::pairs_to_json(r.warnings)}};
}

inline json to_json(const MethodComparison& mc, const std::optional<ElementLabels>& labels = std::nullopt) {
  return {{"kind", "comparison"},
          {"sigma", mc.gmm_report.sigma},
          {"gmm", to_json(mc.gmm, labels)},
          {"em", to_json(mc.em, labels)},
          {"gmm_ranking", to_json(mc.gmm_report)},
          {"em_ranking", to_json(mc.em_report)},
          {"interval_overlap", mc.interval_overlap},
          {"mean_rank_reversal_pairs", detail::pairs_to_json(mc.mean_rank_reversal_pairs)},
          {"resolved", mc.resolved}};
}

inline PriorityEstimate estimate_from_json(const json& j) {
  PriorityEstimate e;
  e.method = detail::method_from_string(j.at("method").get<std::string>());
  e.c = j.at("c").get<double>();
  e.lambda = j.at("lambda").get<double>();
  e.normalized = j.at("normalized").get<bool>();
  for (const auto& el : j.at("elements")) {
    e.omega_star.push_back(el.at("omega_star").get<double>());
    e.delta.push_back(el.at("delta").get<double>());
    e.omega.push_back(el.at("omega").get<double>());
    e.domega.push_back(el.at("domega").get<double>());
  }
  return e;
}

inline RankingReport ranking_from_json(const json& j) {
  RankingReport r;
  r.sigma = j.at("sigma").get<double>();
  r.order = j.at("order").get<std::vector<std::size_t>>();
  for (const auto& p : j.at("pairs"))
    r.pair_verdicts.push_back({p.at("i").get<std::size_t>(), p.at("k").get<std::size_t>(),
                               detail::verdict_from_string(p.at("verdict").get<std::string>())});
  r.warnings = detail::pairs_from_json(j.at("warnings"));
  return r;
}

inline MethodComparison comparison_from_json(const json& j) {
  MethodComparison mc;
  mc.gmm = estimate_from_json(j.at("gmm"));
  mc.em = estimate_from_json(j.at("em"));
  mc.gmm_report = ranking_from_json(j.at("gmm_ranking"));
  mc.em_report = ranking_from_json(j.at("em_ranking"));
  mc.interval_overlap = j.at("interval_overlap").get<std::vector<bool>>();
  mc.mean_rank_reversal_pairs = detail::pairs_from_json(j.at("mean_rank_reversal_pairs"));
  mc.resolved = j.at("resolved").get<bool>();
  return mc;
}

namespace detail {

inline std::string versioned(json body) {
  json out = {{"schema_version", kSchemaVersion}};
  out.update(body);
  return out.dump(2) + "\n";
}

// Code points, not bytes: labels such as "ω_1" are multi-byte in UTF-8.
inline std::size_t display_width(const std::string& s) {
  std::size_t w = 0;
  for (unsigned char ch : s)
    if ((ch & 0xC0) != 0x80) ++w;
  return w;
}

inline std::string pad(const std::string& s, std::size_t width) {
  const auto w = display_width(s);
  return w >= width ? s : s + std::string(width - w, ' ');
}

inline std::string fixed3(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  return buf;
}

inline std::string interval(double x, double dx) { return fixed3(x) + " ± " + fixed3(dx); }

inline std::size_t label_width(const ElementLabels& names) {
  std::size_t w = 0;
  for (const auto& n : names.names()) w = std::max(w, display_width(n));
  return w;
}

inline std::string estimate_text(const PriorityEstimate& e, const ElementLabels& names) {
  std::ostringstream out;
  out << "method: " << to_string(e.method) << (e.normalized ? " (normalized)" : " (unnormalized)")
      << ", C = " << e.c << ", " << (e.method == Method::EM ? "λ_max" : "λ") << " = " << fixed3(e.lambda)
      << "\n";
  const auto lw = label_width(names);
  out << pad("", lw) << "  " << pad("ω ± Δω", 15) << "  " << pad("ω*", 7) << "  " << pad("Δ", 7)
      << "  Δω/ω\n";
  for (std::size_t i = 0; i < e.size(); ++i)
    out << pad(names[i], lw) << "  " << pad(interval(e.omega[i], e.domega[i]), 15) << "  "
        << pad(fixed3(e.omega_star[i]), 7) << "  " << pad(fixed3(e.delta[i]), 7) << "  "
        << fixed3(e.domega[i] / e.omega[i]) << "\n";
  return out.str();
}

inline std::string ranking_text(const RankingReport& r, const ElementLabels& names) {
  std::ostringstream out;
  out << "order:";
  for (std::size_t j = 0; j < r.order.size(); ++j) out << (j == 0 ? " " : " > ") << names[r.order[j]];
  out << "  (interval multiplier " << r.sigma << ")\n";
  out << "pair verdicts:\n";
  for (const auto& p : r.pair_verdicts) {
    out << "  " << names[p.first] << " vs " << names[p.second] << ": ";
    switch (p.verdict) {
      case Verdict::RELIABLE_GT: out << names[p.first] << " reliably greater"; break;
      case Verdict::RELIABLE_LT: out << names[p.second] << " reliably greater"; break;
      case Verdict::INDISTINGUISHABLE: out << "indistinguishable"; break;
    }
    out << "\n";
  }
  if (r.warnings.empty()) {
    out << "warnings: none\n";
  } else {
    out << "warnings:\n";
    for (const auto& w : r.warnings)
      out << "  " << names[w.first] << " / " << names[w.second]
          << ": mean ranking not supported by the error intervals\n";
  }
  return out.str();
}

inline std::vector<double> sum_normalized(std::vector<double> v) {
  const double s = std::accumulate(v.begin(), v.end(), 0.0);
  for (auto& x : v) x /= s;
  return v;
}

// Side-by-side table: plain means of both methods, then both with errors.
inline std::string side_by_side_text(const PriorityEstimate& gmm_raw, const PriorityEstimate& em_raw,
                                     const ElementLabels& names) {
  const auto gmm = normalize(gmm_raw);
  const auto em = normalize(em_raw);
  const auto original_gmm = sum_normalized(gmm.omega_star);
  const auto original_em = sum_normalized(em.omega_star);
  const auto lw = label_width(names);
  std::ostringstream out;
  out << pad("", lw) << "  " << pad("original GMM", 12) << "  " << pad("EM", 6) << "  "
      << pad("GMM actual", 15) << "  EM actual\n";
  for (std::size_t i = 0; i < gmm.size(); ++i)
    out << pad(names[i], lw) << "  " << pad(fixed3(original_gmm[i]), 12) << "  " << pad(fixed3(original_em[i]), 6)
        << "  " << pad(interval(gmm.omega[i], gmm.domega[i]), 15) << "  " << interval(em.omega[i], em.domega[i])
        << "\n";
  return out.str();
}

inline std::string comparison_text(const MethodComparison& mc, const ElementLabels& names) {
  std::ostringstream out;
  out << side_by_side_text(mc.gmm, mc.em, names);
  out << "\n";
  out << "interval overlap (GMM vs EM):";
  bool all = true;
  for (bool b : mc.interval_overlap) all = all && b;
  if (all) {
    out << " all elements\n";
  } else {
    out << "\n";
    for (std::size_t i = 0; i < mc.interval_overlap.size(); ++i)
      if (!mc.interval_overlap[i]) out << "  " << names[i] << ": GMM and EM intervals disjoint\n";
  }
  if (mc.mean_rank_reversal_pairs.empty()) out << "no mean-rank reversal pairs\n";
  for (const auto& p : mc.mean_rank_reversal_pairs) {
    const bool ok = mc.gmm_report.verdict(p.first, p.second) == Verdict::INDISTINGUISHABLE &&
                    mc.em_report.verdict(p.first, p.second) == Verdict::INDISTINGUISHABLE;
    out << "rank reversal pair: (" << p.first + 1 << ", " << p.second + 1 << ") — "
        << (ok ? "resolved" : "unresolved") << "\n";
  }
  out << "resolved: " << (mc.resolved ? "yes" : "no") << "\n";
  return out.str();
}

}  // namespace detail

inline std::string render_report(const PriorityEstimate& e, ReportFormat format,
                                 const std::optional<ElementLabels>& labels = std::nullopt) {
  if (format == ReportFormat::JSON) return detail::versioned(to_json(e, labels));
  return detail::estimate_text(e, detail::labels_for(labels, e.size()));
}

inline std::string render_report(const RankingReport& r, ReportFormat format,
                                 const std::optional<ElementLabels>& labels = std::nullopt) {
  if (format == ReportFormat::JSON) return detail::versioned(to_json(r));
  return detail::ranking_text(r, detail::labels_for(labels, r.size()));
}

inline std::string render_report(const MethodComparison& mc, ReportFormat format,
                                 const std::optional<ElementLabels>& labels = std::nullopt) {
  if (format == ReportFormat::JSON) return detail::versioned(to_json(mc, labels));
  return detail::comparison_text(mc, detail::labels_for(labels, mc.gmm.size()));
}

/// GMM and EM side by side, in the layout the analyze command prints.
inline std::string render_analysis(const PriorityEstimate& gmm, const PriorityEstimate& em, ReportFormat format,
                                   const std::optional<ElementLabels>& labels = std::nullopt) {
  if (format == ReportFormat::JSON) {
    json body = {{"kind", "analysis"}, {"estimates", json::array({to_json(gmm, labels), to_json(em, labels)})}};
    return detail::versioned(std::move(body));
  }
  return detail::side_by_side_text(gmm, em, detail::labels_for(labels, gmm.size()));
}

}  // namespace pcm
