#include "ekac/report_json.hpp"

namespace ekac {

using nlohmann::json;

void to_json(json& j, const Witness& w) {
  j = json{{"n", w.n}, {"primes", w.primes}, {"T", w.value},
           {"bound", w.bound}, {"side", w.side}};
  if (w.index) {
    j["index"] = *w.index;
  }
}

void to_json(json& j, const ConstraintReport& r) {
  j = json{{"constraint", r.constraint},
           {"status", to_string(r.status)},
           {"inferred_constants", r.inferred_constants},
           {"witnesses", r.witnesses},
           {"truncated", r.truncated},
           {"checked", r.checked},
           {"upper_violations", r.upper_violations},
           {"lower_violations", r.lower_violations},
           {"notes", r.notes}};
}

void to_json(json& j, const LimitTrend& t) {
  j = json{{"primes", t.tuple.primes},
           {"n", t.n_values},
           {"T", t.values},
           {"eventually_decreasing", t.eventually_decreasing},
           {"strictly_decreasing", t.strictly_decreasing},
           {"threshold", t.threshold},
           {"consistent", t.consistent}};
}

void to_json(json& j, const MomentGapReport& r) {
  j = json{{"n", r.n},         {"r", r.r},     {"model", r.model},
           {"empirical", r.empirical}, {"gap", r.gap}, {"bound", r.bound},
           {"C", r.C},         {"pass", r.pass}};
}

void to_json(json& j, const KsResult& r) {
  j = json{{"n", r.n},
           {"ks", r.statistic},
           {"argmax", r.argmax},
           {"side", to_string(r.side)}};
}

void to_json(json& j, const ModelMoments& m) {
  j = json{{"n", m.n},
           {"alpha", m.alpha},
           {"primes", m.primes},
           {"b_n", m.b_n},
           {"a_n_sq", m.a_n_sq},
           {"sn_pmf", m.sn_pmf},
           {"raw_moments", m.raw_moments}};
}

void to_json(json& j, const TailSumReport& r) {
  j = json{{"n", r.n},           {"value", r.value},
           {"raw_sum", r.raw_sum}, {"primes", r.primes},
           {"D", r.D},           {"violations", r.violations}};
}

void to_json(json& j, const IndependenceGap& g) {
  j = json{{"n", g.n},
           {"primes", g.primes},
           {"joint", g.joint},
           {"marginals", g.marginals},
           {"product_of_marginals", g.product_of_marginals},
           {"gap", g.gap}};
}

void to_json(json& j, const InferredConstants& c) {
  j = json{{"C_min", c.C_min},
           {"D_min", c.D_min},
           {"T_min", c.T_min},
           {"lower_violations", c.lower_violations},
           {"truncated", c.truncated}};
}

void to_json(json& j, const MonteCarloKs& r) {
  j = json{{"n", r.n},
           {"draws", r.draws},
           {"ks", r.statistic},
           {"dkw_band", r.band},
           {"confidence", r.confidence}};
}

}  // namespace ekac
