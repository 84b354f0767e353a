#pragma once

#include <json.hpp>

#include "ekac/constraints.hpp"
#include "ekac/statistics.hpp"

namespace ekac {

// nlohmann::json serializers (found by ADL). Doubles are written with full
// binary64 round-trip precision.

void to_json(nlohmann::json& j, const Witness& w);
void to_json(nlohmann::json& j, const ConstraintReport& r);
void to_json(nlohmann::json& j, const LimitTrend& t);
void to_json(nlohmann::json& j, const MomentGapReport& r);
void to_json(nlohmann::json& j, const KsResult& r);
void to_json(nlohmann::json& j, const ModelMoments& m);
void to_json(nlohmann::json& j, const TailSumReport& r);
void to_json(nlohmann::json& j, const IndependenceGap& g);
void to_json(nlohmann::json& j, const InferredConstants& c);
void to_json(nlohmann::json& j, const MonteCarloKs& r);

}  // namespace ekac
