#pragma once

#include <json.hpp>
#include <random>

#include "classical.hpp"
#include "na_norm.hpp"

namespace nakt {

using Json = nlohmann::ordered_json;

/// A parsed problem instance. Exactly one of ultra/metric is populated,
/// depending on the field kind (NA kinds validate the strong triangle
/// inequality, archimedean kinds the ordinary one).
struct Instance {
    FieldSpec field;
    std::optional<UltraSpace> ultra;
    std::optional<MetricSpace> metric;
    FreeVector vector;
    NaNormOptions options;
};

FieldSpec parse_field_spec(const Json& j);
Json field_spec_json(const FieldSpec& spec);

Instance parse_instance(const Json& j);
Instance parse_instance_text(const std::string& text);

Json cost_json(const Cost& c);
Json certificate_json(const NormCertificate& cert, const FieldSpec& field);
NormCertificate parse_certificate(const Json& j, const FieldSpec& field);

Json real_plan_json(const RealPlan& plan);

/// Random valid ultra-metric instance built from a random dendrogram with
/// heights drawn from `scales` distinct rational values; deterministic under
/// the seed.
Json generate_instance(int points, int scales, std::uint64_t seed,
                       const std::string& field_kind = "p-adic-rational");

/// Random ultra-metric matrix only (shared by the generator and the tests).
UltraSpace random_ultrametric(std::mt19937_64& rng, int points,
                              const std::vector<Rational>& scale_pool,
                              bool pseudometric_allowed = false);

}  // namespace nakt
