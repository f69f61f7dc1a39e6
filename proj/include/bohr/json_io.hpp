#pragma once

// JSON file formats. Rationals travel as "p/q" strings so coefficients stay
// exact bit-for-bit; complex numbers as {re, im}; angles in radians.

#include "bohr/config.hpp"
#include "bohr/equivalence.hpp"
#include "bohr/expsum.hpp"
#include "bohr/kronecker.hpp"
#include "bohr/translate.hpp"
#include "bohr/zeta.hpp"

#include <json.hpp>

#include <string>

namespace bohr::io {

using json = nlohmann::ordered_json;

json system_to_json(const FrequencySystem& sys);
json system_to_json(const IntegralSystem& sys);
FrequencySystem system_from_json(const json& j);

// An exp-sum file embeds its system plus {coeffs, kind}.
json expsum_to_json(const ExpSum& f);
ExpSum expsum_from_json(const json& j);

json verdict_to_json(const EquivalenceVerdict& v);
json star_to_json(const StarReport& rep);
json tau_to_json(const TauCandidate& c);
json instance_to_json(const KroneckerInstance& inst);
json supnorm_to_json(const SupNormReport& rep);
json budget_to_json(const TranslateBudget& b);
json translate_to_json(const TranslateResult& r);
json infimum_to_json(const InfimumReport& r);
json liouville_translate_to_json(const LiouvilleTranslateReport& r);
json small_zeta_to_json(const SmallZetaReport& r);
json config_to_json(const RunConfig& c);

void write_json_file(const std::string& path, const json& j);
json read_json_file(const std::string& path);

}  // namespace bohr::io
