#pragma once

#include <json.hpp>

#include "twistsha/bkratio.hpp"
#include "twistsha/hypotheses.hpp"

namespace twistsha::cli {

// All machine output is JSON with sorted keys and big integers as decimal
// strings, so consumers never overflow and identical invocations are
// byte-identical.
using json = nlohmann::json;

json to_json(const Tri& t);
json to_json(const Discriminant& d);
json context_json(const TwistContext& ctx);
json report_json(const TwistContext& ctx, const ConditionReport& rep);
json certificate_json(const RatioCertificate& cert);
json verdict_json(const Verdict& v);

std::string dump(const json& j);

}  // namespace twistsha::cli
