#pragma once

#include "davies/builder.hpp"
#include "davies/rank.hpp"
#include "davies/theta.hpp"

#include "json.hpp"

namespace davies {

using OrderedJson = nlohmann::ordered_json;

OrderedJson to_json(const IntervalValue& v);
OrderedJson to_json(const PairCertificate& c);
OrderedJson to_json(const VerifyReport& r);
OrderedJson to_json(const RunReport& r);
OrderedJson to_json(const SReport& r);
OrderedJson to_json(const Certificate& c);
OrderedJson to_json(const LowerBoundReport& r);

std::string to_json_string(const OrderedJson& j);

}  // namespace davies
