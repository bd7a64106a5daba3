#pragma once

#include <string>

#include <json.hpp>

#include "webgeom/analysis.hpp"
#include "webgeom/combinat.hpp"
#include "webgeom/connection.hpp"
#include "webgeom/relation.hpp"
#include "webgeom/web.hpp"

// JSON and text renderings of every report. Key order is fixed so that identical runs produce
// byte-identical output.
namespace webgeom::report {

using Json = nlohmann::ordered_json;

Json to_json(const combinat::BoundProfile& b);
combinat::BoundProfile bound_profile_from_json(const Json& j);

Json to_json(const OrderRecord& r);
OrderRecord order_record_from_json(const Json& j);

Json to_json(const OrdinarityReport& r);
OrdinarityReport ordinarity_from_json(const Json& j);

Json to_json(const ValidationReport& r);
Json to_json(const Residual& r);
Json to_json(const RelationVerdict& v);
Json to_json(const CobordVerdict& v);
Json to_json(const ConnectionData& cd);

std::string text(const combinat::BoundProfile& b);
std::string text(const OrdinarityReport& r);
std::string text(const RelationVerdict& v);
std::string text(const CobordVerdict& v);
std::string text(const ConnectionData& cd);

}  // namespace webgeom::report
