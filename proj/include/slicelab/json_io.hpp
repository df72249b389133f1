#pragma once

#include <json.hpp>

#include "slicelab/capacity.hpp"
#include "slicelab/equivalence.hpp"
#include "slicelab/family.hpp"
#include "slicelab/oracle.hpp"
#include "slicelab/order.hpp"
#include "slicelab/regions.hpp"
#include "slicelab/slicer.hpp"

namespace slicelab {

using Json = nlohmann::json;

/// Geometry only: {"components":[{"vertices","lift","closed"}],"tolerance"}.
Json diagram_to_json(const SliceDiagram& d);
/// Geometry plus crossings, regions and validity.
Json diagram_details(const SliceDiagram& d);
/// Throws InvalidInput on schema violations; builds crossings.
SliceDiagram diagram_from_json(const Json& j);

Json to_json(const EquivalenceKey& key);
Json to_json(const MorseTable& table);
Json to_json(const CapacityStatus& status);
Json to_json(const CapacityReport& report);
Json to_json(const SliceVerdict& verdict);
Json to_json(const Analysis& analysis);
Json to_json(const RelationVerdict& verdict);
Json to_json(const ChainBound& bound);

Json to_json(const GeneratingFamily& family);
/// Accepts {"terms":[{"c","p","q","s","t"}]}; extra keys are ignored.
GeneratingFamily family_from_json(const Json& j);

Json to_json(const Classification& c);
Json to_json(const SliceResult& slice);
Json to_json(const LevelSummary& level);
Json to_json(const TransitionEvent& event);
Json to_json(const SweepResult& sweep);
Json to_json(const OracleResult& oracle);

}  // namespace slicelab
