#pragma once

#include "treeprod/labelling.hpp"

#include <json.hpp>

#include <iosfwd>

namespace treeprod {

using Json = nlohmann::ordered_json;

// {r, colors, levels: [{j, families: {color: [{id, intervals: [[lo,hi],...]}]}}]}, rationals as "p/q".
// Whole-space elements carry "whole": true; plane elements list boxes as [[xlo,xhi],[ylo,yhi]].
Json covering_to_json(const CoveringSequence& seq);
CoveringSequence covering_from_json(const Json& j, const CoveringGeometry& geo);

// {levels, vertexCount, edgeCounts, delta, c1, c2}
Json graph_summary(const ApproxGraph& g, const DeltaEstimate& delta, const VisualConstants& vc);

// Per vertex and color: the page sequence and its binary re-encoding.
Json embedding_json(const Stage2& s, const BinaryStage& b);

Json check_json(const CheckResult& c);

// Two-space indentation and a trailing newline.
void write_json(std::ostream& os, const Json& j);

}  // namespace treeprod
