#pragma once

#include <string>

#include "predeq/model.hpp"

namespace predeq {

/// Tree document, format_version 1. See README for the field layout.
std::string serializeTree(const DecisionTree& tree);
DecisionTree deserializeTree(const std::string& text);

/// Assignment document: {"format_version":1, "literals":[...]} using the
/// same literal encoding as tree edges. Needs the schema of the tree the
/// assignment is evaluated against.
std::string serializeAssignment(const Schema& schema, const PartialAssignment& a);
PartialAssignment deserializeAssignment(const Schema& schema, const std::string& text);

DecisionTree readTreeFile(const std::string& path);
void writeTreeFile(const std::string& path, const DecisionTree& tree);
PartialAssignment readAssignmentFile(const Schema& schema, const std::string& path);

/// Inline shorthand accepted by the CLI: {x1:0,x2:1}. Keys are feature
/// names (or x<i> for feature id i); values are parsed per the domain.
PartialAssignment parseInlineAssignment(const Schema& schema, const std::string& text);

}  // namespace predeq
