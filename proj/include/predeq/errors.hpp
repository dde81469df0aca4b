#pragma once

#include <stdexcept>
#include <string>

namespace predeq {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed document text: bad JSON, unknown tokens, missing fields.
struct ParseError : Error {
  using Error::Error;
};

/// Well-formed input that violates schema constraints (unknown class,
/// operand outside the feature's domain, duplicate feature ids, ...).
struct SchemaError : Error {
  using Error::Error;
};

/// Malformed node graph: dangling child references, multiple parents,
/// unreachable nodes. Distinct from semantic violations, which are
/// reported through ValidationReport.
struct StructureError : Error {
  using Error::Error;
};

/// A stated precondition of an operation does not hold.
struct PreconditionError : Error {
  using Error::Error;
};

/// A configured resource guardrail (point count, term count, feature
/// count) would be exceeded; the caller must use a scalable algorithm.
struct CapExceeded : Error {
  using Error::Error;
};

}  // namespace predeq
