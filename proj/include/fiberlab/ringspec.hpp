#pragma once

#include <map>
#include <string>

#include "fiberlab/profile.hpp"

namespace fiberlab {

/// Parses the ring-spec text format (see docs/ringspec.md):
///
///   # comment
///   name: S0(1)
///   field: Q                  (or Fp(p), or Q((T)) for the fraction field
///                             of k[[T]])
///   vars: x, y
///   ideal: x^2, x*y           (repeatable; lines append)
///   ideal: y^2
///   cone_vars: Y
///   flags: finite_cm_type=true
///
/// Identifiers in `params` (e.g. alpha) are substituted into polynomials.
/// Errors are ParseError with the 1-based line and column.
RingPresentation parse_ringspec(const std::string& text, const std::map<std::string, Scalar>& params = {});

/// Reads and parses a file; an unreadable file is a ParseError at line 0.
RingPresentation load_ringspec(const std::string& path, const std::map<std::string, Scalar>& params = {});

}  // namespace fiberlab
