#pragma once

/// \file
/// JSON and CSV formats. Every number is written as a decimal string so files
/// survive a change of working precision.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "holo/counterexample.hpp"
#include "holo/criterion.hpp"
#include "holo/divided_diff.hpp"
#include "holo/function_model.hpp"
#include "holo/interpolation.hpp"
#include "holo/mobius.hpp"

namespace holo::io {

using json = nlohmann::ordered_json;

json to_json(const ApComplex& z);
/// {"re": "...", "im": "..."}; integers are accepted, binary floats are not.
ApComplex complex_from_json(const json& j, int precision_bits);

/// "re,im" or "re" (imaginary part 0).
ApComplex parse_complex(std::string_view text, int precision_bits);

// ---------------------------------------------------------------- nodes

/// {"precision_bits": b?, "nodes": [{"re", "im"}, ...]}. Parsed at
/// max(precision_bits, b). Throws Error(configuration) for an empty list.
NodeSequence nodes_from_json(const json& j, int precision_bits);
json nodes_to_json(const NodeSequence& nodes);

/// "family:<kind>:<params>:<count>" or a path to a node file. Kinds:
///   line:a,b,c        a Re z + b Im z + c = 0
///   circle:x,y,r      centre x + iy, radius r
///   golden            the unit circle
///   integers          eta_j = j
///   random:r          seeded uniform points in |z| < r
/// Families other than random ignore the seed.
NodeSequence load_nodes(std::string_view source, int precision_bits, std::uint64_t seed);
/// Family part of a spec, for germ lookups; Error(no_germ) for lists.
NodeFamily parse_family(std::string_view spec, int precision_bits);

// ------------------------------------------------------------- functions

/// {"precision_bits"?, "max_order"?, "coeffs": [{"k", "l", "re", "im"}]}.
TaylorSeries2 series_from_json(const json& j, int precision_bits);
json series_to_json(const TaylorSeries2& f);

/// "builtin:<spec>" or a path to a function file. Builtins:
///   exp_sum[:M]   exp(z_1 + z_2)
///   expcos[:M]    exp(z_1) cos(z_2)
///   poly:k,l,re,im;...
///   randpoly:D    seeded random polynomial of degree D
/// M defaults to `max_order`.
TaylorSeries2 load_series(std::string_view source, std::size_t max_order, int precision_bits,
                          std::uint64_t seed);

/// One-variable kernels: default (conj z / (1 + |z|^2)), conj, z, const:re,im,
/// gq:q (conj z^q / (1+|z|^2)^q).
ScalarFunction load_kernel(std::string_view spec, int precision_bits);

// ------------------------------------------------------------- reports

void write_table_csv(std::ostream& os, const DividedDiffTable& table);
json table_to_json(const DividedDiffTable& table);

void write_convergence_csv(std::ostream& os, const std::vector<ConvergenceRow>& rows);
json convergence_to_json(const std::vector<ConvergenceRow>& rows);

void write_profile_csv(std::ostream& os, const CriterionProfile& profile);
json profile_to_json(const CriterionProfile& profile);

json report_to_json(const InterpolantReport& report);

/// Per-point rows: N, both coordinates of z, |identity residual|, |f - E_N|.
void write_sweep_header(std::ostream& os);
void write_sweep_row(std::ostream& os, std::size_t n, const Point2& z, const ApReal& residual,
                     const ApReal& error);

json sequence_to_json(const AdversarialSequence& seq, const std::string& kernel_name);
/// Reads back the nodes and stage log written by sequence_to_json.
AdversarialSequence sequence_from_json(const json& j);
void write_growth_csv(std::ostream& os, const GrowthReport& report);
json growth_to_json(const GrowthReport& report);

json context_to_json(const MobiusContext& ctx, const NodeSequence& nodes);

/// Reads a whole file; Error(io) when it cannot be opened.
std::string read_file(const std::string& path);
json parse_json(std::string_view text, const std::string& origin);

}  // namespace holo::io
