#pragma once

#include "dofkit/constructor.hpp"
#include "dofkit/dof_engine.hpp"
#include "dofkit/mimo.hpp"
#include "dofkit/parallel.hpp"
#include "dofkit/search.hpp"

#include <json.hpp>

#include <cstddef>
#include <string>

namespace dofkit {

using Json = nlohmann::ordered_json;

// All parse_* functions throw Error{Parse} on malformed input; structural
// problems found by the domain types keep their own codes.

Json rational_to_json(const Rational& v);
Rational rational_from_json(const Json& j);

/// Nested rows [[..],..] or a flat row-major list of rows*cols entries.
RatMatrix matrix_from_json(const Json& j, std::size_t rows, std::size_t cols);
Json matrix_to_json(const RatMatrix& m);

/// {"K":..,"M":..,"blocks":[[block..]..]}, with {"complex":true} switching
/// entries to {"re":..,"im":..} pairs that are stacked into a real channel of
/// dimension 2M.
ChannelMatrix parse_channel(const Json& j);
/// True when the channel document is complex (dof divides by 2 afterwards).
bool channel_is_complex(const Json& j);
Json channel_to_json(const ChannelMatrix& h);

/// {"family":"subspace","directions":[[col..]..],"latent":"uniform01"} |
/// {"family":"mixture","alpha":[..]} |
/// {"family":"selfsimilar","ratio":"1/3","supports":[{"points":[..],"probs":[..]}..]}.
/// `dim` is the channel's M, needed for silent users and scalar points.
Scheme parse_scheme(const Json& j, std::size_t dim);
Json scheme_to_json(const Scheme& s);

FiniteDist dist_from_json(const Json& j, std::size_t dim);
Json dist_to_json(const FiniteDist& d);

/// {"pairs":[{"U":[cols],"V":[cols]}..]}
MimoConfig parse_pairs(const Json& j, std::size_t dim);

/// Exact values as rational strings, entropy ratios as decimal strings,
/// estimates as {"value":..,"stderr":..}.
Json dim_to_json(const DimValue& v);
DimValue dim_from_json(const Json& j);

Json report_to_json(const DofReport& r);
DofReport report_from_json(const Json& j);

Json cert_to_json(const FeasibilityCert& c);
FeasibilityCert cert_from_json(const Json& j);

struct ParallelReport {
  ParallelDecomposition decomposition;
  std::optional<StrictnessClaim> strictness;
  std::optional<SeparableOptimum> separable;

  friend bool operator==(const ParallelReport&, const ParallelReport&) = default;
};
Json parallel_to_json(const ParallelReport& r);
ParallelReport parallel_from_json(const Json& j);

Json standard_form_to_json(const StandardForm& s);
StandardForm standard_form_from_json(const Json& j);

Json search_to_json(const SearchResult& r);
SearchResult search_from_json(const Json& j);

struct ConstructionReport {
  ConstructionParams params;
  std::vector<Rational> grid;
  Rational ratio;
  std::vector<std::size_t> support_sizes;
  DofReport report;

  friend bool operator==(const ConstructionReport&, const ConstructionReport&) = default;
};
ConstructionReport construction_report(const Construction& c);
Json construction_to_json(const ConstructionReport& c);
ConstructionReport construction_from_json(const Json& j);

}  // namespace dofkit
