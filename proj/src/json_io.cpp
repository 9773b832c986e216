#include "dofkit/json_io.hpp"

#include "dofkit/complex.hpp"
#include "dofkit/error.hpp"

#include <cstdio>
#include <string>

namespace dofkit {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(Errc::Parse, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

std::size_t count_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer() || v.get<long long>() < 0) bad(std::string("\"") + key + "\" must be a natural number");
  return v.get<std::size_t>();
}

std::string decimal(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s(buf);
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

double parse_decimal(const std::string& s) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) bad("malformed decimal \"" + s + "\"");
    return v;
  } catch (const std::logic_error&) {
    bad("malformed decimal \"" + s + "\"");
  }
}

bool looks_decimal(const std::string& s) { return s.find_first_of(".eEin") != std::string::npos; }

Json opt_rational(const std::optional<Rational>& v) { return v ? rational_to_json(*v) : Json(nullptr); }

RatVector vector_from_json(const Json& j, std::size_t dim) {
  if (dim == 1 && !j.is_array()) return {rational_from_json(j)};
  if (!j.is_array() || j.size() != dim) bad("expected a vector of length " + std::to_string(dim));
  RatVector v;
  for (const auto& e : j) v.push_back(rational_from_json(e));
  return v;
}

Json vector_to_json(const RatVector& v) {
  Json out = Json::array();
  for (const auto& e : v) out.push_back(rational_to_json(e));
  return out;
}

RatMatrix columns_from_json(const Json& j, std::size_t dim) {
  if (!j.is_array()) bad("directions must be a list of column vectors");
  std::vector<RatVector> cols;
  for (const auto& c : j) cols.push_back(vector_from_json(c, dim));
  return RatMatrix::from_columns(cols, dim);
}

Json columns_to_json(const RatMatrix& m) {
  Json out = Json::array();
  for (std::size_t c = 0; c < m.cols(); ++c) out.push_back(vector_to_json(m.col(c)));
  return out;
}

std::vector<Rational> rationals_from_json(const Json& j) {
  if (!j.is_array()) bad("expected a list of rationals");
  std::vector<Rational> out;
  for (const auto& e : j) out.push_back(rational_from_json(e));
  return out;
}

Json rationals_to_json(std::span<const Rational> v) {
  Json out = Json::array();
  for (const auto& e : v) out.push_back(rational_to_json(e));
  return out;
}

Json strings(const std::vector<std::string>& v) { return Json(v); }

std::vector<std::string> strings_from(const Json& j) {
  if (j.is_null()) return {};
  if (!j.is_array()) bad("notes must be a list of strings");
  std::vector<std::string> out;
  for (const auto& e : j) {
    if (!e.is_string()) bad("notes must be a list of strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

bool bool_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_boolean()) bad(std::string("\"") + key + "\" must be a boolean");
  return v.get<bool>();
}

}  // namespace

Json rational_to_json(const Rational& v) { return to_string(v); }

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_number()) bad("floating-point number " + j.dump() + " where an exact rational string is required");
  bad("expected a rational, got " + j.dump());
}

RatMatrix matrix_from_json(const Json& j, std::size_t rows, std::size_t cols) {
  if (!j.is_array()) bad("matrix must be an array");
  std::vector<Rational> e;
  e.reserve(rows * cols);
  if (!j.empty() && j.front().is_array()) {
    if (j.size() != rows) bad("matrix has " + std::to_string(j.size()) + " rows, expected " + std::to_string(rows));
    for (const auto& row : j) {
      if (!row.is_array() || row.size() != cols) bad("matrix row has wrong length, expected " + std::to_string(cols));
      for (const auto& v : row) e.push_back(rational_from_json(v));
    }
  } else {
    if (j.size() != rows * cols) {
      bad("flat matrix has " + std::to_string(j.size()) + " entries, expected " + std::to_string(rows * cols));
    }
    for (const auto& v : j) e.push_back(rational_from_json(v));
  }
  return RatMatrix(rows, cols, std::move(e));
}

Json matrix_to_json(const RatMatrix& m) {
  Json out = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(vector_to_json(m.row(r)));
  return out;
}

bool channel_is_complex(const Json& j) {
  return j.is_object() && j.contains("complex") && j.at("complex").is_boolean() && j.at("complex").get<bool>();
}

ChannelMatrix parse_channel(const Json& j) {
  const std::size_t k = count_field(j, "K");
  const std::size_t m = count_field(j, "M");
  const Json& grid = field(j, "blocks");
  if (!grid.is_array() || grid.size() != k) bad("\"blocks\" must hold K = " + std::to_string(k) + " block rows");
  for (const auto& row : grid) {
    if (!row.is_array() || row.size() != k) bad("each block row must hold K = " + std::to_string(k) + " blocks");
  }

  if (channel_is_complex(j)) {
    std::vector<ComplexBlock> blocks;
    for (const auto& row : grid) {
      for (const auto& b : row) {
        if (!b.is_array()) bad("complex block must be an array");
        Json re = Json::array();
        Json im = Json::array();
        const auto split = [&](const Json& entry, Json& r, Json& i) {
          if (entry.is_object()) {
            r.push_back(entry.contains("re") ? entry.at("re") : Json("0"));
            i.push_back(entry.contains("im") ? entry.at("im") : Json("0"));
          } else {
            r.push_back(entry);
            i.push_back("0");
          }
        };
        for (const auto& e : b) {
          if (e.is_array()) {
            Json rr = Json::array(), ii = Json::array();
            for (const auto& x : e) split(x, rr, ii);
            re.push_back(rr);
            im.push_back(ii);
          } else {
            split(e, re, im);
          }
        }
        blocks.push_back({matrix_from_json(re, m, m), matrix_from_json(im, m, m)});
      }
    }
    return complex_stack(k, blocks);
  }

  std::vector<RatMatrix> blocks;
  for (const auto& row : grid)
    for (const auto& b : row) blocks.push_back(matrix_from_json(b, m, m));
  return ChannelMatrix(k, m, std::move(blocks));
}

Json channel_to_json(const ChannelMatrix& h) {
  Json grid = Json::array();
  for (std::size_t i = 0; i < h.users(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < h.users(); ++j) row.push_back(matrix_to_json(h.block(i, j)));
    grid.push_back(std::move(row));
  }
  return Json{{"K", h.users()}, {"M", h.dim()}, {"blocks", std::move(grid)}};
}

FiniteDist dist_from_json(const Json& j, std::size_t dim) {
  const Json& pts = field(j, "points");
  if (!pts.is_array()) bad("\"points\" must be a list");
  std::vector<RatVector> points;
  for (const auto& p : pts) points.push_back(vector_from_json(p, dim));
  if (!j.contains("probs")) return FiniteDist::uniform(std::move(points));
  return FiniteDist(std::move(points), rationals_from_json(j.at("probs")));
}

Json dist_to_json(const FiniteDist& d) {
  Json pts = Json::array();
  for (const auto& p : d.points()) pts.push_back(vector_to_json(p));
  return Json{{"points", std::move(pts)}, {"probs", rationals_to_json(d.probs())}};
}

Scheme parse_scheme(const Json& j, std::size_t dim) {
  const Json& fam = field(j, "family");
  if (!fam.is_string()) bad("\"family\" must be a string");
  const std::string family = fam.get<std::string>();
  if (family == "subspace") {
    SubspaceScheme s;
    const Json& dirs = field(j, "directions");
    if (!dirs.is_array()) bad("\"directions\" must be a list per user");
    for (const auto& d : dirs) s.directions.push_back(columns_from_json(d, dim));
    if (j.contains("latent")) {
      const std::string l = j.at("latent").is_string() ? j.at("latent").get<std::string>() : "";
      if (l == "uniform01") s.latent = Latent::Uniform01;
      else if (l == "gaussian") s.latent = Latent::Gaussian;
      else bad("\"latent\" must be \"uniform01\" or \"gaussian\"");
    }
    return s;
  }
  if (family == "mixture") return MixtureScheme{rationals_from_json(field(j, "alpha"))};
  if (family == "selfsimilar") {
    SelfSimilarScheme s;
    s.ratio = rational_from_json(field(j, "ratio"));
    const Json& sup = field(j, "supports");
    if (!sup.is_array()) bad("\"supports\" must be a list per user");
    for (const auto& d : sup) s.supports.push_back(dist_from_json(d, dim));
    return s;
  }
  bad("unknown scheme family \"" + family + "\"");
}

Json scheme_to_json(const Scheme& scheme) {
  if (const auto* s = std::get_if<SubspaceScheme>(&scheme)) {
    Json dirs = Json::array();
    for (const auto& v : s->directions) dirs.push_back(columns_to_json(v));
    return Json{{"family", "subspace"},
                {"directions", std::move(dirs)},
                {"latent", s->latent == Latent::Uniform01 ? "uniform01" : "gaussian"}};
  }
  if (const auto* s = std::get_if<MixtureScheme>(&scheme)) {
    return Json{{"family", "mixture"}, {"alpha", rationals_to_json(s->alpha)}};
  }
  const auto& s = std::get<SelfSimilarScheme>(scheme);
  Json sup = Json::array();
  for (const auto& d : s.supports) sup.push_back(dist_to_json(d));
  return Json{{"family", "selfsimilar"}, {"ratio", rational_to_json(s.ratio)}, {"supports", std::move(sup)}};
}

MimoConfig parse_pairs(const Json& j, std::size_t dim) {
  const Json& pairs = field(j, "pairs");
  if (!pairs.is_array()) bad("\"pairs\" must be a list");
  MimoConfig cfg;
  for (const auto& p : pairs) {
    cfg.pairs.push_back({Subspace(columns_from_json(field(p, "U"), dim)),
                         Subspace(columns_from_json(field(p, "V"), dim))});
  }
  return cfg;
}

Json dim_to_json(const DimValue& v) {
  switch (v.kind()) {
    case DimValue::Kind::Exact: return rational_to_json(v.exact());
    case DimValue::Kind::EntropyRatio: return decimal(v.value());
    case DimValue::Kind::Estimate: return Json{{"value", decimal(v.value())}, {"stderr", decimal(v.stderr_value())}};
  }
  return nullptr;
}

DimValue dim_from_json(const Json& j) {
  if (j.is_object()) {
    return DimValue::estimate(parse_decimal(field(j, "value").get<std::string>()),
                              parse_decimal(field(j, "stderr").get<std::string>()));
  }
  if (j.is_string() && looks_decimal(j.get<std::string>())) {
    return DimValue::entropy_ratio(parse_decimal(j.get<std::string>()), 1.0);
  }
  return DimValue(rational_from_json(j));
}

Json report_to_json(const DofReport& r) {
  Json per = Json::array();
  for (const auto& t : r.per_receiver) {
    per.push_back(Json{{"full", dim_to_json(t.full)},
                       {"interference", dim_to_json(t.interference)},
                       {"term", dim_to_json(t.term)}});
  }
  Json out{{"method", r.method},
           {"K", r.users},
           {"M", r.dim},
           {"per_receiver", std::move(per)},
           {"total", dim_to_json(r.total)},
           {"normalized", dim_to_json(r.normalized)},
           {"bound", opt_rational(r.bound)},
           {"bound_met", r.bound_met ? Json(*r.bound_met) : Json(nullptr)}};
  if (!r.notes.empty()) out["notes"] = strings(r.notes);
  return out;
}

DofReport report_from_json(const Json& j) {
  DofReport r;
  const Json& method = field(j, "method");
  if (!method.is_string()) bad("\"method\" must be a string");
  r.method = method.get<std::string>();
  r.users = count_field(j, "K");
  r.dim = count_field(j, "M");
  const Json& per = field(j, "per_receiver");
  if (!per.is_array()) bad("\"per_receiver\" must be a list");
  for (const auto& t : per) {
    r.per_receiver.push_back({dim_from_json(field(t, "full")), dim_from_json(field(t, "interference")),
                              dim_from_json(field(t, "term"))});
  }
  r.total = dim_from_json(field(j, "total"));
  r.normalized = dim_from_json(field(j, "normalized"));
  const Json& bound = field(j, "bound");
  if (!bound.is_null()) r.bound = rational_from_json(bound);
  const Json& met = field(j, "bound_met");
  if (!met.is_null()) {
    if (!met.is_boolean()) bad("\"bound_met\" must be a boolean or null");
    r.bound_met = met.get<bool>();
  }
  if (j.contains("notes")) r.notes = strings_from(j.at("notes"));
  return r;
}

Json cert_to_json(const FeasibilityCert& c) {
  Json fails = Json::array();
  for (const auto& f : c.failures) {
    fails.push_back(Json{{"condition", mimo_condition_name(f.condition)}, {"rx", f.rx + 1}, {"tx", f.tx + 1}});
  }
  Json det = Json::array();
  for (bool b : c.detV_nonzero) det.push_back(b);
  return Json{{"ok", c.ok}, {"ell", c.ell}, {"failures", std::move(fails)}, {"detV_nonzero", std::move(det)}};
}

FeasibilityCert cert_from_json(const Json& j) {
  FeasibilityCert c;
  c.ok = bool_field(j, "ok");
  c.ell = count_field(j, "ell");
  for (const auto& f : field(j, "failures")) {
    const std::string name = field(f, "condition").get<std::string>();
    MimoCondition cond{};
    bool found = false;
    for (auto candidate : {MimoCondition::ZeroForcing, MimoCondition::NoDimensionLoss, MimoCondition::ReceiveBasis,
                           MimoCondition::DimensionMismatch}) {
      if (name == mimo_condition_name(candidate)) {
        cond = candidate;
        found = true;
      }
    }
    if (!found) bad("unknown condition \"" + name + "\"");
    const std::size_t rx = count_field(f, "rx");
    const std::size_t tx = count_field(f, "tx");
    if (rx == 0 || tx == 0) bad("receiver and transmitter indices are 1-based");
    c.failures.push_back({cond, rx - 1, tx - 1});
  }
  for (const auto& b : field(j, "detV_nonzero")) {
    if (!b.is_boolean()) bad("\"detV_nonzero\" must hold booleans");
    c.detV_nonzero.push_back(b.get<bool>());
  }
  return c;
}

namespace {

Json claim_to_json(const StrictnessClaim& c) {
  return Json{{"hypothesis_holds", c.hypothesis_holds},
              {"claim", c.claim == StrictnessKind::DofStrictlyBelowThreeHalves ? "dof-strictly-below-3/2" : "no-claim"},
              {"constant_family", c.constant_family ? Json(std::string(1, *c.constant_family)) : Json(nullptr)},
              {"symmetry_based", c.symmetry_based}};
}

StrictnessClaim claim_from_json(const Json& j) {
  StrictnessClaim c;
  c.hypothesis_holds = bool_field(j, "hypothesis_holds");
  const std::string claim = field(j, "claim").get<std::string>();
  if (claim == "dof-strictly-below-3/2") c.claim = StrictnessKind::DofStrictlyBelowThreeHalves;
  else if (claim == "no-claim") c.claim = StrictnessKind::NoClaim;
  else bad("unknown claim \"" + claim + "\"");
  const Json& fam = field(j, "constant_family");
  if (!fam.is_null()) {
    const std::string f = fam.get<std::string>();
    if (f.size() != 1) bad("\"constant_family\" must be a single letter");
    c.constant_family = f[0];
  }
  c.symmetry_based = bool_field(j, "symmetry_based");
  return c;
}

SubspaceScheme subspace_from_json(const Json& j, std::size_t dim) {
  Scheme s = parse_scheme(j, dim);
  if (!std::holds_alternative<SubspaceScheme>(s)) bad("expected a subspace scheme");
  return std::get<SubspaceScheme>(std::move(s));
}

}  // namespace

Json parallel_to_json(const ParallelReport& r) {
  Json subs = Json::array();
  for (const auto& s : r.decomposition.subchannels) subs.push_back(matrix_to_json(s));
  Json out{{"subchannels", std::move(subs)},
           {"fully_connected", r.decomposition.fully_connected},
           {"dets_verified", r.decomposition.dets_verified},
           {"strictness", r.strictness ? claim_to_json(*r.strictness) : Json(nullptr)},
           {"separable", nullptr}};
  if (r.separable) {
    out["separable"] = Json{{"per_subchannel", rationals_to_json(r.separable->per_subchannel)},
                            {"total", rational_to_json(r.separable->total)},
                            {"composed", scheme_to_json(r.separable->composed)}};
  }
  return out;
}

ParallelReport parallel_from_json(const Json& j) {
  ParallelReport r;
  for (const auto& s : field(j, "subchannels")) {
    if (!s.is_array()) bad("subchannel must be a matrix");
    r.decomposition.subchannels.push_back(matrix_from_json(s, s.size(), s.size()));
  }
  r.decomposition.fully_connected = bool_field(j, "fully_connected");
  r.decomposition.dets_verified = bool_field(j, "dets_verified");
  if (!field(j, "strictness").is_null()) r.strictness = claim_from_json(j.at("strictness"));
  const Json& sep = field(j, "separable");
  if (!sep.is_null()) {
    SeparableOptimum o;
    o.per_subchannel = rationals_from_json(field(sep, "per_subchannel"));
    o.total = rational_from_json(field(sep, "total"));
    o.composed = subspace_from_json(field(sep, "composed"), r.decomposition.subchannels.size());
    r.separable = std::move(o);
  }
  return r;
}

Json standard_form_to_json(const StandardForm& s) {
  return Json{{"matrix", matrix_to_json(s.matrix)},
              {"row_scaling", rationals_to_json(s.row_scaling)},
              {"col_scaling", rationals_to_json(s.col_scaling)},
              {"a", rational_to_json(s.a)},
              {"b", rational_to_json(s.b)},
              {"c", rational_to_json(s.c)},
              {"d", rational_to_json(s.d)}};
}

StandardForm standard_form_from_json(const Json& j) {
  StandardForm s;
  s.matrix = matrix_from_json(field(j, "matrix"), 3, 3);
  const auto three = [&](const char* key) {
    const auto v = rationals_from_json(field(j, key));
    if (v.size() != 3) bad(std::string("\"") + key + "\" must hold 3 values");
    return std::array<Rational, 3>{v[0], v[1], v[2]};
  };
  s.row_scaling = three("row_scaling");
  s.col_scaling = three("col_scaling");
  s.a = rational_from_json(field(j, "a"));
  s.b = rational_from_json(field(j, "b"));
  s.c = rational_from_json(field(j, "c"));
  s.d = rational_from_json(field(j, "d"));
  return s;
}

Json search_to_json(const SearchResult& r) {
  Json choice = Json::array();
  for (const auto& c : r.choice) {
    Json one = Json::array();
    for (auto i : c) one.push_back(i + 1);
    choice.push_back(std::move(one));
  }
  return Json{{"scheme", scheme_to_json(r.scheme)},
              {"report", report_to_json(r.report)},
              {"choice", std::move(choice)},
              {"evaluated", r.evaluated}};
}

SearchResult search_from_json(const Json& j) {
  SearchResult r;
  r.report = report_from_json(field(j, "report"));
  r.scheme = subspace_from_json(field(j, "scheme"), r.report.dim);
  for (const auto& c : field(j, "choice")) {
    std::vector<std::size_t> one;
    for (const auto& i : c) {
      if (!i.is_number_integer() || i.get<long long>() < 1) bad("choice indices are 1-based naturals");
      one.push_back(i.get<std::size_t>() - 1);
    }
    r.choice.push_back(std::move(one));
  }
  r.evaluated = count_field(j, "evaluated");
  return r;
}

ConstructionReport construction_report(const Construction& c) {
  ConstructionReport r{c.grid.params, c.grid.grid, c.scheme.ratio, {}, c.report};
  for (const auto& s : c.scheme.supports) r.support_sizes.push_back(s.size());
  return r;
}

Json construction_to_json(const ConstructionReport& c) {
  return Json{{"params",
               Json{{"k", c.params.k}, {"p", c.params.p}, {"N", c.params.N}, {"h_max", rational_to_json(c.params.h_max)}}},
              {"grid", rationals_to_json(c.grid)},
              {"ratio", rational_to_json(c.ratio)},
              {"support_sizes", c.support_sizes},
              {"report", report_to_json(c.report)}};
}

ConstructionReport construction_from_json(const Json& j) {
  ConstructionReport c;
  const Json& p = field(j, "params");
  c.params.k = static_cast<unsigned>(count_field(p, "k"));
  c.params.p = static_cast<unsigned>(count_field(p, "p"));
  c.params.N = static_cast<unsigned>(count_field(p, "N"));
  c.params.h_max = rational_from_json(field(p, "h_max"));
  c.grid = rationals_from_json(field(j, "grid"));
  c.ratio = rational_from_json(field(j, "ratio"));
  for (const auto& s : field(j, "support_sizes")) {
    if (!s.is_number_integer()) bad("\"support_sizes\" must hold naturals");
    c.support_sizes.push_back(s.get<std::size_t>());
  }
  c.report = report_from_json(field(j, "report"));
  return c;
}

}  // namespace dofkit
