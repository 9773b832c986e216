#include "dofkit/cli.hpp"

#include "dofkit/complex.hpp"
#include "dofkit/error.hpp"
#include "dofkit/estimator.hpp"
#include "dofkit/fixtures.hpp"
#include "dofkit/json_io.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace dofkit {

namespace {

struct Options {
  std::string channel, scheme, pairs, pool, matrix, out, example;
  bool pretty = false;
  std::size_t samples = 100'000;
  unsigned k1 = 8, k2 = 12;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> depth;
  unsigned k = 0, blocklength = 1;
  std::size_t cap = kDefaultSupportCap;
  std::size_t budget = kDefaultSearchBudget;
  std::vector<std::size_t> dims;
  std::size_t users = 3, dim = 2;
};

Json read_json(const std::string& path, const char* what) {
  if (path.empty()) throw Error(Errc::Parse, std::string("missing --") + what);
  std::ifstream in(path);
  if (!in) throw Error(Errc::Parse, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::Parse, path + ": " + e.what());
  }
}

std::uint64_t resolve_seed(const Options& o) {
  if (o.seed) return *o.seed;
  if (const char* env = std::getenv("DOFKIT_SEED")) {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (const std::logic_error&) {
    }
    throw Error(Errc::Parse, std::string("DOFKIT_SEED is not an unsigned integer: ") + env);
  }
  return 0;
}

std::string cell(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "-";
  if (v.is_object() && v.contains("value")) {
    return v.at("value").get<std::string>() + " +- " + v.at("stderr").get<std::string>();
  }
  return v.dump();
}

void report_table(const Json& r, std::ostream& os) {
  os << "method: " << r.at("method").get<std::string>() << "  K=" << r.at("K") << " M=" << r.at("M") << '\n';
  os << std::left << std::setw(10) << "receiver" << std::setw(26) << "full" << std::setw(26) << "interference"
     << "term\n";
  std::size_t i = 1;
  for (const auto& t : r.at("per_receiver")) {
    os << std::setw(10) << i++ << std::setw(26) << cell(t.at("full")) << std::setw(26) << cell(t.at("interference"))
       << cell(t.at("term")) << '\n';
  }
  os << "total: " << cell(r.at("total")) << "  normalized: " << cell(r.at("normalized"))
     << "  bound: " << cell(r.at("bound")) << "  bound_met: " << cell(r.at("bound_met")) << '\n';
  if (r.contains("notes"))
    for (const auto& n : r.at("notes")) os << "note: " << n.get<std::string>() << '\n';
}

void emit(const Json& j, const Options& o, std::ostream& out, const Json* table_report) {
  const std::string text = j.dump(o.pretty ? 2 : -1) + "\n";
  if (o.out.empty()) {
    out << text;
  } else {
    std::ofstream f(o.out);
    if (!f) throw Error(Errc::Parse, "cannot write " + o.out);
    f << text;
  }
  if (o.pretty && table_report) report_table(*table_report, out);
}

void add_complex_note(DofReport& r, bool complex) {
  if (!complex) return;
  std::ostringstream s;
  s << "complex channel stacked to real dimension " << r.dim << "; complex DoF = total/" << kComplexDofDivisor;
  r.notes.push_back(s.str());
}

int cmd_eval(const Options& o, std::ostream& out) {
  const Json cj = read_json(o.channel, "channel");
  const ChannelMatrix h = parse_channel(cj);
  const Scheme s = parse_scheme(read_json(o.scheme, "scheme"), h.dim());
  DofReport r = std::holds_alternative<SelfSimilarScheme>(s)
                    ? dof_eval(h, std::get<SelfSimilarScheme>(s), o.cap)
                    : dof_eval(h, s);
  add_complex_note(r, channel_is_complex(cj));
  const Json j = report_to_json(r);
  emit(j, o, out, &j);
  return kExitOk;
}

int cmd_bound(const Options& o, std::ostream& out) {
  const ChannelMatrix h = parse_channel(read_json(o.channel, "channel"));
  const auto cert = find_derangement(h);
  Json sigma = nullptr;
  if (cert) {
    sigma = Json::array();
    for (auto s : cert->sigma) sigma.push_back(s + 1);
  }
  const auto b = upper_bound(h);
  emit(Json{{"K", h.users()},
            {"M", h.dim()},
            {"sigma", sigma},
            {"verified", cert ? cert->verified : false},
            {"bound", b ? rational_to_json(*b) : Json(nullptr)}},
       o, out, nullptr);
  return kExitOk;
}

int cmd_mimo(const Options& o, std::ostream& out) {
  const ChannelMatrix h = parse_channel(read_json(o.channel, "channel"));
  const MimoConfig cfg = parse_pairs(read_json(o.pairs, "pairs"), h.dim());
  const FeasibilityCert cert = mimo_check(h, cfg);
  Json j = cert_to_json(cert);
  Json r = report_to_json(dof_eval(h, mimo_scheme(cfg)));
  j["report"] = r;
  emit(j, o, out, &r);
  return cert.ok ? kExitOk : kExitAnalysis;
}

int cmd_parallel(const Options& o, std::ostream& out) {
  const ChannelMatrix h = parse_channel(read_json(o.channel, "channel"));
  ParallelReport rep{parallel_extract(h), std::nullopt, std::nullopt};
  if (h.users() == 3 && rep.decomposition.fully_connected) {
    std::vector<RatMatrix> standard;
    for (const auto& s : rep.decomposition.subchannels) standard.push_back(standardize_3user(s).matrix);
    rep.strictness = rational_strictness(standard);
  }
  if (h.users() <= 12) rep.separable = best_separable(h, o.budget);
  emit(parallel_to_json(rep), o, out, nullptr);
  return kExitOk;
}

int cmd_estimate(const Options& o, std::ostream& out) {
  const Json cj = read_json(o.channel, "channel");
  const ChannelMatrix h = parse_channel(cj);
  const Scheme s = parse_scheme(read_json(o.scheme, "scheme"), h.dim());
  const EstimatorConfig cfg{o.samples, o.k1, o.k2, resolve_seed(o), o.depth};
  DofReport r = estimate_dof(h, s, cfg);
  add_complex_note(r, channel_is_complex(cj));
  const Json j = report_to_json(r);
  emit(j, o, out, &j);
  return kExitOk;
}

int cmd_construct(const Options& o, std::ostream& out) {
  const ChannelMatrix h = parse_channel(read_json(o.channel, "channel"));
  if (o.k == 0) throw Error(Errc::Parse, "missing --k");
  const Construction c = construct(h, o.k, o.blocklength, o.cap);
  const ConstructionReport rep = construction_report(c);
  const Json r = report_to_json(rep.report);
  emit(construction_to_json(rep), o, out, &r);
  return kExitOk;
}

int cmd_search(const Options& o, std::ostream& out) {
  const ChannelMatrix h = parse_channel(read_json(o.channel, "channel"));
  const Json pj = read_json(o.pool, "pool");
  std::vector<std::vector<RatVector>> pools;
  const auto parse_pool = [&](const Json& list) {
    if (!list.is_array()) throw Error(Errc::Parse, "a pool must be a list of vectors");
    std::vector<RatVector> pool;
    for (const auto& v : list) pool.push_back(matrix_from_json(Json::array({v}), 1, h.dim()).row(0));
    return pool;
  };
  if (pj.contains("pools")) {
    for (const auto& p : pj.at("pools")) pools.push_back(parse_pool(p));
  } else if (pj.contains("pool")) {
    pools.push_back(parse_pool(pj.at("pool")));
  } else {
    throw Error(Errc::Parse, "pool file needs \"pool\" or \"pools\"");
  }
  std::vector<std::size_t> dims = o.dims;
  if (dims.empty() && pj.contains("dims")) dims = pj.at("dims").get<std::vector<std::size_t>>();
  if (dims.empty()) dims.assign(h.users(), 1);
  const SearchResult r = search_best_subspace(h, pools, dims, o.budget);
  const Json rep = report_to_json(r.report);
  emit(search_to_json(r), o, out, &rep);
  return kExitOk;
}

int cmd_example(const Options& o, std::ostream& out) {
  const Example ex = named_example(o.example, o.seed ? *o.seed : (std::getenv("DOFKIT_SEED") ? resolve_seed(o) : 7),
                                   o.users, o.dim);
  DofReport r = dof_eval(ex.channel, ex.scheme);
  r.notes.insert(r.notes.end(), ex.notes.begin(), ex.notes.end());
  const bool matches = r.total == DimValue(ex.expected_total);
  r.notes.push_back(std::string(matches ? "matches" : "DOES NOT MATCH") + " expected total " +
                    to_string(ex.expected_total));
  Json j = report_to_json(r);
  emit(j, o, out, &j);
  return matches ? kExitOk : kExitAnalysis;
}

int cmd_standardize(const Options& o, std::ostream& out) {
  if (!o.matrix.empty()) {
    Json mj = read_json(o.matrix, "matrix");
    if (mj.is_object()) mj = mj.at("matrix");
    emit(standard_form_to_json(standardize_3user(matrix_from_json(mj, 3, 3))), o, out, nullptr);
    return kExitOk;
  }
  const ChannelMatrix h = parse_channel(read_json(o.channel, "channel or --matrix"));
  if (h.users() != 3) throw Error(Errc::DimMismatch, "standard form needs K = 3");
  const ParallelDecomposition d = parallel_extract(h);
  Json forms = Json::array();
  std::vector<RatMatrix> standard;
  for (const auto& s : d.subchannels) {
    const StandardForm f = standardize_3user(s);
    standard.push_back(f.matrix);
    forms.push_back(standard_form_to_json(f));
  }
  const StrictnessClaim c = rational_strictness(standard);
  const ParallelReport rep{d, c, std::nullopt};
  emit(Json{{"subchannels", std::move(forms)}, {"strictness", parallel_to_json(rep).at("strictness")}}, o, out,
       nullptr);
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Degrees of freedom of vector interference channels"};
  app.require_subcommand(1);
  Options o;

  const auto common = [&](CLI::App* c) {
    c->add_option("--out", o.out, "write the JSON report here");
    c->add_flag("--pretty", o.pretty, "indent JSON and print a summary table");
  };
  const auto estimator_flags = [&](CLI::App* c) {
    c->add_option("--samples", o.samples, "Monte Carlo samples")->check(CLI::PositiveNumber);
    c->add_option("--k1", o.k1, "coarse dyadic resolution");
    c->add_option("--k2", o.k2, "fine dyadic resolution");
    c->add_option("--depth", o.depth, "self-similar truncation depth (auto when omitted)");
  };

  auto* eval = app.add_subcommand("eval", "exact dof of a scheme on a channel");
  eval->add_option("--channel", o.channel)->required();
  eval->add_option("--scheme", o.scheme)->required();
  eval->add_option("--cap", o.cap, "support cap for exact convolution");
  common(eval);

  auto* bound = app.add_subcommand("bound", "KM/2 bound via a derangement certificate");
  bound->add_option("--channel", o.channel)->required();
  common(bound);

  auto* mimo = app.add_subcommand("mimo", "check subspace alignment conditions");
  mimo->add_option("--channel", o.channel)->required();
  mimo->add_option("--pairs", o.pairs)->required();
  common(mimo);

  auto* par = app.add_subcommand("parallel", "split a parallel channel into scalar subchannels");
  par->add_option("--channel", o.channel)->required();
  par->add_option("--budget", o.budget);
  common(par);

  auto* est = app.add_subcommand("estimate", "Monte Carlo dof estimate");
  est->add_option("--channel", o.channel)->required();
  est->add_option("--scheme", o.scheme)->required();
  est->add_option("--seed", o.seed, "PRNG seed (default: DOFKIT_SEED or 0)");
  estimator_flags(est);
  common(est);

  auto* con = app.add_subcommand("construct", "self-similar construction for rational channels");
  con->add_option("--channel", o.channel)->required();
  con->add_option("--k", o.k, "resolution exponent, r = 2^-k")->required();
  con->add_option("--N", o.blocklength, "blocklength")->check(CLI::PositiveNumber);
  con->add_option("--cap", o.cap, "support cap for exact convolution");
  common(con);

  auto* search = app.add_subcommand("search", "exhaustive search over direction pools");
  search->add_option("--channel", o.channel)->required();
  search->add_option("--pool", o.pool)->required();
  search->add_option("--dims", o.dims, "per-user stream counts")->delimiter(',');
  search->add_option("--budget", o.budget);
  common(search);

  auto* example = app.add_subcommand("example", "evaluate a built-in example");
  example->add_option("name", o.example, "ex1 | stacked | propgain | k3m3 | cyclic")->required();
  example->add_option("--seed", o.seed, "seed for k3m3");
  example->add_option("--K", o.users, "users for cyclic");
  example->add_option("--M", o.dim, "dimension for cyclic");
  common(example);

  auto* stdz = app.add_subcommand("standardize", "3-user standard form");
  stdz->add_option("--matrix", o.matrix, "3x3 matrix JSON");
  stdz->add_option("--channel", o.channel, "parallel K=3 channel JSON");
  common(stdz);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << e.what() << '\n';
      return kExitOk;
    }
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }

  try {
    if (eval->parsed()) return cmd_eval(o, out);
    if (bound->parsed()) return cmd_bound(o, out);
    if (mimo->parsed()) return cmd_mimo(o, out);
    if (par->parsed()) return cmd_parallel(o, out);
    if (est->parsed()) return cmd_estimate(o, out);
    if (con->parsed()) return cmd_construct(o, out);
    if (search->parsed()) return cmd_search(o, out);
    if (example->parsed()) return cmd_example(o, out);
    if (stdz->parsed()) return cmd_standardize(o, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return is_input_error(e.code()) ? kExitInput : kExitAnalysis;
  } catch (const nlohmann::json::exception& e) {
    err << "error: Parse: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}

}  // namespace dofkit
