#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <thread>

#include <CLI11.hpp>

#include "agv/asymptotic.hpp"
#include "agv/bounds.hpp"
#include "agv/codefile.hpp"
#include "agv/codesearch.hpp"
#include "agv/errors.hpp"

namespace agv::cli {

using nlohmann::json;

std::string to_string(Status s) {
  switch (s) {
    case Status::ok:
      return "ok";
    case Status::infeasible:
      return "infeasible";
    case Status::not_found:
      return "not_found";
    case Status::error:
      return "error";
  }
  return "error";
}

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json distance_json(const Distance& d) { return d ? json(*d) : json("inf"); }

json terms_json(const BoundReport& rep) {
  json terms = json::array();
  for (const auto& t : rep.terms) terms.push_back(to_fraction(t));
  return terms;
}

void put_report(json& payload, const BoundReport& rep, unsigned digits) {
  payload["lhs"] = rep.exact();
  payload["lhs_decimal"] = rep.decimal(digits);
  payload["feasible"] = rep.feasible;
  payload["terms"] = terms_json(rep);
}

std::string cell(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

// Two aligned columns, keys in sorted order.
void print_table(std::ostream& out, const json& payload) {
  std::size_t width = 0;
  for (const auto& [key, _] : payload.items()) width = std::max(width, key.size());
  for (const auto& [key, value] : payload.items())
    out << key << std::string(width - key.size() + 2, ' ') << cell(value) << '\n';
}

struct Common {
  bool json_out = false;
  unsigned digits = 6;
  bool assert_feasible = false;
};

void add_output_flags(CLI::App* cmd, Common& c, bool with_digits, bool with_assert) {
  cmd->add_flag("--json", c.json_out, "Print a single-line JSON object");
  if (with_digits) cmd->add_option("--digits", c.digits, "Decimal places for rationals")->check(CLI::Range(0u, 1000u));
  if (with_assert)
    cmd->add_flag("--assert-feasible", c.assert_feasible, "Exit with status 2 when the bound is not satisfied");
}

struct Params {
  std::uint64_t q = 2;
  unsigned n = 1, k = 0, k1 = 0, k2 = 0, dx = 1, dz = 1;
  double r = 0;
  unsigned points = 101;
  std::uint64_t trials = 1, seed = 0;
  unsigned threads = 0;
  std::string out_file, in_file;
};

CommandResult bound_css(const Params& p, const Common& c) {
  CssBoundQuery query{p.q, p.n, p.k1, p.k2, p.dx, p.dz};
  const auto rep = css_gv_lhs(query);
  CommandResult res;
  res.payload = {{"kind", "css"}, {"q", p.q}, {"n", p.n}, {"k1", p.k1}, {"k2", p.k2},
                 {"k", p.k1 - p.k2}, {"dx", p.dx}, {"dz", p.dz}};
  put_report(res.payload, rep, c.digits);
  res.status = rep.feasible ? Status::ok : Status::infeasible;
  if (c.assert_feasible && !rep.feasible) res.exit_code = 2;
  return res;
}

CommandResult bound_stab(const Params& p, const Common& c) {
  StabBoundQuery query{p.q, p.n, p.k, p.dx, p.dz};
  const auto rep = stab_gv_lhs(query);
  CommandResult res;
  res.payload = {{"kind", "stab"}, {"q", p.q}, {"n", p.n}, {"k", p.k}, {"dx", p.dx}, {"dz", p.dz}};
  put_report(res.payload, rep, c.digits);
  res.status = rep.feasible ? Status::ok : Status::infeasible;
  if (c.assert_feasible && !rep.feasible) res.exit_code = 2;
  return res;
}

CommandResult maxk_stab(const Params& p, const Common& c) {
  CommandResult res;
  res.payload = {{"kind", "stab"}, {"q", p.q}, {"n", p.n}, {"dx", p.dx}, {"dz", p.dz}};
  if (auto k = max_k_stab(p.n, p.q, p.dx, p.dz)) {
    res.payload["k_max"] = *k;
    put_report(res.payload, stab_gv_lhs({p.q, p.n, *k, p.dx, p.dz}), c.digits);
  } else {
    res.payload["k_max"] = nullptr;
    res.status = Status::not_found;
  }
  return res;
}

CommandResult best_css(const Params& p, const Common& c) {
  CommandResult res;
  res.payload = {{"kind", "css"}, {"q", p.q}, {"n", p.n}, {"dx", p.dx}, {"dz", p.dz}};
  if (auto best = best_css_params(p.n, p.q, p.dx, p.dz)) {
    res.payload["k1"] = best->k1;
    res.payload["k2"] = best->k2;
    res.payload["k"] = best->k1 - best->k2;
    put_report(res.payload, css_gv_lhs({p.q, p.n, best->k1, best->k2, p.dx, p.dz}), c.digits);
  } else {
    res.payload["k1"] = nullptr;
    res.payload["k2"] = nullptr;
    res.payload["k"] = nullptr;
    res.status = Status::not_found;
  }
  return res;
}

CommandResult frontier(const Params& p, std::ostream& out, bool& printed) {
  if (p.points < 1) throw UsageError("--points must be >= 1");
  const auto grid = delta_grid(p.q, p.points);
  const auto pts = cor4_frontier(p.q, p.r, grid);
  const std::string csv = frontier_csv(pts, p.q);
  CommandResult res;
  if (p.out_file.empty()) {
    out << csv;
    printed = true;
  } else {
    std::ofstream f(p.out_file, std::ios::binary);
    if (!f) throw UsageError("cannot write " + p.out_file);
    f << csv;
  }
  res.payload = {{"q", p.q}, {"R", p.r}, {"grid_points", grid.size()}, {"points", pts.size()},
                 {"out", p.out_file.empty() ? json(nullptr) : json(p.out_file)}};
  return res;
}

json histogram(const std::vector<std::uint64_t>& counts) {
  std::map<std::uint64_t, std::uint64_t> h;
  for (auto c : counts) ++h[c];
  json out = json::object();
  for (auto [value, mult] : h) out[std::to_string(value)] = mult;
  return out;
}

CommandResult lemma(const Params& p) {
  if (p.q > 251) throw UnsupportedFieldError("lemma needs a prime q <= 251");
  const auto rep = enumerate_nested_pairs(p.n, unsigned(p.q), p.k1, p.k2);
  const BigInt expected_total = gaussian_binomial(p.n, p.k1, p.q) * gaussian_binomial(p.k1, p.k2, p.q);
  const BigInt qn = boost::multiprecision::pow(BigInt(p.q), p.n) - 1;
  const Rational per_x(BigInt((boost::multiprecision::pow(BigInt(p.q), p.k1) - boost::multiprecision::pow(BigInt(p.q), p.k2)) *
                              expected_total),
                       qn);
  const Rational per_z(
      BigInt((boost::multiprecision::pow(BigInt(p.q), p.n - p.k2) - boost::multiprecision::pow(BigInt(p.q), p.n - p.k1)) *
             expected_total),
      qn);
  const bool total_ok = BigInt(rep.total_pairs) == expected_total;
  CommandResult res;
  res.payload = {{"q", p.q},
                 {"n", p.n},
                 {"k1", p.k1},
                 {"k2", p.k2},
                 {"total_pairs", rep.total_pairs},
                 {"expected_total_pairs", expected_total.str()},
                 {"errors", rep.per_error_x.size()},
                 {"per_error_x", histogram(rep.per_error_x)},
                 {"per_error_z", histogram(rep.per_error_z)},
                 {"expected_per_error_x", to_fraction(per_x)},
                 {"expected_per_error_z", to_fraction(per_z)},
                 {"lemma_ok", total_ok && rep.counting_identities_hold()}};
  return res;
}

CommandResult search(const Params& p, bool css) {
  SearchOptions opts{p.trials, p.seed, p.threads};
  if (p.trials < 1) throw UsageError("--trials must be >= 1");
  std::optional<Witness> w;
  CommandResult res;
  res.payload = {{"kind", css ? "css" : "stab"}, {"q", p.q}, {"n", p.n}, {"seed", p.seed}, {"trials", p.trials}};
  if (css) {
    CssBoundQuery query{p.q, p.n, p.k1, p.k2, p.dx, p.dz};
    res.payload["k1"] = p.k1;
    res.payload["k2"] = p.k2;
    res.payload["k"] = p.k1 - p.k2;
    res.payload["lhs"] = css_gv_lhs(query).exact();
    w = gv_witness_search(query, opts);
  } else {
    StabBoundQuery query{p.q, p.n, p.k, p.dx, p.dz};
    res.payload["k"] = p.k;
    res.payload["lhs"] = stab_gv_lhs(query).exact();
    w = gv_witness_search(query, opts);
  }
  res.payload["required"] = {{"dx", p.dx}, {"dz", p.dz}};
  res.payload["found"] = w.has_value();
  if (w) {
    res.payload["trial_index"] = w->trial_index;
    res.payload["dx"] = distance_json(w->distances.dx);
    res.payload["dz"] = distance_json(w->distances.dz);
    res.payload["code"] = json::parse(dump_code_file(w->code));
    if (!p.out_file.empty()) save_code_file(p.out_file, w->code);
  } else {
    res.payload["trial_index"] = nullptr;
    res.payload["dx"] = nullptr;
    res.payload["dz"] = nullptr;
    res.payload["code"] = nullptr;
    res.status = Status::not_found;
  }
  return res;
}

// Largest d with the pure-error profile satisfied, scanning upward.
unsigned pure_limit(const IsotropicCode& code, bool bit) {
  const auto n = unsigned(code.n());
  unsigned best = 1;
  for (unsigned d = 2; d <= n + 1; ++d) {
    bool ok;
    try {
      ok = bit ? stab_detects_profile(code, d, 1) : stab_detects_profile(code, 1, d);
    } catch (const SizeError&) {
      break;
    }
    if (!ok) break;
    best = d;
  }
  return best;
}

CommandResult distances(const Params& p) {
  const Code code = load_code_file(p.in_file);
  CommandResult res;
  if (const auto* pair = std::get_if<NestedPair>(&code)) {
    const auto d = css_distances(*pair);
    res.payload = {{"type", "css"},
                   {"q", pair->c1().field().order()},
                   {"n", pair->n()},
                   {"k1", pair->c1().dim()},
                   {"k2", pair->c2().dim()},
                   {"k", pair->k()},
                   {"dx", distance_json(d.dx)},
                   {"dz", distance_json(d.dz)}};
    return res;
  }
  const auto& stab = std::get<IsotropicCode>(code);
  const auto n = unsigned(stab.n());
  json profile = json::array();
  for (unsigned dx = 1; dx <= n + 1; ++dx) {
    json row = json::array();
    for (unsigned dz = 1; dz <= n + 1; ++dz) {
      try {
        row.push_back(stab_detects_profile(stab, dx, dz));
      } catch (const SizeError&) {
        row.push_back(nullptr);
      }
    }
    profile.push_back(std::move(row));
  }
  res.payload = {{"type", "stab"},
                 {"q", stab.stabilizer().field().order()},
                 {"n", n},
                 {"k", stab.k()},
                 {"dx", pure_limit(stab, true)},
                 {"dz", pure_limit(stab, false)},
                 {"profile", std::move(profile)}};
  return res;
}

std::string first_line(std::string s) {
  if (auto pos = s.find('\n'); pos != std::string::npos) s.resize(pos);
  return s;
}

}  // namespace

CommandResult run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gilbert-Varshamov bounds and witness search for asymmetric quantum codes", "agv"};
  app.require_subcommand(1);
  Params p;
  Common c;

  auto add_q_n = [&](CLI::App* cmd) {
    cmd->add_option("--q", p.q, "Field size (prime power for bounds, prime for searches)")->required();
    cmd->add_option("--n", p.n, "Code length")->required();
  };
  auto add_d = [&](CLI::App* cmd) {
    cmd->add_option("--dx", p.dx, "Bit-error design distance")->required();
    cmd->add_option("--dz", p.dz, "Phase-error design distance")->required();
  };

  auto* bound = app.add_subcommand("bound", "Evaluate a finite-length bound exactly");
  bound->require_subcommand(1);
  auto* bound_css_cmd = bound->add_subcommand("css", "CSS bound on (k1, k2)");
  add_q_n(bound_css_cmd);
  bound_css_cmd->add_option("--k1", p.k1)->required();
  bound_css_cmd->add_option("--k2", p.k2)->required();
  add_d(bound_css_cmd);
  add_output_flags(bound_css_cmd, c, true, true);
  auto* bound_stab_cmd = bound->add_subcommand("stab", "Stabilizer bound on k");
  add_q_n(bound_stab_cmd);
  bound_stab_cmd->add_option("--k", p.k)->required();
  add_d(bound_stab_cmd);
  add_output_flags(bound_stab_cmd, c, true, true);

  auto* maxk = app.add_subcommand("maxk", "Largest k satisfying a bound");
  maxk->require_subcommand(1);
  auto* maxk_stab_cmd = maxk->add_subcommand("stab", "Stabilizer bound");
  add_q_n(maxk_stab_cmd);
  add_d(maxk_stab_cmd);
  add_output_flags(maxk_stab_cmd, c, true, false);

  auto* best = app.add_subcommand("best", "Best dimensions satisfying a bound");
  best->require_subcommand(1);
  auto* best_css_cmd = best->add_subcommand("css", "CSS bound");
  add_q_n(best_css_cmd);
  add_d(best_css_cmd);
  add_output_flags(best_css_cmd, c, true, false);

  auto* frontier_cmd = app.add_subcommand("frontier", "Trace the asymptotic stabilizer frontier as CSV");
  frontier_cmd->add_option("--q", p.q)->required();
  frontier_cmd->add_option("--r", p.r, "Rate R")->required();
  frontier_cmd->add_option("--points", p.points, "Number of delta_x grid points over [0, 1-1/q]");
  frontier_cmd->add_option("--out", p.out_file, "CSV destination (stdout if omitted)");
  frontier_cmd->add_flag("--json", c.json_out);

  auto* lemma_cmd = app.add_subcommand("lemma", "Verify the nested-pair counting identities by enumeration");
  add_q_n(lemma_cmd);
  lemma_cmd->add_option("--k1", p.k1)->required();
  lemma_cmd->add_option("--k2", p.k2)->required();
  add_output_flags(lemma_cmd, c, false, false);

  auto* search_cmd = app.add_subcommand("search", "Randomized witness search with verified distances");
  search_cmd->require_subcommand(1);
  auto add_search = [&](CLI::App* cmd) {
    add_q_n(cmd);
    add_d(cmd);
    cmd->add_option("--trials", p.trials)->required();
    cmd->add_option("--seed", p.seed)->required();
    cmd->add_option("--threads", p.threads, "Worker threads (default: hardware concurrency)");
    cmd->add_option("--out", p.out_file, "Write the witness as a code file");
    add_output_flags(cmd, c, false, false);
  };
  auto* search_css_cmd = search_cmd->add_subcommand("css", "Search nested pairs");
  search_css_cmd->add_option("--k1", p.k1)->required();
  search_css_cmd->add_option("--k2", p.k2)->required();
  add_search(search_css_cmd);
  auto* search_stab_cmd = search_cmd->add_subcommand("stab", "Search isotropic codes");
  search_stab_cmd->add_option("--k", p.k)->required();
  add_search(search_stab_cmd);

  auto* distances_cmd = app.add_subcommand("distances", "Distances of a code file");
  distances_cmd->add_option("--in", p.in_file)->required();
  add_output_flags(distances_cmd, c, false, false);

  CommandResult res;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return res;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return res;
  } catch (const CLI::ParseError& e) {
    err << "agv: " << first_line(e.what()) << '\n';
    res.status = Status::error;
    res.exit_code = 1;
    return res;
  }

  bool printed = false;
  try {
    if (*bound_css_cmd)
      res = bound_css(p, c);
    else if (*bound_stab_cmd)
      res = bound_stab(p, c);
    else if (*maxk_stab_cmd)
      res = maxk_stab(p, c);
    else if (*best_css_cmd)
      res = best_css(p, c);
    else if (*frontier_cmd)
      res = frontier(p, out, printed);
    else if (*lemma_cmd)
      res = lemma(p);
    else if (*search_css_cmd)
      res = search(p, true);
    else if (*search_stab_cmd)
      res = search(p, false);
    else if (*distances_cmd)
      res = distances(p);
  } catch (const std::exception& e) {
    err << "agv: " << first_line(e.what()) << '\n';
    res = CommandResult{Status::error, json::object(), 1};
    return res;
  }

  res.payload["status"] = to_string(res.status);
  if (printed) return res;
  if (c.json_out)
    out << res.payload.dump() << '\n';
  else
    print_table(out, res.payload);
  return res;
}

}  // namespace agv::cli
