#include "davies/cli.hpp"

#include "davies/funcio.hpp"
#include "davies/rank.hpp"
#include "davies/reportjson.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <cstdint>
#include <optional>
#include <ostream>

namespace davies::cli {

namespace {

using Clock = std::chrono::steady_clock;

std::int64_t ms_since(Clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
}

std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (const unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (std::size_t i = 16; i-- > 0; v >>= 4) out[i] = digits[v & 0xf];
  return out;
}

std::string digest_of(const std::string& content) { return hex64(fnv1a64(content)); }

struct CommandResult {
  std::string command;
  OrderedJson inputs = OrderedJson::object();
  OrderedJson checks = OrderedJson::array();
  OrderedJson timings = OrderedJson::object();
  std::string report_path;  // empty: report to stdout
  bool ok = true;
};

void add_check(CommandResult& res, const std::string& name, bool ok, OrderedJson detail) {
  res.checks.push_back(OrderedJson{{"name", name}, {"ok", ok}, {"detail", std::move(detail)}});
  res.ok = res.ok && ok;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> parts;
  std::string cur;
  for (const char c : text) {
    if (c == ',') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

std::vector<Rational> parse_rational_list(const std::string& text, const char* what) {
  std::vector<Rational> out;
  for (const auto& part : split_list(text)) {
    try {
      out.push_back(parse_rational(part));
    } catch (const std::exception&) {
      throw std::invalid_argument(std::string(what) + ": '" + part + "' is not a rational");
    }
  }
  return out;
}

std::vector<std::size_t> parse_index_list(const std::string& text, std::size_t limit,
                                          const char* what) {
  std::vector<std::size_t> out;
  for (const auto& part : split_list(text)) {
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(part, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != part.size() || part.empty()) {
      throw std::invalid_argument(std::string(what) + ": '" + part + "' is not a point position");
    }
    if (v >= limit) {
      throw std::invalid_argument(std::string(what) + ": position " + part +
                                  " out of range (have " + std::to_string(limit) + " points)");
    }
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

int emit(CommandResult res, std::int64_t total_ms, std::ostream& out, std::ostream& err) {
  res.timings["total"] = total_ms;
  OrderedJson envelope;
  envelope["command"] = res.command;
  envelope["inputs"] = res.inputs;
  envelope["inputs_digest"] =
      digest_of(OrderedJson{{"command", res.command}, {"inputs", res.inputs}}.dump());
  envelope["checks"] = res.checks;
  envelope["verdict"] = res.ok ? "pass" : "fail";
  envelope["timings_ms"] = res.timings;

  const std::string text = to_json_string(envelope);
  if (res.report_path.empty()) {
    out << text;
  } else {
    write_text_file(res.report_path, text);
  }
  for (const auto& check : res.checks) {
    err << (check["ok"].get<bool>() ? "[ ok ] " : "[FAIL] ") << check["name"].get<std::string>()
        << "\n";
  }
  err << "verdict: " << (res.ok ? "pass" : "fail") << "\n";
  return res.ok ? 0 : 1;
}

Rational demo_payload_rational(std::size_t t) { return Rational(Integer(t)); }

CommandResult cmd_build(const std::string& points_path, const std::string& spec,
                        const std::string& out_path, bool verify,
                        std::optional<std::size_t> horizon) {
  CommandResult res;
  res.command = "build";
  const std::string points_text = read_text_file(points_path);
  res.inputs["points"] = points_path;
  res.inputs["points_digest"] = digest_of(points_text);
  res.inputs["function"] = spec;
  res.inputs["out"] = out_path;
  res.inputs["verify"] = verify;
  res.inputs["horizon"] = horizon ? OrderedJson(*horizon) : OrderedJson(nullptr);

  Representation rep(function_from_spec(spec));
  for (auto& p : points_from_json_text(points_text)) rep.add_point(std::move(p));
  rep.canonicalize();
  dump_representation(rep, out_path);
  add_check(res, "built", true,
            OrderedJson{{"points", rep.point_count()},
                        {"max_milestone", rep.max_recorded_milestone()},
                        {"rep", out_path}});

  if (verify) {
    const std::size_t h = horizon ? *horizon : rep.default_stress_horizon();
    const VerifyReport vr = rep.verify_all(h);
    add_check(res, "sum_identities", vr.ok, to_json(vr));
    const SReport sr = rep.check_S(3);
    add_check(res, "support_discipline", sr.ok, to_json(sr));
  }
  return res;
}

CommandResult cmd_verify(const std::string& rep_path, std::optional<std::size_t> horizon) {
  CommandResult res;
  res.command = "verify";
  const std::string text = read_text_file(rep_path);
  res.inputs["rep"] = rep_path;
  res.inputs["rep_digest"] = digest_of(text);
  res.inputs["horizon"] = horizon ? OrderedJson(*horizon) : OrderedJson(nullptr);

  std::optional<Representation> rep;
  try {
    rep.emplace(representation_from_json(text));
  } catch (const validation_error& e) {
    add_check(res, "load", false, OrderedJson{{"error", e.what()}});
    return res;
  }
  add_check(res, "load", true,
            OrderedJson{{"points", rep->point_count()},
                        {"function", rep->function().descriptor()}});

  const std::size_t h = horizon ? *horizon : rep->default_stress_horizon();
  const VerifyReport vr = rep->verify_all(h);
  add_check(res, "sum_identities", vr.ok, to_json(vr));
  const SReport sr = rep->check_S(3);
  add_check(res, "support_discipline", sr.ok, to_json(sr));
  return res;
}

CommandResult cmd_rank_certify(const std::string& a_text, const std::string& b_text,
                               const std::string& eps_text, unsigned max_refine) {
  CommandResult res;
  res.command = "rank-certify";
  const std::vector<Rational> a = parse_rational_list(a_text, "--a");
  const std::vector<Rational> b = parse_rational_list(b_text, "--b");
  const Rational eps = parse_rational(eps_text);
  res.inputs["a"] = a_text;
  res.inputs["b"] = b_text;
  res.inputs["eps"] = eps_text;
  res.inputs["max_refine"] = max_refine;

  const Certificate cert = certify_exp_matrix_nonsingular(a, b, eps, max_refine);
  add_check(res, "nonsingular_certified",
            cert.verdict == CertVerdict::kNonsingularCertified, to_json(cert));
  return res;
}

CommandResult cmd_lowerbound(const std::string& rep_path, const std::optional<std::string>& rows,
                             const std::optional<std::string>& cols) {
  CommandResult res;
  res.command = "lowerbound";
  const std::string text = read_text_file(rep_path);
  res.inputs["rep"] = rep_path;
  res.inputs["rep_digest"] = digest_of(text);
  res.inputs["rows"] = rows ? OrderedJson(*rows) : OrderedJson(nullptr);
  res.inputs["cols"] = cols ? OrderedJson(*cols) : OrderedJson(nullptr);

  std::optional<Representation> rep;
  try {
    rep.emplace(representation_from_json(text));
  } catch (const validation_error& e) {
    add_check(res, "load", false, OrderedJson{{"error", e.what()}});
    return res;
  }
  add_check(res, "load", true, OrderedJson{{"points", rep->point_count()}});

  std::vector<std::size_t> row_ix(rep->point_count());
  std::vector<std::size_t> col_ix(rep->point_count());
  for (std::size_t i = 0; i < rep->point_count(); ++i) row_ix[i] = col_ix[i] = i;
  if (rows) row_ix = parse_index_list(*rows, rep->point_count(), "--rows");
  if (cols) col_ix = parse_index_list(*cols, rep->point_count(), "--cols");

  const LowerBoundReport lb = lowerbound_check(*rep, row_ix, col_ix);
  add_check(res, "active_ge_rank", lb.ok, to_json(lb));
  return res;
}

CommandResult cmd_demo_growth(const std::string& sizes, const std::string& spec,
                              const std::string& out_path) {
  CommandResult res;
  res.command = "demo-growth";
  res.inputs["sizes"] = sizes;
  res.inputs["function"] = spec;
  res.report_path = out_path;

  const std::size_t dots = sizes.find("..");
  std::size_t lo = 0, hi = 0;
  bool parsed = dots != std::string::npos;
  if (parsed) {
    try {
      std::size_t pos1 = 0, pos2 = 0;
      const std::string lo_text = sizes.substr(0, dots);
      const std::string hi_text = sizes.substr(dots + 2);
      lo = std::stoull(lo_text, &pos1);
      hi = std::stoull(hi_text, &pos2);
      parsed = !lo_text.empty() && pos1 == lo_text.size() && !hi_text.empty() &&
               pos2 == hi_text.size();
    } catch (const std::exception&) {
      parsed = false;
    }
  }
  if (!parsed) throw std::invalid_argument("--sizes must look like A..B, got '" + sizes + "'");
  if (lo < 1 || lo > hi || hi > 12) {
    throw std::invalid_argument("--sizes must satisfy 1 <= A <= B <= 12, got '" + sizes + "'");
  }

  const PairFunction f = function_from_spec(spec);
  const bool e0_points = f.descriptor() == "e0";
  for (std::size_t m = lo; m <= hi; ++m) {
    const auto start = Clock::now();
    Representation rep(f);
    for (std::size_t t = 0; t < m; ++t) {
      const std::string label = "p" + std::to_string(t);
      if (e0_points) {
        rep.add_point(label, make_e0_point("", static_cast<int>(t % 2)));
      } else {
        rep.add_point(label, demo_payload_rational(t));
      }
    }
    rep.canonicalize();
    const VerifyReport vr = rep.verify_all(rep.default_stress_horizon());
    const SReport sr = rep.check_S(3);
    std::vector<std::size_t> all(m);
    for (std::size_t i = 0; i < m; ++i) all[i] = i;
    const LowerBoundReport lb = lowerbound_check(rep, all, all);
    add_check(res, "size_" + std::to_string(m), vr.ok && sr.ok && lb.ok,
              OrderedJson{{"points", m},
                          {"pairs_checked", vr.pairs_checked},
                          {"max_milestone", rep.max_recorded_milestone()},
                          {"active_count", lb.active_count},
                          {"grid_rank", lb.grid_rank}});
    res.timings["size_" + std::to_string(m)] = ms_since(start);
  }
  return res;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact finite-support sum representations of pair functions"};
  app.require_subcommand(1);

  std::string points_path, build_spec, build_out;
  bool build_verify = false;
  std::uint64_t horizon_value = 0;
  auto* build_cmd = app.add_subcommand("build", "construct a representation over a point set");
  build_cmd->add_option("--points", points_path, "points JSON file")->required();
  build_cmd->add_option("--function", build_spec, "function descriptor or table:PATH")->required();
  build_cmd->add_option("--out", build_out, "output representation file")->required();
  build_cmd->add_flag("--verify", build_verify, "verify after building");
  auto* build_horizon = build_cmd->add_option("--horizon", horizon_value, "stress horizon");

  std::string verify_rep;
  auto* verify_cmd = app.add_subcommand("verify", "re-check a stored representation");
  verify_cmd->add_option("rep", verify_rep, "representation file")->required();
  auto* verify_horizon = verify_cmd->add_option("--horizon", horizon_value, "stress horizon");

  std::string rank_a, rank_b, rank_eps = "1/1000000";
  unsigned max_refine = 20;
  auto* rank_cmd = app.add_subcommand("rank-certify", "certify det(e^(a_i b_j)) != 0");
  rank_cmd->add_option("--a", rank_a, "left exponents, comma separated rationals")->required();
  rank_cmd->add_option("--b", rank_b, "right exponents, comma separated rationals")->required();
  rank_cmd->add_option("--eps", rank_eps, "initial enclosure width");
  rank_cmd->add_option("--max-refine", max_refine, "maximum halvings");

  std::string lb_rep, lb_rows, lb_cols;
  auto* lb_cmd = app.add_subcommand("lowerbound", "active indices vs grid rank");
  lb_cmd->add_option("rep", lb_rep, "representation file")->required();
  auto* lb_rows_opt = lb_cmd->add_option("--rows", lb_rows, "row positions, comma separated");
  auto* lb_cols_opt = lb_cmd->add_option("--cols", lb_cols, "column positions, comma separated");

  std::string demo_sizes, demo_spec, demo_out;
  auto* demo_cmd = app.add_subcommand("demo-growth", "build, verify, and measure a size sweep");
  demo_cmd->add_option("--sizes", demo_sizes, "size range A..B")->required();
  demo_cmd->add_option("--function", demo_spec, "function descriptor or table:PATH")->required();
  demo_cmd->add_option("--out", demo_out, "report file (default stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  const auto start = Clock::now();
  try {
    CommandResult res;
    if (build_cmd->parsed()) {
      std::optional<std::size_t> h;
      if (build_horizon->count() > 0) h = static_cast<std::size_t>(horizon_value);
      res = cmd_build(points_path, build_spec, build_out, build_verify, h);
    } else if (verify_cmd->parsed()) {
      std::optional<std::size_t> h;
      if (verify_horizon->count() > 0) h = static_cast<std::size_t>(horizon_value);
      res = cmd_verify(verify_rep, h);
    } else if (rank_cmd->parsed()) {
      res = cmd_rank_certify(rank_a, rank_b, rank_eps, max_refine);
    } else if (lb_cmd->parsed()) {
      std::optional<std::string> rows, cols;
      if (lb_rows_opt->count() > 0) rows = lb_rows;
      if (lb_cols_opt->count() > 0) cols = lb_cols;
      res = cmd_lowerbound(lb_rep, rows, cols);
    } else {
      res = cmd_demo_growth(demo_sizes, demo_spec, demo_out);
    }
    return emit(std::move(res), ms_since(start), out, err);
  } catch (const std::exception& e) {
    out << OrderedJson{{"error", e.what()}}.dump(2) << "\n";
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace davies::cli
