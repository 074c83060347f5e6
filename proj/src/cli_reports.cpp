#include "hhlab/cli_reports.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "hhlab/errors.hpp"
#include "hhlab/text_formats.hpp"
#include "json.hpp"

namespace hhlab {

namespace {

using Json = nlohmann::ordered_json;

const char* const kCommands[] = {"koszul-check", "dual-print", "hh-dims", "cup", "center", "resolution-check"};

Json family_json(const FamilyParams& fp) {
  Json q = Json::array();
  for (const auto& x : fp.q) q.push_back(x.to_string());
  return Json{{"family", to_string(fp.kind)}, {"m", fp.m}, {"n", fp.n}, {"field", fp.field.to_string()}, {"q", q}};
}

Json checks_json(const std::vector<Verdict>& checks) {
  Json out = Json::array();
  for (const auto& c : checks) out.push_back(Json{{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
  return out;
}

std::string family_line(const FamilyParams& fp) {
  std::string q;
  for (std::size_t k = 0; k < fp.q.size(); ++k) q += (k ? "," : "") + fp.q[k].to_string();
  std::string s = to_string(fp.kind) + " m=" + std::to_string(fp.m);
  if (fp.two_index()) s += " n=" + std::to_string(fp.n);
  return s + " field=" + fp.field.to_string() + " q=(" + q + ")";
}

std::string check_lines(const std::vector<Verdict>& checks) {
  std::string out;
  for (const auto& c : checks) {
    out += (c.ok ? "PASS  " : "FAIL  ") + c.name;
    if (!c.detail.empty()) out += "  [" + c.detail + "]";
    out += "\n";
  }
  return out;
}

bool all_ok(const std::vector<Verdict>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const Verdict& v) { return v.ok; });
}

const FamilyParams& need_family(const RunConfig& config) {
  if (!config.params) throw InvalidArgument(config.command + " needs a family (--family or --config)");
  return *config.params;
}

const FamilyParams& need_lambda_mn(const RunConfig& config) {
  const FamilyParams& fp = need_family(config);
  if (fp.kind != FamilyKind::LambdaMN) throw InvalidArgument(config.command + " requires family lambda_mn");
  return fp;
}

CommandResult finish(const RunConfig& config, Json doc, std::string table, int status) {
  if (config.format == OutputFormat::Machine) {
    doc["status"] = status;
    return {status, doc.dump(2) + "\n"};
  }
  return {status, std::move(table)};
}

Json start_doc(const RunConfig& config) {
  Json doc{{"schema", 1}, {"command", config.command}};
  if (config.params) doc["family"] = family_json(*config.params);
  return doc;
}

QuadraticPresentation input_presentation(const RunConfig& config) {
  if (config.presentation_text) return parse_presentation(*config.presentation_text);
  return build_presentation(need_family(config));
}

std::string cochain_string(const Hochschild& h, const Cochain& f) {
  const CochainSpace& s = h.cochain_space(f.degree);
  const Quiver& q = h.resolution().quiver();
  if (f.coords.empty()) return "0";
  std::string out;
  for (const auto& [k, c] : f.coords) {
    if (!out.empty()) out += " + ";
    std::string cs = coeff_string(c);
    out += (cs == "1" ? "" : cs + "*") + "(" + to_string(s.basis[k].gen) + ", " + path_to_string(q, s.basis[k].x) + ")";
  }
  return out;
}

std::string notice_for(const FamilyParams& fp) {
  const Scalar xi = parameter_product(fp);
  if (!order_of(xi)) return "";
  return "parameter product " + xi.to_string() +
         " is a root of unity: the generic hypothesis fails and the table carries no claim";
}

}  // namespace

RunConfig make_run_config(const CliOptions& o) {
  RunConfig c;
  c.command = o.command;
  if (std::find(std::begin(kCommands), std::end(kCommands), o.command) == std::end(kCommands))
    throw InvalidArgument("unknown command '" + o.command + "'");
  std::map<std::string, std::string> kv;
  if (o.config_file) kv = parse_key_values(read_file(*o.config_file));
  if (o.family) kv["family"] = *o.family;
  if (o.m) kv["m"] = std::to_string(*o.m);
  if (o.n) kv["n"] = std::to_string(*o.n);
  if (o.field) kv["field"] = *o.field;
  if (o.q) kv["q"] = *o.q;
  if (o.max_degree) kv["max-degree"] = std::to_string(*o.max_degree);
  if (o.max_length) kv["max-length"] = std::to_string(*o.max_length);
  if (o.format) kv["format"] = *o.format;

  if (kv.count("family")) {
    std::string text;
    for (const char* key : {"family", "m", "n", "field", "q"})
      if (kv.count(key)) text += std::string(key) + ": " + kv[key] + "\n";
    c.params = parse_family_config(text);
  }
  if (o.presentation_file) c.presentation_text = read_file(*o.presentation_file);
  if (kv.count("max-degree")) {
    c.max_degree = std::stoi(kv["max-degree"]);
    if (*c.max_degree < 0) throw InvalidArgument("--max-degree must be nonnegative");
  }
  if (kv.count("max-length")) {
    long v = std::stol(kv["max-length"]);
    if (v < 1) throw InvalidArgument("--max-length must be positive");
    c.max_length = static_cast<std::size_t>(v);
  }
  if (kv.count("path-cap")) c.path_cap = std::stoul(kv["path-cap"]);
  if (kv.count("format")) {
    if (kv["format"] == "table")
      c.format = OutputFormat::Table;
    else if (kv["format"] == "machine")
      c.format = OutputFormat::Machine;
    else
      throw InvalidArgument("--format must be table or machine");
  }
  return c;
}

CommandResult cmd_koszul_check(const RunConfig& config) {
  Json doc = start_doc(config);
  std::ostringstream table;
  int status = 0;
  std::optional<QuadraticPresentation> p;
  try {
    p = input_presentation(config);
    p->validate();
  } catch (const ParseError& e) {
    doc["error"] = e.what();
    return finish(config, doc, std::string("presentation: unreadable: ") + e.what() + "\n", 1);
  } catch (const InvalidArgument& e) {
    doc["error"] = e.what();
    return finish(config, doc, std::string("presentation: invalid: ") + e.what() + "\n", 1);
  }
  Json parts = Json::array();
  auto run = [&](const std::string& name, const QuadraticPresentation& pres) {
    QuadAlgebra alg(pres);
    const auto& cert = alg.certificate();
    Json failures = Json::array();
    table << name << ": " << (cert.ok ? "certified" : "NOT confluent") << " (" << cert.overlaps_checked
          << " overlaps checked)\n";
    for (const auto& f : cert.failures) {
      std::string word = path_to_string(alg.quiver(), f.word);
      std::string left = f.via_left.to_string(alg.quiver()), right = f.via_right.to_string(alg.quiver());
      table << "  overlap " << word << ": " << left << " vs " << right << "\n";
      failures.push_back(Json{{"word", word}, {"via_left", left}, {"via_right", right}});
    }
    if (!cert.ok) status = 1;
    parts.push_back(Json{{"name", name},
                         {"certified", cert.ok},
                         {"overlaps_checked", cert.overlaps_checked},
                         {"failures", failures}});
  };
  run("presentation", *p);
  run("dual", quadratic_dual(*p));
  doc["results"] = parts;
  return finish(config, doc, table.str(), status);
}

CommandResult cmd_dual_print(const RunConfig& config) {
  QuadraticPresentation dual = quadratic_dual(input_presentation(config));
  Json doc = start_doc(config);
  Json rels = Json::array();
  for (const auto& r : dual.relations) rels.push_back(r.to_string(dual.quiver));
  doc["relations"] = rels;
  doc["presentation"] = write_presentation(dual);
  return finish(config, doc, write_presentation(dual), 0);
}

CommandResult cmd_hh_dims(const RunConfig& config) {
  const FamilyParams& fp = need_lambda_mn(config);
  const int top = config.max_degree.value_or(3 * std::max(fp.m, fp.n) + 2);
  Hochschild h(fp);
  const std::string notice = notice_for(fp);
  std::vector<HHRow> rows = hh_table(h, top);
  std::vector<Verdict> checks;
  if (fp.m == fp.n) {
    Verdict dims{"cochain dimensions match the closed form", true, ""};
    for (const auto& r : rows)
      if (r.dim_m != cochain_dim_closed_form(fp.n, r.l)) {
        dims.ok = false;
        dims.detail = "degree " + std::to_string(r.l);
        break;
      }
    checks.push_back(dims);
    Verdict agree{"closed-form delta equals induced delta", true, ""};
    for (int l = 1; l <= top + 1 && agree.ok; ++l)
      if (!(h.delta_closed_form(l) == h.delta_induced(l))) agree = {agree.name, false, "degree " + std::to_string(l)};
    checks.push_back(agree);
    if (notice.empty()) {
      bool ok = true;
      for (const auto& r : rows) ok = ok && r.hh == (r.l == 1 ? 2u : (r.l == 0 || r.l == 2 ? 1u : 0u));
      checks.push_back({"dim HH^l = 1,2,1,0,...", ok, ""});
    }
  }
  const int status = all_ok(checks) ? 0 : 1;

  std::ostringstream t;
  t << family_line(fp) << "\n";
  if (!notice.empty()) t << "notice: " << notice << "\n";
  t << "l\tdim M^l\trank d^l\trank d^(l+1)\tdim HH^l\n";
  Json jrows = Json::array(), dims = Json::array();
  for (const auto& r : rows) {
    t << r.l << "\t" << r.dim_m << "\t" << r.rank_in << "\t" << r.rank_out << "\t" << r.hh << "\n";
    jrows.push_back(Json{{"l", r.l}, {"dim_m", r.dim_m}, {"rank_in", r.rank_in}, {"rank_out", r.rank_out}, {"hh", r.hh}});
    dims.push_back(r.hh);
  }
  t << "dims: " << dims.dump() << "\n" << check_lines(checks);
  Json doc = start_doc(config);
  doc["max_degree"] = top;
  if (!notice.empty()) doc["notice"] = notice;
  doc["rows"] = jrows;
  doc["dims"] = dims;
  doc["checks"] = checks_json(checks);
  return finish(config, doc, t.str(), status);
}

CommandResult cmd_cup(const RunConfig& config) {
  const FamilyParams& fp = need_lambda_mn(config);
  const int top = config.max_degree.value_or(3 * std::max(fp.m, fp.n) + 2);
  RingVerdict v = hh_ring_low_degree(fp, top);
  std::ostringstream t;
  t << family_line(fp) << "\n";
  Json doc = start_doc(config);
  doc["skipped"] = v.skipped;
  if (v.skipped) {
    t << "notice: " << v.notice << "\nring check skipped\n";
    doc["notice"] = v.notice;
    return finish(config, doc, t.str(), 0);
  }
  Hochschild h(fp);
  const Cochain uv = h.cup_product(h.f_a(), h.f_b());
  t << "u = " << cochain_string(h, h.f_a()) << "\n";
  t << "v = " << cochain_string(h, h.f_b()) << "\n";
  t << "uv = " << cochain_string(h, uv) << "\n";
  t << check_lines(v.checks);
  t << "verdict: " << (v.ok() ? "HH* is an exterior algebra on u, v" : "exterior-algebra presentation NOT confirmed")
    << "\n";
  doc["uv"] = cochain_string(h, uv);
  doc["checks"] = checks_json(v.checks);
  doc["exterior_algebra"] = v.ok();
  return finish(config, doc, t.str(), v.ok() ? 0 : 1);
}

std::string match_table(const MatchReport& r) {
  std::ostringstream t;
  t << family_line(r.params) << "\n";
  t << "model: " << to_string(r.model.shape);
  if (r.model.shape != CenterShape::ScalarsOnly) t << " |x|=" << r.model.x_len << " |y|=" << r.model.y_len;
  if (r.model.shape == CenterShape::TruncatedCone) t << " |w|=" << r.model.w_len << " p=" << r.model.p;
  if (r.model.epsilon) t << " epsilon=" << r.model.epsilon->to_string();
  t << "\nL\tcomputed\tpredicted\tmodel rank\tcentral\n";
  for (const auto& row : r.rows)
    t << row.length << "\t" << row.computed << "\t" << row.predicted << "\t" << row.model_rank << "\t"
      << (row.model_central ? "yes" : "no") << (row.ok() ? "" : "\t<- mismatch") << "\n";
  t << check_lines(r.verdicts);
  t << "consistent: " << (r.consistent ? "yes" : "no") << "\n";
  return t.str();
}

CommandResult cmd_center(const RunConfig& config) {
  const FamilyParams& fp = need_family(config);
  if (!fp.has_sink()) throw InvalidArgument("center requires family gamma_q or gamma_mn");
  MatchReport r = match_structure(fp, config.max_length);
  Json doc = start_doc(config);
  Json model{{"shape", to_string(r.model.shape)}, {"x_len", r.model.x_len}, {"y_len", r.model.y_len},
             {"w_len", r.model.w_len}, {"p", r.model.p}};
  if (r.model.epsilon) model["epsilon"] = r.model.epsilon->to_string();
  doc["model"] = model;
  doc["max_length"] = r.max_length;
  Json rows = Json::array();
  for (const auto& row : r.rows)
    rows.push_back(Json{{"length", row.length},
                        {"computed", row.computed},
                        {"predicted", row.predicted},
                        {"model_rank", row.model_rank},
                        {"model_central", row.model_central}});
  doc["rows"] = rows;
  doc["checks"] = checks_json(r.verdicts);
  doc["consistent"] = r.consistent;
  return finish(config, doc, match_table(r), r.consistent ? 0 : 1);
}

CommandResult cmd_resolution_check(const RunConfig& config, const std::function<void(int, GeneratorMap&)>& perturb) {
  const FamilyParams& fp = need_lambda_mn(config);
  const int top = config.max_degree.value_or(5);
  Resolution r(fp);
  std::vector<Verdict> checks;
  std::vector<std::string> skipped;
  for (int l = 0; l <= top; ++l) checks.push_back(r.d_squared_check(l));
  {
    Verdict v{"left and right recursions agree", true, ""};
    for (int l = 1; l <= top && v.ok; ++l)
      for (const auto& g : r.generators(l))
        if (!r.right_recursion_check(g.l, g.p, g.i, g.j)) {
          v = {v.name, false, to_string(g)};
          break;
        }
    checks.push_back(v);
  }
  for (int l = 2; l <= top; ++l) {
    try {
      checks.push_back({"span g^" + std::to_string(l) + " = K_" + std::to_string(l), r.span_matches_oracle(l, config.path_cap), ""});
    } catch (const CapExceeded& e) {
      skipped.push_back(e.what());
    }
  }
  for (int l = 1; l <= top; ++l) {
    GeneratorMap d = r.differential(l);
    if (perturb) perturb(l, d);
    Verdict v = r.minimality_check(d);
    v.name = "minimality of d_" + std::to_string(l);
    checks.push_back(v);
  }
  for (int l = 0; l <= top; ++l) checks.push_back(r.exactness_check(l));
  const int status = all_ok(checks) ? 0 : 1;

  std::ostringstream t;
  t << family_line(fp) << "\n" << check_lines(checks);
  for (const auto& s : skipped) t << "SKIP  " << s << "\n";
  Json doc = start_doc(config);
  doc["max_degree"] = top;
  doc["checks"] = checks_json(checks);
  doc["skipped"] = skipped;
  return finish(config, doc, t.str(), status);
}

CommandResult run_command(const RunConfig& config) {
  try {
    if (config.command == "koszul-check") return cmd_koszul_check(config);
    if (config.command == "dual-print") return cmd_dual_print(config);
    if (config.command == "hh-dims") return cmd_hh_dims(config);
    if (config.command == "cup") return cmd_cup(config);
    if (config.command == "center") return cmd_center(config);
    if (config.command == "resolution-check") return cmd_resolution_check(config);
    throw InvalidArgument("unknown command '" + config.command + "'");
  } catch (const Error& e) {
    return {2, std::string("error: ") + e.what() + "\n"};
  }
}

}  // namespace hhlab
