#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <nlohmann/json.hpp>
#include <ostream>
#include <sstream>

#include "cohsys/decision.hpp"

namespace cohsys::cli {

namespace {

using nlohmann::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Format { Human, Machine, Csv };

struct Options {
  std::string genus;
  std::string rank;
  std::string degree;
  std::string sections;
  std::string target = "u";
  std::string mode = "full";
  std::string format = "human";
  std::string output;
  bool no_petri = false;
  std::string genus_range;
  std::string rank_range;
  std::string degree_range;
  bool nonneg_beta = false;
};

Integer parse_int(const std::string& text, const char* flag) {
  try {
    return Integer(std::string_view(text));
  } catch (const DomainError&) {
    throw UsageError(std::string(flag) + ": expected an integer, got '" + text + "'");
  }
}

IntRange parse_range(const std::string& text, const char* flag) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    Integer v = parse_int(text, flag);
    return {v, v};
  }
  IntRange r{parse_int(text.substr(0, dots), flag), parse_int(text.substr(dots + 2), flag)};
  if (r.hi < r.lo) throw DomainError(std::string(flag) + ": empty range " + text);
  return r;
}

Format parse_format(const std::string& text) {
  if (text == "human") return Format::Human;
  if (text == "machine") return Format::Machine;
  return Format::Csv;
}

// ---------------------------------------------------------------------------
// Rendering helpers

std::string type_str(const CSType& t) {
  std::ostringstream os;
  os << t;
  return os.str();
}

json to_json(const CSType& t) { return {{"n", t.n.str()}, {"d", t.d.str()}, {"k", t.k.str()}}; }

json to_json(const Citation& c) {
  return {{"rule_id", c.rule_id}, {"text", c.text}, {"premises", c.premises}};
}

json to_json(const Verdict& v) {
  json prov = json::array();
  for (const auto& c : v.provenance) prov.push_back(to_json(c));
  return {{"status", std::string(to_string(v.status))}, {"note", v.note}, {"provenance", prov}};
}

std::vector<std::string> rule_ids(const Verdict& v) {
  std::vector<std::string> ids;
  for (const auto& c : v.provenance) {
    if (std::find(ids.begin(), ids.end(), c.rule_id) == ids.end()) ids.push_back(c.rule_id);
  }
  return ids;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::string verdict_line(const Verdict& v) {
  std::string line(to_string(v.status));
  if (v.status == Status::Open) return line + " (" + v.note + ")";
  if (!v.provenance.empty()) line += " (" + v.provenance.front().text + ")";
  return line;
}

std::string verdict_human(const Verdict& v) {
  std::string out = verdict_line(v) + "\n";
  for (std::size_t i = 1; i < v.provenance.size(); ++i) {
    out += "  " + v.provenance[i].rule_id + ": " + v.provenance[i].text + "\n";
  }
  return out;
}

/// Left-aligned columns separated by two spaces.
std::string table(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& r : rows) {
    width.resize(std::max(width.size(), r.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
  }
  std::string out;
  for (const auto& r : rows) {
    std::string line;
    for (std::size_t i = 0; i < r.size(); ++i) {
      line += r[i];
      if (i + 1 < r.size()) line += std::string(width[i] - r[i].size() + 2, ' ');
    }
    out += line + "\n";
  }
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

std::string csv(const std::vector<std::vector<std::string>>& rows) {
  std::string out;
  for (const auto& r : rows) {
    std::vector<std::string> f;
    for (const auto& s : r) f.push_back(csv_field(s));
    out += join(f, ",") + "\n";
  }
  return out;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// Subcommands

struct Query {
  CurveContext ctx;
  Integer n;
  Integer d;
  json input;
};

Query query(const Options& o) {
  Query q{CurveContext(parse_int(o.genus, "--genus"), !o.no_petri), parse_int(o.rank, "--rank"),
          parse_int(o.degree, "--degree"), json::object()};
  if (q.n < Integer(1)) throw DomainError("rank n must be >= 1, got " + q.n.str());
  q.input = {{"genus", q.ctx.genus.str()},
             {"rank", q.n.str()},
             {"degree", q.d.str()},
             {"petri", q.ctx.petri}};
  return q;
}

std::string cmd_beta(const Options& o, Format f) {
  Query q = query(o);
  const Integer k = o.sections.empty() ? q.n + 1 : parse_int(o.sections, "--sections");
  const CSType t(q.n, q.d, k);
  const Integer b = beta(q.ctx, t);
  if (f == Format::Machine) {
    q.input["sections"] = k.str();
    return dump({{"input", q.input}, {"type", to_json(t)}, {"beta", b.str()}});
  }
  return b.str() + "\n";
}

std::string cmd_alpha_l(const Options& o, Format f) {
  Query q = query(o);
  const Integer a = alpha_l(q.ctx, q.n, q.d);
  if (f == Format::Machine) return dump({{"input", q.input}, {"alpha_l", a.str()}});
  return a.str() + "\n";
}

std::string cmd_critical_values(const Options& o, Format f) {
  Query q = query(o);
  const auto cands = critical_value_candidates(q.ctx, q.n, q.d);
  if (f == Format::Machine) {
    json arr = json::array();
    for (const auto& c : cands) {
      json ws = json::array();
      for (const auto& w : c.witnesses) {
        ws.push_back({{"n1", w.n1.str()}, {"d1", w.d1.str()}, {"k1", w.k1.str()}});
      }
      arr.push_back({{"alpha", c.alpha.str()}, {"witnesses", ws}});
    }
    return dump({{"input", q.input},
                 {"alpha_l", alpha_l(q.ctx, q.n, q.d).str()},
                 {"candidates", arr}});
  }
  std::vector<std::vector<std::string>> rows;
  if (f == Format::Csv) {
    rows.push_back({"alpha", "n1", "d1", "k1"});
    for (const auto& c : cands) {
      for (const auto& w : c.witnesses) {
        rows.push_back({c.alpha.str(), w.n1.str(), w.d1.str(), w.k1.str()});
      }
    }
    return csv(rows);
  }
  rows.push_back({"alpha", "witnesses (n1,d1,k1)"});
  for (const auto& c : cands) {
    std::vector<std::string> ws;
    for (const auto& w : c.witnesses) {
      ws.push_back("(" + w.n1.str() + "," + w.d1.str() + "," + w.k1.str() + ")");
    }
    rows.push_back({c.alpha.str(), join(ws, " ")});
  }
  return table(rows);
}

std::string cmd_strata(const Options& o, Format f) {
  Query q = query(o);
  const Integer b = beta_np1(q.ctx, q.n, q.d);
  if (b.sign() < 0) {
    throw DomainError("β<0: empty by Prop. 6.1 (β = " + b.str() + "), no stratification");
  }
  const auto rows = stratification(q.ctx, q.n, q.d);
  if (f == Format::Machine) {
    json arr = json::array();
    for (const auto& r : rows) {
      arr.push_back({{"t", r.t.str()}, {"dim", r.dim.str()}, {"irreducible", r.irreducible}});
    }
    return dump({{"input", q.input},
                 {"beta", b.str()},
                 {"t_max", t_max(q.ctx, q.n, q.d).str()},
                 {"rows", arr}});
  }
  std::vector<std::vector<std::string>> out{{"t", "dim", "irreducible"}};
  for (const auto& r : rows) {
    out.push_back({r.t.str(), r.dim.str(), r.irreducible ? "yes" : "no"});
  }
  return f == Format::Csv ? csv(out) : table(out);
}

std::string cmd_count(const Options& o, Format f) {
  Query q = query(o);
  const Integer c = cardinality_beta_zero(q.ctx, q.n, q.d);
  if (f == Format::Machine) return dump({{"input", q.input}, {"count", c.str()}});
  return c.str() + "\n";
}

std::string cmd_flip(const Options& o, Format f) {
  Query q = query(o);
  const CanonicalFlip fl = canonical_flip(q.ctx, q.n, q.d);
  const Integer d2 = canonical_quotient_degree(q.ctx, q.n);
  if (f == Format::Machine) {
    return dump({{"input", q.input},
                 {"alpha", fl.alpha.str()},
                 {"d2", d2.str()},
                 {"type1", to_json(fl.type1)},
                 {"type2", to_json(fl.type2)},
                 {"flip_dim_bound", fl.flip_dim_bound.str()}});
  }
  return table({{"alpha", fl.alpha.str()},
                {"d2", d2.str()},
                {"type1", type_str(fl.type1)},
                {"type2", type_str(fl.type2)},
                {"flip_dim_bound", fl.flip_dim_bound.str()}});
}

std::string cmd_decide(const Options& o, Format f) {
  Query q = query(o);
  const Target target = parse_target(o.target);
  const Mode mode = parse_mode(o.mode);
  q.input["target"] = std::string(to_string(target));
  q.input["mode"] = std::string(to_string(mode));

  Verdict v;
  if (!o.sections.empty() && parse_int(o.sections, "--sections") != q.n + 1) {
    const CSType t(q.n, q.d, parse_int(o.sections, "--sections"));
    auto fact = side_fact(q.ctx, t);
    if (!fact) {
      throw DomainError("no stored result for type " + type_str(t) +
                        " with k != n+1; the decision table covers k = n+1");
    }
    q.input["sections"] = t.k.str();
    v = std::move(*fact);
  } else {
    v = decide(q.ctx, q.n, q.d, target, RuleSet::of(mode));
  }
  if (f == Format::Machine) return dump({{"input", q.input}, {"verdict", to_json(v)}});
  return verdict_human(v);
}

std::string cmd_sweep(const Options& o, Format f) {
  SweepRequest req;
  auto pick = [](const std::string& range, const std::string& single, const char* rflag,
                 const char* sflag) -> IntRange {
    if (!range.empty()) return parse_range(range, rflag);
    if (!single.empty()) {
      Integer v = parse_int(single, sflag);
      return {v, v};
    }
    throw UsageError(std::string("sweep needs ") + rflag + " or " + sflag);
  };
  req.genus = pick(o.genus_range, o.genus, "--genus-range", "--genus");
  req.rank = pick(o.rank_range, o.rank, "--rank-range", "--rank");
  req.degree = pick(o.degree_range, o.degree, "--degree-range", "--degree");
  if (req.genus.lo.sign() < 0) throw DomainError("genus must be >= 0, got " + req.genus.lo.str());
  if (req.rank.lo < Integer(1)) throw DomainError("rank n must be >= 1, got " + req.rank.lo.str());
  req.target = parse_target(o.target);
  req.mode = parse_mode(o.mode);
  req.petri = !o.no_petri;
  req.nonneg_beta_only = o.nonneg_beta;

  const auto cells = sweep(req);
  if (f == Format::Machine) {
    json arr = json::array();
    for (const auto& c : cells) {
      arr.push_back({{"genus", c.genus.str()},
                     {"rank", c.rank.str()},
                     {"degree", c.degree.str()},
                     {"beta", c.beta.str()},
                     {"verdict", to_json(c.verdict)}});
    }
    json input = {{"genus_range", req.genus.lo.str() + ".." + req.genus.hi.str()},
                  {"rank_range", req.rank.lo.str() + ".." + req.rank.hi.str()},
                  {"degree_range", req.degree.lo.str() + ".." + req.degree.hi.str()},
                  {"target", std::string(to_string(req.target))},
                  {"mode", std::string(to_string(req.mode))},
                  {"petri", req.petri},
                  {"nonneg_beta_only", req.nonneg_beta_only}};
    return dump({{"input", input}, {"cells", arr}});
  }
  std::vector<std::vector<std::string>> rows{{"genus", "rank", "degree", "beta", "verdict", "rule_ids"}};
  for (const auto& c : cells) {
    rows.push_back({c.genus.str(), c.rank.str(), c.degree.str(), c.beta.str(),
                    std::string(to_string(c.verdict.status)), join(rule_ids(c.verdict), ";")});
  }
  return f == Format::Csv ? csv(rows) : table(rows);
}

std::string cmd_butler(const Options& o, Format f) {
  Query q = query(o);
  const Mode mode = parse_mode(o.mode);
  q.input["mode"] = std::string(to_string(mode));
  const ButlerStatus s = butler_status(q.ctx, q.n, q.d, RuleSet::of(mode));
  if (f == Format::Machine) {
    return dump({{"input", q.input},
                 {"verdict", std::string(to_string(s.verdict))},
                 {"note", s.note},
                 {"basis", to_json(s.basis)}});
  }
  return std::string(to_string(s.verdict)) + " (" + s.note + ")\n";
}

std::string cmd_bn_report(const Options& o, Format f) {
  Query q = query(o);
  const Mode mode = parse_mode(o.mode);
  q.input["mode"] = std::string(to_string(mode));
  const BnReport r = bn_report(q.ctx, q.n, q.d, RuleSet::of(mode));
  if (f == Format::Machine) {
    json j = {{"input", q.input},
              {"beta", r.beta.str()},
              {"alpha_l", r.alpha_l.str()},
              {"b_verdict", to_json(r.b_verdict)},
              {"window", r.window},
              {"notes", r.notes}};
    j["irreducible"] = r.irreducible ? json(*r.irreducible) : json(nullptr);
    j["dimension"] = r.dimension ? json(r.dimension->str()) : json(nullptr);
    j["singular_locus"] = r.singular_locus ? json(*r.singular_locus) : json(nullptr);
    j["projective"] = r.projective ? json(*r.projective) : json(nullptr);
    return dump(j);
  }
  auto opt_bool = [](const std::optional<bool>& b) -> std::string {
    return b ? (*b ? "yes" : "no") : "unknown";
  };
  std::vector<std::vector<std::string>> rows{
      {"beta", r.beta.str()},
      {"alpha_l", r.alpha_l.str()},
      {"B", verdict_line(r.b_verdict)},
      {"window", r.window ? "yes" : "no"},
      {"irreducible", opt_bool(r.irreducible)},
      {"dimension", r.dimension ? r.dimension->str() : "unknown"},
      {"singular_locus", r.singular_locus.value_or("unknown")},
      {"projective", opt_bool(r.projective)}};
  for (const auto& n : r.notes) rows.push_back({"note", n});
  return table(rows);
}

std::string chain_text(const std::vector<Citation>& chain) {
  std::string out;
  for (const auto& c : chain) out += "    " + c.rule_id + ": " + c.text + "\n";
  return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Coherent systems of type (n,d,n+1): invariants and existence tables", "cohsys"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for all subcommands");

  Options o;
  const std::vector<std::string> table_formats{"human", "machine", "csv"};
  const std::vector<std::string> plain_formats{"human", "machine"};

  struct Subcommand {
    const char* name;
    const char* help;
    std::string (*fn)(const Options&, Format);
    bool sections;
    bool target;
    bool mode;
    bool tabular;
  };
  const std::vector<Subcommand> subcommands{
      {"beta", "Brill-Noether number beta(n,d,k); k defaults to n+1", cmd_beta, true, false, false, false},
      {"alpha-l", "Largest critical value bound alpha_l", cmd_alpha_l, false, false, false, false},
      {"critical-values", "Candidate critical values in (0, alpha_l]", cmd_critical_values, false, false,
       false, true},
      {"strata", "Torsion stratification of G_L", cmd_strata, false, false, false, true},
      {"count", "Number of points of G_L when beta = 0", cmd_count, false, false, false, false},
      {"flip", "Canonical flip at alpha_l", cmd_flip, false, false, false, false},
      {"decide", "Existence verdict with provenance", cmd_decide, true, true, true, false},
      {"sweep", "Verdict table over genus/rank/degree ranges", cmd_sweep, false, true, true, true},
      {"butler", "Stability of the dual span of a generated linear system", cmd_butler, false, false,
       true, false},
      {"bn-report", "Brill-Noether locus summary", cmd_bn_report, false, false, true, false},
  };

  std::vector<std::pair<CLI::App*, const Subcommand*>> subs;
  for (const auto& s : subcommands) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    const bool is_sweep = std::string_view(s.name) == "sweep";
    auto* g = sub->add_option("-g,--genus", o.genus, "Genus of the curve");
    auto* n = sub->add_option("-n,--rank", o.rank, "Rank n");
    auto* d = sub->add_option("-d,--degree", o.degree, "Degree d");
    if (!is_sweep) {
      g->required();
      n->required();
      d->required();
    }
    if (s.sections) sub->add_option("-k,--sections", o.sections, "Number of sections k");
    if (s.target) {
      sub->add_option("--target", o.target, "Moduli space: gl, u, us or b")
          ->check(CLI::IsMember({"gl", "u", "us", "b"}, CLI::ignore_case));
    }
    if (s.mode) {
      sub->add_option("--mode", o.mode, "Rule set: full or no-blanket")
          ->check(CLI::IsMember({"full", "no-blanket"}));
    }
    sub->add_flag("--no-petri", o.no_petri, "Do not assume the curve is Petri");
    sub->add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember(s.tabular ? table_formats : plain_formats));
    sub->add_option("--output", o.output, "Write the result to FILE instead of standard output");
    if (is_sweep) {
      sub->add_option("--genus-range", o.genus_range, "Genus range A..B")->excludes(g);
      sub->add_option("--rank-range", o.rank_range, "Rank range A..B")->excludes(n);
      sub->add_option("--degree-range", o.degree_range, "Degree range A..B")->excludes(d);
      sub->add_flag("--nonneg-beta", o.nonneg_beta, "Only report cells with beta >= 0");
    }
    subs.emplace_back(sub, &s);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n";
    const CLI::App* sub = nullptr;
    for (const auto& [s, _] : subs) {
      if (s->parsed()) sub = s;
    }
    err << (sub ? sub->help() : app.help());
    return kUsage;
  }

  try {
    for (const auto& [sub, cmd] : subs) {
      if (!sub->parsed()) continue;
      const std::string text = cmd->fn(o, parse_format(o.format));
      if (o.output.empty()) {
        out << text;
      } else {
        std::ofstream file(o.output, std::ios::binary);
        if (!file) throw DomainError("cannot open output file '" + o.output + "'");
        file << text;
        if (!file.flush()) throw DomainError("failed writing output file '" + o.output + "'");
      }
    }
    return kOk;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ConsistencyError& e) {
    err << "consistency error: " << e.what() << "\n  NONEMPTY chain:\n"
        << chain_text(e.nonempty_chain()) << "  EMPTY chain:\n"
        << chain_text(e.empty_chain());
    return kConsistency;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kDomain;
  }
}

}  // namespace cohsys::cli
