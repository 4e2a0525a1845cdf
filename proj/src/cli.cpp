#include "ncmf/cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>
#include <openssl/evp.h>

#include "ncmf/eisenstein.hpp"
#include "ncmf/hauptmodul.hpp"

namespace ncmf {

namespace {

using Json = nlohmann::ordered_json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ReplayMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct HelpRequested {
  std::string text;
};

struct Options {
  std::string group = "G1";
  long order = 500;
  std::string residue = "auto";
  std::string format = "auto";
  bool recursive = false;
  long n = 1;
  int k = 4;
  long N = 100000;
  int precision = 30;
  long chunk = 4096;
  long hp_cutoff = 1024;
  unsigned workers = 0;
  long cmax = 200000;
  std::string out;
  std::string csv;
  std::string manifest;
};

struct Outcome {
  std::string command;  // e.g. "eis sum"
  std::string output;   // primary artifact
  std::string side;     // printed to stdout when the primary artifact goes to a file
  std::string output_path;
  Json parameters = Json::object();
};

Json bound_json(double b) {
  if (std::isinf(b)) return "inf";
  return b;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json complex_json(const ComplexHP& z, int digits) {
  return Json{{"re", z.re().to_string(digits)}, {"im", z.im().to_string(digits)}};
}

GroupId parse_group(const std::string& name) { return GroupId::parse(name); }

void require_precision(int p) {
  if (p < 15) throw UsageError("precision must be at least 15 digits, got " + std::to_string(p));
}

void require_format(const std::string& f, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed) {
    if (f == a) return;
  }
  throw UsageError("unsupported format '" + f + "'");
}

// "auto" follows the --out extension, falling back to `fallback`.
std::string resolve_format(const Options& o, const std::string& fallback) {
  if (o.format != "auto") return o.format;
  auto ends = [&](const char* ext) {
    const std::string e(ext);
    return o.out.size() >= e.size() && o.out.compare(o.out.size() - e.size(), e.size(), e) == 0;
  };
  if (ends(".json")) return "json";
  if (ends(".csv")) return "csv";
  return fallback;
}

Json table_json(const GroupConstants& k, long order, const std::vector<TableRow>& rows) {
  Json a = Json::array();
  for (const auto& r : rows) a.push_back({{"n", r.n}, {"value", r.value}});
  return {{"groupId", k.u.group.name()},
          {"uDescription", k.u.description},
          {"width", k.u.width},
          {"uPower", to_string(k.u.u_power)},
          {"order", order},
          {"rows", a}};
}

std::string table_csv(const std::vector<TableRow>& rows) {
  std::ostringstream out;
  out << "n,value\n";
  for (const auto& r : rows) out << r.n << ',' << r.value << '\n';
  return out.str();
}

std::string coefficient_table(const std::string& title, const Series& s) {
  std::ostringstream out;
  out << "# " << title << '\n';
  for (long n = s.start(); n < s.trunc_order(); ++n) out << n << ' ' << to_string(s.coeff(n)) << '\n';
  return out.str();
}

Json coefficient_array(const Series& s) {
  Json a = Json::array();
  for (long n = s.start(); n < s.trunc_order(); ++n) a.push_back({{"n", n}, {"value", to_string(s.coeff(n))}});
  return a;
}

SumOptions sum_options(const Options& o) {
  if (o.chunk < 1) throw UsageError("chunk size must be positive");
  return SumOptions{o.chunk, o.hp_cutoff, o.workers};
}

Outcome hauptmodul_solve(const Options& o) {
  const std::string format = resolve_format(o, "text");
  require_format(format, {"text", "json", "csv"});
  GroupConstants k = load_constants(parse_group(o.group));
  HauptmodulSeries h = o.recursive ? solve_hauptmodul_recursive(k, o.order) : solve_hauptmodul(k, o.order);
  Outcome r;
  r.parameters = {{"group", o.group}, {"order", o.order}, {"method", o.recursive ? "recursive" : "newton"}};
  if (format == "text") {
    r.output = coefficient_table(o.group + " normalized hauptmodul ahat_n, n < " + std::to_string(o.order), h.z);
  } else if (format == "csv") {
    r.output = table_csv(export_normalized_table(h));
  } else {
    r.output = dump(table_json(k, o.order, export_normalized_table(h)));
  }
  return r;
}

Outcome hauptmodul_verify(const Options& o) {
  GroupConstants k = load_constants(parse_group(o.group));
  Outcome r;
  r.parameters = {{"group", o.group}};
  Report rep = verify_constants(k);
  r.output = rep.to_text();
  if (!rep.ok()) throw std::runtime_error("constant verification failed for " + o.group + "\n" + rep.to_text());
  return r;
}

Outcome hauptmodul_certify(const Options& o) {
  int residue = 0;
  if (o.residue == "2" || o.residue == "4") residue = std::stoi(o.residue);
  else if (o.residue != "auto") throw UsageError("residue must be auto, 2 or 4");
  GroupConstants k = load_constants(parse_group(o.group));
  HauptmodulSeries h = solve_hauptmodul(k, o.order);
  UbdCertificate c = ubd_certificate(k, h, residue);
  Json attempts = Json::array();
  for (const auto& a : c.attempts) {
    Json tail = Json::array();
    for (long i : a.nonzero_indices) {
      if (i >= o.order - 50) tail.push_back(i);
    }
    attempts.push_back({{"prime", a.prime},
                        {"integral", a.integral},
                        {"integrality", a.integrality_detail},
                        {"uPowerValuation", a.u_valuation},
                        {"reducedF3cubedE3", poly_f7_to_string(a.reduced_f3e3)},
                        {"reducedA1PowerE", poly_f7_to_string(a.reduced_a1e)},
                        {"equationHolds", a.equation_holds},
                        {"jhatReducesToLeadingTerm", a.jhat_reduces_to_leading_term},
                        {"infinitelyManyNonzero", a.infinitely_many_nonzero},
                        {"nonzeroCount", a.nonzero_indices.size()},
                        {"nonzeroInLast50", tail},
                        {"certified", a.certified}});
  }
  Json j{{"schema", "ncmf/1"}, {"group", o.group}, {"order", o.order}, {"certified", c.ok()}};
  j["certifiedPrime"] = c.ok() ? Json(c.attempts[*c.certified_attempt].prime) : Json(nullptr);
  if (c.shape_sign) {
    std::string eq = std::string("x^7 ") + (*c.shape_sign < 0 ? "- " : "+ ") + "jhat x^3 + " +
                     std::to_string(*c.shape_constant);
    j["shape"] = {{"sign", *c.shape_sign}, {"constant", *c.shape_constant}, {"equation", eq}};
  }
  j["attempts"] = attempts;
  Outcome r;
  r.parameters = {{"group", o.group}, {"order", o.order}, {"residue", o.residue}};
  r.output = dump(j);
  return r;
}

Outcome hauptmodul_export(const Options& o) {
  const std::string format = resolve_format(o, "json");
  require_format(format, {"json", "csv", "series"});
  GroupConstants k = load_constants(parse_group(o.group));
  HauptmodulSeries h = solve_hauptmodul(k, o.order);
  Outcome r;
  r.parameters = {{"group", o.group}, {"order", o.order}, {"format", format}};
  if (format == "series") r.output = series_to_json(h.z) + "\n";
  else if (format == "csv") r.output = table_csv(export_normalized_table(h));
  else r.output = dump(table_json(k, o.order, export_normalized_table(h)));
  return r;
}

Outcome group_dump(const Options& o) {
  const GroupDescriptor& g = group(parse_group(o.group));
  auto matrices = [](const std::vector<UnimodularMatrix>& ms) {
    Json a = Json::array();
    for (const auto& m : ms) a.push_back(m.to_string());
    return a;
  };
  Json j{{"schema", "ncmf/1"},
         {"group", g.id.name()},
         {"homomorphism",
          {{"index", g.hom->index},
           {"S", g.hom->S.to_cycle_string()},
           {"R", g.hom->R.to_cycle_string()},
           {"T", g.hom->T.to_cycle_string()}}},
         {"basepoint", g.basepoint},
         {"cuspWidth", g.cusp_width},
         {"cuspCycle", g.cusp_cycle},
         {"presentation", matrices(g.presentation)},
         {"schreier", matrices(g.schreier)}};
  Outcome r;
  r.parameters = {{"group", o.group}};
  r.output = dump(j);
  return r;
}

Outcome group_outer(const Options& o) {
  Outcome r;
  r.parameters = {{"group", o.group}};
  r.output = outer_automorphism_image(group(parse_group(o.group))).name() + "\n";
  return r;
}

Outcome eis_sum(const Options& o) {
  require_precision(o.precision);
  const GroupId id = parse_group(o.group);
  PartialSum d = D_partial(group(id), o.n, o.k, o.N, o.precision, sum_options(o));
  Json j{{"schema", "ncmf/1"},
         {"group", o.group},
         {"n", o.n},
         {"k", o.k},
         {"N", o.N},
         {"precision", o.precision},
         {"chunkSize", o.chunk},
         {"hpCutoff", o.hp_cutoff},
         {"D", complex_json(d.value, o.precision)},
         {"errorBound", bound_json(d.error_bound)},
         {"roundingBound", d.rounding_bound},
         {"heuristic", d.heuristic}};
  if (o.k >= 4 && o.k % 2 == 0) {
    EisensteinCoefficient a = eisenstein_coefficient(d);
    Json c = complex_json(a.value, o.precision);
    c["errorBound"] = bound_json(a.error_bound);
    c["roundingBound"] = a.rounding_bound;
    c["constantTerm"] = a.constant_term;
    j["coefficient"] = c;
    const auto& canon = canonical_groups();
    if (std::find(canon.begin(), canon.end(), id) != canon.end() && o.N > 0) {
      NormalizedCoefficient z = normalize(a, u_numeric(load_constants(id), o.precision));
      Json zn = complex_json(z.value, o.precision);
      zn["errorBound"] = bound_json(z.error_bound);
      j["normalized"] = zn;
    }
  }
  Outcome r;
  r.parameters = {{"group", o.group}, {"n", o.n},         {"k", o.k},
                  {"N", o.N},         {"precision", o.precision}, {"chunkSize", o.chunk},
                  {"hpCutoff", o.hp_cutoff}, {"workers", o.workers}};
  r.output = dump(j);
  return r;
}

Outcome eis_g2(const Options& o) {
  const std::string format = resolve_format(o, "text");
  require_format(format, {"text", "json"});
  GroupConstants k = load_constants(parse_group(o.group));
  Series s = g2_exact(k, o.order);
  Outcome r;
  r.parameters = {{"group", o.group}, {"order", o.order}};
  if (format == "text") {
    r.output = coefficient_table(o.group + " weight-2 Eisenstein series a_n/u^n, n <= " + std::to_string(o.order), s);
  } else {
    r.output = dump({{"schema", "ncmf/1"}, {"group", o.group}, {"order", o.order}, {"coefficients", coefficient_array(s)}});
  }
  return r;
}

Outcome eis_g4fit(const Options& o) {
  require_precision(o.precision);
  G4FitReport rep = g4_fit_and_predict(o.N, o.precision, sum_options(o));
  Json preds = Json::array();
  for (const auto& p : rep.predictions) {
    preds.push_back({{"n", p.n},
                     {"predicted", p.predicted},
                     {"bound", p.bound},
                     {"published", p.published},
                     {"reference", p.reference},
                     {"deviation", p.deviation},
                     {"publishedUnit", p.published_unit},
                     {"withinBounds", p.within}});
  }
  Json j{{"schema", "ncmf/1"},
         {"group", "G1"},
         {"N", rep.N_sum},
         {"precision", rep.digits},
         {"a1Numeric", rep.a1_numeric},
         {"a1Imag", rep.a1_imag},
         {"a1Bound", rep.a1_bound},
         {"C", rep.C},
         {"CBound", rep.C_bound},
         {"condition", rep.condition},
         {"a0Predicted", rep.a0_predicted},
         {"a1Residual", rep.a1_residual},
         {"predictions", preds}};
  Outcome r;
  r.parameters = {{"N", o.N}, {"precision", o.precision}, {"chunkSize", o.chunk}, {"workers", o.workers}};
  r.output = dump(j);
  return r;
}

Outcome eis_stats(const Options& o) {
  const GroupId id = parse_group(o.group);
  const bool csv = !o.csv.empty();
  StatsDataset s = stats_scan(group(id), o.n, o.cmax, o.workers, csv);
  Json bands = Json::array();
  for (const auto& b : s.bands) {
    bands.push_back({{"band", b.name},
                     {"residues", b.residues},
                     {"count", b.count},
                     {"mean27", b.mean27},
                     {"sd27", b.sd27},
                     {"mean12", b.mean12},
                     {"sd12", b.sd12}});
  }
  Json summary{{"schema", "ncmf/1"},
               {"group", o.group},
               {"n", o.n},
               {"cmax", o.cmax},
               {"exceptionThreshold", "|X(n,c)| >= c^(5/7)"},
               {"exceptions", s.exceptions},
               {"exceptionCount", s.exceptions.size()},
               {"bands", bands}};
  Outcome r;
  r.parameters = {{"group", o.group}, {"n", o.n}, {"cmax", o.cmax}, {"workers", o.workers}};
  if (csv) {
    std::ostringstream out;
    write_stats_csv(s, out);
    r.output = out.str();
    r.output_path = o.csv;
    r.side = dump(summary);
  } else {
    r.output = dump(summary);
  }
  return r;
}

struct Parsed {
  Options opt;
  std::string command;
  std::string replay_manifest;
};

// Builds the parser; `leaf` receives the chosen subcommand path.
Parsed parse(const std::vector<std::string>& args) {
  Parsed p;
  Options& o = p.opt;
  CLI::App app{"Modular forms for the index-7 noncongruence subgroups of PSL2(Z)", "ncmf"};
  app.require_subcommand(1);

  auto add_group = [&](CLI::App* s) { s->add_option("--group", o.group, "group id such as G1, U6"); };
  auto add_out = [&](CLI::App* s) {
    s->add_option("--out", o.out, "primary output file (default: stdout)");
    s->add_option("--manifest", o.manifest, "manifest path (default: <out>.manifest.json)");
  };
  auto add_workers = [&](CLI::App* s) { s->add_option("--workers", o.workers, "worker threads (0: all cores)"); };

  auto* hm = app.add_subcommand("hauptmodul", "exact hauptmodul expansions");
  hm->require_subcommand(1);
  auto* solve = hm->add_subcommand("solve", "normalized coefficients ahat_n for n < order");
  add_group(solve);
  add_out(solve);
  solve->add_option("--order", o.order);
  solve->add_option("--format", o.format, "text, json or csv (auto: from the --out extension)");
  solve->add_flag("--recursive", o.recursive, "coefficient recursion instead of Newton iteration");
  auto* verify = hm->add_subcommand("verify", "check the embedded constants");
  add_group(verify);
  add_out(verify);
  auto* cert = hm->add_subcommand("certify-ubd", "unbounded-denominator certificate modulo a prime over 7");
  add_group(cert);
  add_out(cert);
  cert->add_option("--order", o.order);
  cert->add_option("--residue", o.residue, "auto, or 2 or 4: the image of zeta3 in F7");
  auto* exp = hm->add_subcommand("export", "export the normalized series");
  add_group(exp);
  add_out(exp);
  exp->add_option("--order", o.order);
  exp->add_option("--format", o.format, "json, csv or series");

  auto* eis = app.add_subcommand("eis", "Eisenstein series");
  eis->require_subcommand(1);
  auto* sum = eis->add_subcommand("sum", "partial sum D(n, k) and the coefficient a_n");
  add_group(sum);
  add_out(sum);
  add_workers(sum);
  sum->add_option("--n", o.n, "coefficient index");
  sum->add_option("--k", o.k, "weight");
  sum->add_option("--N", o.N, "cutoff in c");
  sum->add_option("--precision", o.precision, "decimal digits, at least 15");
  sum->add_option("--chunk", o.chunk, "values of c per work unit");
  sum->add_option("--hp-cutoff", o.hp_cutoff, "c up to this value is summed in MPFR");
  auto* g2 = eis->add_subcommand("g2", "exact weight-2 series");
  add_group(g2);
  add_out(g2);
  g2->add_option("--order", o.order)->default_val(20);
  g2->add_option("--format", o.format, "text or json (auto: from the --out extension)");
  auto* g4 = eis->add_subcommand("g4fit", "fit the weight-4 ansatz for G1 and predict a_2..a_10");
  add_out(g4);
  add_workers(g4);
  g4->add_option("--N", o.N);
  g4->add_option("--precision", o.precision);
  g4->add_option("--chunk", o.chunk, "values of c per work unit");
  g4->add_option("--hp-cutoff", o.hp_cutoff);
  auto* st = eis->add_subcommand("stats", "X(n, c) statistics and the c^(5/7) exception scan");
  add_group(st);
  add_workers(st);
  st->add_option("--n", o.n, "coefficient index");
  st->add_option("--cmax", o.cmax, "scan c up to this value");
  st->add_option("--csv", o.csv, "per-c records");
  st->add_option("--manifest", o.manifest, "manifest path (default: <csv>.manifest.json)");

  auto* grp = app.add_subcommand("group", "subgroup data");
  grp->require_subcommand(1);
  auto* gd = grp->add_subcommand("dump", "descriptor as JSON");
  add_group(gd);
  add_out(gd);
  auto* go = grp->add_subcommand("outer", "image under (a b; c d) -> (a -b; -c d)");
  add_group(go);
  add_out(go);

  auto* rp = app.add_subcommand("replay", "rerun a manifest and compare output digests");
  rp->add_option("--manifest", p.replay_manifest)->required();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested{app.help()};
  }

  for (auto* top : app.get_subcommands()) {
    p.command = top->get_name();
    for (auto* leaf : top->get_subcommands()) p.command += " " + leaf->get_name();
  }
  return p;
}

Outcome execute(const Parsed& p) {
  const Options& o = p.opt;
  Outcome r;
  if (p.command == "hauptmodul solve") r = hauptmodul_solve(o);
  else if (p.command == "hauptmodul verify") r = hauptmodul_verify(o);
  else if (p.command == "hauptmodul certify-ubd") r = hauptmodul_certify(o);
  else if (p.command == "hauptmodul export") r = hauptmodul_export(o);
  else if (p.command == "eis sum") r = eis_sum(o);
  else if (p.command == "eis g2") r = eis_g2(o);
  else if (p.command == "eis g4fit") r = eis_g4fit(o);
  else if (p.command == "eis stats") r = eis_stats(o);
  else if (p.command == "group dump") r = group_dump(o);
  else if (p.command == "group outer") r = group_outer(o);
  else throw UsageError("unknown command '" + p.command + "'");
  r.command = p.command;
  if (r.output_path.empty()) r.output_path = o.out;
  return r;
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  f << bytes;
  if (!f) throw std::runtime_error("write to " + path + " failed");
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

int replay(const std::string& manifest_path, std::ostream& out) {
  Json m = Json::parse(read_file(manifest_path));
  if (m.value("schema", "") != kManifestSchema) throw std::runtime_error("not a run manifest: " + manifest_path);
  std::vector<std::string> args = m.at("command").get<std::vector<std::string>>();
  Outcome r = execute(parse(args));
  const std::string digest = sha256_hex(r.output);
  const bool match = digest == m.at("output_sha256").get<std::string>();
  out << dump({{"manifest", manifest_path},
               {"command", r.command},
               {"recordedSha256", m.at("output_sha256")},
               {"replayedSha256", digest},
               {"identical", match}});
  if (!match) throw ReplayMismatch("replayed output differs from the manifest digest");
  return 0;
}

void error_object(std::ostream& err, const std::string& kind, const std::string& message) {
  err << Json{{"error", {{"kind", kind}, {"message", message}}}}.dump() << '\n';
}

}  // namespace

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 failed");
  }
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  return hex.str();
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    Parsed p = parse(args);
    if (p.command == "replay") return replay(p.replay_manifest, out);

    const auto t0 = std::chrono::steady_clock::now();
    Outcome r = execute(p);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    if (r.output_path.empty()) {
      out << r.output;
    } else {
      write_file(r.output_path, r.output);
      out << r.side;
    }
    std::string manifest = p.opt.manifest;
    if (manifest.empty() && !r.output_path.empty()) manifest = r.output_path + ".manifest.json";
    if (!manifest.empty()) {
      Json m{{"schema", kManifestSchema},
             {"artifact_version", kArtifactVersion},
             {"command", args},
             {"subcommand", r.command},
             {"group", r.parameters.value("group", "")},
             {"parameters", r.parameters},
             {"wall_time_seconds", wall},
             {"output", r.output_path.empty() ? "-" : r.output_path},
             {"output_sha256", sha256_hex(r.output)}};
      write_file(manifest, dump(m));
    }
    return 0;
  } catch (const HelpRequested& h) {
    out << h.text;
    return 0;
  } catch (const CLI::ParseError& e) {
    error_object(err, "usage", e.what());
    return 2;
  } catch (const UsageError& e) {
    error_object(err, "usage", e.what());
    return 2;
  } catch (const GroupError& e) {
    error_object(err, "group", e.what());
    return 2;
  } catch (const ReplayMismatch& e) {
    error_object(err, "replay", e.what());
    return 1;
  } catch (const std::invalid_argument& e) {
    error_object(err, "usage", e.what());
    return 2;
  } catch (const std::exception& e) {
    error_object(err, "computation", e.what());
    return 1;
  }
}

}  // namespace ncmf
