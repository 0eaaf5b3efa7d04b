#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "mfkit/blocks.hpp"
#include "mfkit/cohomology.hpp"
#include "mfkit/error.hpp"
#include "mfkit/fusion.hpp"
#include "mfkit/h1calc.hpp"
#include "mfkit/surfaces.hpp"

namespace mfkit::cli {
namespace {

using nlohmann::json;

enum class Format { Json, Csv, Pretty };

struct Config {
  std::optional<int> ell;
  std::optional<std::string> variant;
  Format format = Format::Json;
  bool oracle_enabled = false;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Format parse_format(const std::string& text) {
  if (text == "json") return Format::Json;
  if (text == "csv") return Format::Csv;
  if (text == "pretty") return Format::Pretty;
  throw UsageError("--format must be json, csv or pretty, got '" + text + "'");
}

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("config", "cannot open config file " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error("config", path + ": " + e.what());
  }
  if (!j.is_object()) throw Error("config", path + ": config must be an object");
  Config c;
  if (j.contains("ell")) {
    if (!j["ell"].is_number_integer()) throw Error("config", "/ell must be an integer");
    c.ell = j["ell"].get<int>();
  }
  if (j.contains("variant")) {
    if (!j["variant"].is_string()) throw Error("config", "/variant must be a string");
    c.variant = j["variant"].get<std::string>();
  }
  if (j.contains("format")) {
    if (!j["format"].is_string()) throw Error("config", "/format must be a string");
    try {
      c.format = parse_format(j["format"].get<std::string>());
    } catch (const UsageError& e) {
      throw Error("config", std::string("/format: ") + e.what());
    }
  }
  if (j.contains("oracle_enabled")) {
    if (!j["oracle_enabled"].is_boolean()) throw Error("config", "/oracle_enabled must be a boolean");
    c.oracle_enabled = j["oracle_enabled"].get<bool>();
  }
  return c;
}

std::vector<int> parse_int_list(const std::string& text, char sep, const std::string& flag) {
  std::vector<int> out;
  if (text.empty()) return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw UsageError(flag + ": '" + item + "' is not an integer");
    }
  }
  return out;
}

std::string csv_field(const json& v) {
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") != std::string::npos) {
    std::string quoted = "\"";
    for (char ch : s) quoted += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return quoted + "\"";
  }
  return s;
}

void emit(const json& value, Format format, std::ostream& out) {
  switch (format) {
    case Format::Json: out << value.dump() << "\n"; return;
    case Format::Pretty: out << value.dump(2) << "\n"; return;
    case Format::Csv: {
      if (!value.is_object()) {
        out << value.dump() << "\n";
        return;
      }
      bool first = true;
      for (const auto& [k, v] : value.items()) {
        out << (first ? "" : ",") << csv_field(k);
        first = false;
      }
      out << "\n";
      first = true;
      for (const auto& [k, v] : value.items()) {
        out << (first ? "" : ",") << csv_field(v);
        first = false;
      }
      out << "\n";
      return;
    }
  }
}

json error_object(const std::string& code, const std::string& message) {
  return {{"error", {{"code", code}, {"message", message}}}};
}

// Options shared by the theory-dependent subcommands.
struct TheoryOpts {
  std::optional<int> ell;
  std::optional<std::string> variant;

  void attach(CLI::App* app) {
    app->add_option("--ell", ell, "Level parameter l");
    app->add_option("--variant", variant, "su2 or so3");
  }

  ColorSet resolve(const Config& config) const {
    const std::optional<int> l = ell ? ell : config.ell;
    const std::optional<std::string> v = variant ? variant : config.variant;
    if (!l) throw UsageError("--ell is required (no default in config)");
    if (!v) throw UsageError("--variant is required (no default in config)");
    Variant parsed;
    try {
      parsed = parse_variant(*v);
    } catch (const Error&) {
      throw UsageError("--variant must be su2 or so3, got '" + *v + "'");
    }
    return ColorSet(*l, parsed);
  }
};

void dim_sweep(const ColorSet& cs, int gmax, int nmax, std::ostream& out) {
  out << "genus,colors,dim\n";
  const auto& colors = cs.colors();
  for (int g = 0; g <= gmax; ++g) {
    for (int n = 0; n <= nmax; ++n) {
      // Nondecreasing tuples only; dim_block is symmetric.
      std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);
      while (true) {
        BlockLabel label{g, {}};
        for (auto i : idx) label.colors.push_back(colors[i]);
        std::string joined;
        for (std::size_t i = 0; i < label.colors.size(); ++i)
          joined += (i ? ":" : "") + std::to_string(label.colors[i]);
        out << g << "," << joined << "," << dim_block(label, cs) << "\n";
        int pos = n - 1;
        while (pos >= 0 && idx[static_cast<std::size_t>(pos)] + 1 == colors.size()) --pos;
        if (pos < 0) break;
        const std::size_t v = idx[static_cast<std::size_t>(pos)] + 1;
        for (std::size_t i = static_cast<std::size_t>(pos); i < idx.size(); ++i) idx[i] = v;
      }
    }
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"mfkit: modular functor fusion data, block dimensions and H1 calculus"};
  app.require_subcommand(1);
  std::string config_path;
  std::string format_text;
  long seed = 0;
  app.add_option("--config", config_path, "JSON config file (overrides MFKIT_CONFIG)");
  app.add_option("--format", format_text, "json, csv or pretty");
  app.add_option("--seed", seed, "Accepted for test-harness ordering; never affects results");

  TheoryOpts fusion_t, dim_t, twist_t, props_t, embed_t, trunc_t, certify_t, oracle_t;

  auto* fusion_cmd = app.add_subcommand("fusion", "Fusion coefficients N_abc");
  fusion_t.attach(fusion_cmd);
  bool fusion_table = false;
  std::string fusion_abc;
  fusion_cmd->add_flag("--table", fusion_table, "Print the full table as CSV");
  fusion_cmd->add_option("--abc", fusion_abc, "Single triple a,b,c");

  auto* dim_cmd = app.add_subcommand("dim", "Block dimension from the gluing recursion");
  dim_t.attach(dim_cmd);
  std::optional<int> dim_genus;
  std::string dim_colors;
  std::string dim_sweep_text;
  dim_cmd->add_option("--genus", dim_genus, "Genus");
  dim_cmd->add_option("--colors", dim_colors, "Boundary colors a,b,...");
  dim_cmd->add_option("--sweep", dim_sweep_text, "gmax,nmax: CSV table of all sorted labels");

  auto* twist_cmd = app.add_subcommand("twist", "Twist scalars t_lambda");
  twist_t.attach(twist_cmd);
  std::optional<int> twist_lambda;
  twist_cmd->add_option("--lambda", twist_lambda, "Single color");

  auto* props_cmd = app.add_subcommand("props", "Properties (I) and (II)");
  props_t.attach(props_cmd);
  bool props_detail = false;
  props_cmd->add_flag("--detail", props_detail, "Include supports and collisions");

  auto* embed_cmd = app.add_subcommand("embed", "Embeddability of a colored surface");
  embed_t.attach(embed_cmd);
  std::string embed_triple;
  int embed_gprime = 0;
  bool embed_connected = false;
  std::optional<int> embed_g;
  embed_cmd->add_option("--triple", embed_triple, "h,n,c1:c2:...")->required();
  embed_cmd->add_option("--gprime", embed_gprime, "Target genus g' (>= 4)")->required();
  embed_cmd->add_flag("--connected", embed_connected, "Build the connected embedding into S_g");
  embed_cmd->add_option("--g", embed_g, "Genus g for --connected");

  auto* trunc_cmd = app.add_subcommand("truncate", "Validate the embeddable triples as a truncation set");
  trunc_t.attach(trunc_cmd);
  int trunc_gprime = 0;
  ProbeBound bound;
  trunc_cmd->add_option("--gprime", trunc_gprime, "g' (>= 4)")->required();
  trunc_cmd->add_option("--max-genus", bound.max_genus, "Genus bound for the permutation probe");
  trunc_cmd->add_option("--max-points", bound.max_points, "Boundary bound for the permutation probe");

  auto* h1_cmd = app.add_subcommand("h1", "Twisted cohomology via Fox calculus");
  std::string h1_pres;
  std::string h1_rep;
  bool h1_adjoint = false;
  bool h1_projective = false;
  h1_cmd->add_option("--presentation", h1_pres, "file or builtin:name")->required();
  h1_cmd->add_option("--rep", h1_rep, "Representation file")->required();
  h1_cmd->add_flag("--adjoint", h1_adjoint, "Use the adjoint representation");
  h1_cmd->add_flag("--projective", h1_projective, "Accept relators mapping to scalars");

  auto* certify_cmd = app.add_subcommand("certify", "Certificate for the genus reduction");
  certify_t.attach(certify_cmd);
  int certify_g = 0;
  bool certify_explain = false;
  certify_cmd->add_option("--g", certify_g, "Genus g")->required();
  certify_cmd->add_flag("--explain", certify_explain, "Add a rendered explanation with citations");

  auto* oracle_cmd = app.add_subcommand("oracle-check", "Compare the recursion with the numeric Verlinde sum");
  oracle_t.attach(oracle_cmd);
  bool oracle_flag = false;
  std::optional<int> oracle_genus;
  std::string oracle_colors;
  oracle_cmd->add_flag("--enable-oracle", oracle_flag, "Allow the test-only oracle");
  oracle_cmd->add_option("--genus", oracle_genus, "Genus")->required();
  oracle_cmd->add_option("--colors", oracle_colors, "Boundary colors a,b,...");

  Format format = Format::Json;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);

    Config config;
    if (config_path.empty()) {
      if (const char* env = std::getenv("MFKIT_CONFIG"); env != nullptr && *env != '\0') config_path = env;
    }
    if (!config_path.empty()) config = load_config(config_path);
    format = format_text.empty() ? config.format : parse_format(format_text);

    if (fusion_cmd->parsed()) {
      const ColorSet cs = fusion_t.resolve(config);
      if (!fusion_abc.empty()) {
        const auto abc = parse_int_list(fusion_abc, ',', "--abc");
        if (abc.size() != 3) throw UsageError("--abc needs exactly three colors");
        for (int c : abc) cs.require(c);
        emit({{"N", fusion_dim(abc[0], abc[1], abc[2], cs)}}, format, out);
        return 0;
      }
      (void)fusion_table;  // the table is the default output
      out << "c,a";
      for (int b : cs.colors()) out << ",b=" << b;
      out << "\n";
      for (int c : cs.colors())
        for (int a : cs.colors()) {
          out << c << "," << a;
          for (int b : cs.colors()) out << "," << fusion_dim(a, b, c, cs);
          out << "\n";
        }
      return 0;
    }

    if (dim_cmd->parsed()) {
      const ColorSet cs = dim_t.resolve(config);
      if (!dim_sweep_text.empty()) {
        const auto gn = parse_int_list(dim_sweep_text, ',', "--sweep");
        if (gn.size() != 2 || gn[0] < 0 || gn[1] < 0) throw UsageError("--sweep needs gmax,nmax");
        std::ostringstream table;
        dim_sweep(cs, gn[0], gn[1], table);
        out << table.str();
        return 0;
      }
      if (!dim_genus) throw UsageError("--genus is required unless --sweep is given");
      const BlockLabel label{*dim_genus, parse_int_list(dim_colors, ',', "--colors")};
      emit({{"dim", dim_block(label, cs)}}, format, out);
      return 0;
    }

    if (twist_cmd->parsed()) {
      const ColorSet cs = twist_t.resolve(config);
      if (twist_lambda) {
        cs.require(*twist_lambda);
        const CycloScalar t = twist(*twist_lambda, cs);
        emit({{"lambda", *twist_lambda}, {"twist", to_json(t)}, {"text", t.to_string()}}, format, out);
        return 0;
      }
      json all = json::object();
      for (int c : cs.colors()) all[std::to_string(c)] = twist(c, cs).to_string();
      emit({{"twists", all}, {"order", cs.twist_order()}}, format, out);
      return 0;
    }

    if (props_cmd->parsed()) {
      const ColorSet cs = props_t.resolve(config);
      const PropertyIResult pi = check_property_I(cs);
      const PropertyIIResult pii = check_property_II(cs);
      json result = {{"I", pi.holds}, {"II", pii.holds}};
      if (props_detail) {
        result["genus_one_support"] = pi.genus_one_support;
        result["genus_two_support"] = pi.genus_two_support;
        json coll = json::array();
        for (const auto& [a, b] : pii.collisions) coll.push_back({a, b});
        result["collisions"] = coll;
        if (pii.witness) result["witness"] = {pii.witness->first, pii.witness->second};
      }
      emit(result, format, out);
      return 0;
    }

    if (embed_cmd->parsed()) {
      const ColorSet cs = embed_t.resolve(config);
      const auto first = embed_triple.find(',');
      const auto second = first == std::string::npos ? std::string::npos : embed_triple.find(',', first + 1);
      std::vector<int> hn;
      std::vector<int> colors;
      if (second == std::string::npos) {
        hn = parse_int_list(embed_triple, ',', "--triple");
      } else {
        hn = parse_int_list(embed_triple.substr(0, second), ',', "--triple");
        colors = parse_int_list(embed_triple.substr(second + 1), ':', "--triple");
      }
      if (hn.size() != 2) throw UsageError("--triple must look like h,n,c1:c2:...");
      if (embed_connected) {
        if (!embed_g) throw UsageError("--g is required with --connected");
        const ConnectedEmbedding ce = connected_embedding(hn[0], hn[1], colors, *embed_g, embed_gprime, cs);
        emit({{"found", true},
              {"witness", to_json(ce.source)},
              {"connected", to_json(ce.embedding)},
              {"annuli", ce.annuli},
              {"others", ce.others}},
             format, out);
        return 0;
      }
      const EmbedResult r = is_embeddable(hn[0], hn[1], colors, embed_gprime, cs);
      emit({{"found", r.found}, {"witness", r.witness ? to_json(*r.witness) : json(nullptr)}}, format, out);
      return 0;
    }

    if (trunc_cmd->parsed()) {
      const ColorSet cs = trunc_t.resolve(config);
      const TruncationCheck check = validate_truncation_set(embeddable_membership(trunc_gprime, cs), cs, bound);
      emit({{"ok", check.ok},
            {"axiom", check.ok ? json(nullptr) : json(check.axiom)},
            {"failing", check.failing ? json(to_string(*check.failing)) : json(nullptr)}},
           format, out);
      return 0;
    }

    if (h1_cmd->parsed()) {
      const GroupPresentation pres = h1_pres.rfind("builtin:", 0) == 0
                                         ? builtin_presentation(h1_pres.substr(8))
                                         : load_presentation(h1_pres);
      const RelatorMode mode = h1_projective ? RelatorMode::Projective : RelatorMode::Linear;
      MatrixRep rep = load_rep(h1_rep, &pres, mode);
      json scalars = json::array();
      if (h1_projective) {
        const RelatorCheck check = check_relators(pres, rep, mode);
        bool linear = true;
        for (const auto& s : check.scalars) {
          scalars.push_back(s.to_string());
          linear = linear && s == CycloScalar(1);
        }
        if (!h1_adjoint && !linear)
          throw Error("projective_rep", "relators map to nontrivial scalars; pass --adjoint to work at the adjoint level");
      }
      if (h1_adjoint) rep = adjoint(rep);
      json report = to_json(h_report(pres, rep));
      if (h1_projective) report["relator_scalars"] = scalars;
      emit(report, format, out);
      return 0;
    }

    if (certify_cmd->parsed()) {
      const ColorSet cs = certify_t.resolve(config);
      const CertificateResult result = build_certificate(certify_g, cs);
      json j = to_json(result);
      if (certify_explain) {
        json lines = json::array();
        std::istringstream text(explain(result));
        for (std::string line; std::getline(text, line);) lines.push_back(line);
        j["explanation"] = lines;
      }
      emit(j, format, out);
      return 0;
    }

    if (oracle_cmd->parsed()) {
      const ColorSet cs = oracle_t.resolve(config);
      if (!oracle_flag && !config.oracle_enabled)
        throw UsageError("--enable-oracle (or oracle_enabled in the config) is required for oracle-check");
      const BlockLabel label{*oracle_genus, parse_int_list(oracle_colors, ',', "--colors")};
      const Dim rec = dim_block(label, cs);
      const Dim oracle = verlinde_oracle(label, cs);
      emit({{"recursion", rec}, {"oracle", oracle}, {"agree", rec == oracle}}, format, out);
      return 0;
    }
    throw UsageError("no subcommand given");
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    emit(error_object("usage", e.what()), format, out);
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const UsageError& e) {
    emit(error_object("usage", e.what()), format, out);
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    emit(error_object(e.code(), e.what()), format, out);
    err << e.code() << ": " << e.what() << "\n";
    return 1;
  }
}

}  // namespace mfkit::cli
