// Command-line frontend: exact spectra of algebraic 4-form operators,
// prepotential-to-connection pipelines, and the built-in check suite.
#include <CLI11.hpp>
#include <json.hpp>

#include <cstddef>
#include <fstream>
#include <iostream>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <gg/b_omega.hpp>
#include <gg/canonical_forms.hpp>
#include <gg/expr.hpp>
#include <gg/form.hpp>
#include <gg/gauge.hpp>
#include <gg/harmonic.hpp>
#include <gg/linalg.hpp>
#include <gg/poly.hpp>
#include <gg/polymatrix.hpp>
#include <gg/scalar.hpp>
#include <gg/spin3.hpp>
#include <gg/verify.hpp>

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitVerification = 1;
constexpr int kExitUsage = 2;

// Input problems: bad flags, bad config, rejected prepotentials.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(const std::string& text, const std::string& output_path) {
  if (output_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(output_path);
  if (!out) throw UsageError("cannot write to " + output_path);
  out << text;
}

// ----------------------------------------------------------- forms spectrum

struct FourFormModel {
  gg::MetricSpace space;
  gg::Form omega;
  std::string space_label;
  std::string param_label;
};

std::size_t group_param(const std::string& group, int m_flag,
                        std::size_t fallback, std::size_t minimum) {
  if (m_flag < 0) return fallback;
  const auto m = static_cast<std::size_t>(m_flag);
  if (m < minimum) {
    throw UsageError("--m must be at least " + std::to_string(minimum) +
                     " for group " + group);
  }
  return m;
}

FourFormModel resolve_group(const std::string& group, int m_flag) {
  if (group == "kaehler") {
    const std::size_t m = group_param(group, m_flag, 2, 2);
    return {gg::MetricSpace::euclidean(2 * m), gg::kaehler_form_sq(m),
            "Euclidean R^" + std::to_string(2 * m),
            "m = " + std::to_string(m)};
  }
  if (group == "hyperkaehler" || group == "qk") {
    const std::size_t m = group_param(group, m_flag, 1, 1);
    return {gg::MetricSpace::euclidean(4 * m), gg::quaternionic_form(m),
            "Euclidean R^" + std::to_string(4 * m),
            "m = " + std::to_string(m)};
  }
  if (group == "g2") {
    auto forms = gg::g2_forms();
    return {forms.space, forms.psi, "Euclidean R^7", ""};
  }
  if (group == "spin7") {
    return {gg::spin7_space(), gg::spin7_form(), "Euclidean R^8", ""};
  }
  if (group == "kostant-so-n") {
    const std::size_t n = group_param(group, m_flag, 4, 3);
    if (n > 8) throw UsageError("--m beyond 8 is not supported for " + group);
    const auto basis = gg::so_n_basis(n);
    return {gg::MetricSpace::euclidean(n),
            gg::kostant_form(basis, gg::trace_form(basis)),
            "Euclidean R^" + std::to_string(n), "n = " + std::to_string(n)};
  }
  if (group == "kostant-u2") {
    const auto basis = gg::u2_so4_basis();
    return {gg::MetricSpace::euclidean(4),
            gg::kostant_form(basis, gg::trace_form(basis)), "Euclidean R^4",
            ""};
  }
  if (group == "spin-m") {
    const std::size_t m = group_param(group, m_flag, 1, 1);
    if (m != 1 && m != 3) {
      throw UsageError("--m must be 1 or 3 for group spin-m");
    }
    const gg::Mat we = gg::standard_omega_e(2);
    return {gg::spin_m_space(m, we), gg::spin_m_form(m, we),
            "R^" + std::to_string(2 * 2 * (m + 1)) +
                " with the pairing-induced split metric",
            "m = " + std::to_string(m)};
  }
  throw UsageError("unknown group " + group);
}

// Eigenvalue the ratios are quoted against: for the quaternionic groups the
// cluster matching dim sp(m) = m(2m+1) (the most negative one on a tie),
// otherwise the leading eigenvalue.
std::size_t ratio_base(const std::string& group, int m_flag,
                       const std::vector<gg::EigenCluster>& clusters) {
  if (group == "hyperkaehler" || group == "qk") {
    const std::size_t m = group_param(group, m_flag, 1, 1);
    const std::size_t want = m * (2 * m + 1);
    for (std::size_t k = clusters.size(); k-- > 0;) {
      if (clusters[k].multiplicity == want) return k;
    }
  }
  return 0;
}

int cmd_forms_spectrum(const std::string& group, int m_flag,
                       const std::string& format,
                       const std::string& output_path) {
  const FourFormModel model = resolve_group(group, m_flag);
  const gg::Mat b = gg::b_omega_matrix(model.space, model.omega);
  const auto spectrum = gg::exact_spectrum(b);
  if (!spectrum) {
    std::cerr << "error: the operator spectrum did not resolve to exact "
                 "eigenvalues\n";
    return kExitVerification;
  }
  const auto& clusters = spectrum->clusters;
  const std::size_t base = ratio_base(group, m_flag, clusters);
  const bool appropriate = [&] {
    for (const auto& c : clusters) {
      if (!c.value.is_zero()) return true;
    }
    return false;
  }();

  json report;
  report["schema"] = "grassmann-gauge/spectrum/1";
  report["group"] = group;
  if (!model.param_label.empty()) report["parameter"] = model.param_label;
  report["space"] = model.space_label;
  report["two_form_space_dim"] = b.rows();
  report["four_form"] = model.omega.str();
  json cl = json::array();
  for (const auto& c : clusters) {
    cl.push_back({{"eigenvalue", c.value.str()},
                  {"eigenvalue_float", c.value_f},
                  {"multiplicity", c.multiplicity}});
  }
  report["clusters"] = cl;
  if (appropriate && !clusters[base].value.is_zero()) {
    json ratios = json::array();
    for (const auto& c : clusters) {
      ratios.push_back((c.value / clusters[base].value).str());
    }
    report["ratios"] = {{"base", clusters[base].value.str()},
                        {"values", ratios}};
  }
  report["appropriate"] = appropriate;

  if (format == "json") {
    emit(report.dump(2) + "\n", output_path);
  } else {
    std::ostringstream os;
    os << "four-form operator spectrum\n";
    os << "group:       " << group;
    if (!model.param_label.empty()) os << " (" << model.param_label << ")";
    os << "\n";
    os << "space:       " << model.space_label << ", "
       << b.rows() << "-dimensional 2-form space\n";
    os << "four-form:   " << model.omega.str() << "\n";
    os << "eigenvalues:\n";
    for (const auto& c : clusters) {
      os << "  " << c.value.str() << "   multiplicity " << c.multiplicity
         << "\n";
    }
    if (report.contains("ratios")) {
      os << "ratios:      ";
      bool first = true;
      for (const auto& v : report["ratios"]["values"]) {
        if (!first) os << ", ";
        os << v.get<std::string>();
        first = false;
      }
      os << "   (relative to " << clusters[base].value.str() << ")\n";
    }
    os << "appropriate: "
       << (appropriate ? "yes — a nonzero real eigenvalue exists"
                       : "no — every eigenvalue is zero")
       << "\n";
    emit(os.str(), output_path);
  }
  return appropriate ? kExitOk : kExitVerification;
}

// -------------------------------------------------------------- gauge build

struct GaugeConfig {
  std::size_t spin = 0;
  std::size_t rank_e = 0;
  std::size_t gauge_rank = 0;
  std::vector<std::pair<std::string, std::string>> generators;
  std::string prepotential;
};

std::size_t config_uint(const json& doc, const std::string& key,
                        std::size_t lo, std::size_t hi) {
  if (!doc.contains(key)) throw UsageError("config is missing \"" + key + "\"");
  const json& v = doc.at(key);
  if (!v.is_number_unsigned()) {
    throw UsageError("config field \"" + key +
                     "\" must be a nonnegative integer");
  }
  const auto n = v.get<std::size_t>();
  if (n < lo || n > hi) {
    throw UsageError("config field \"" + key + "\" must be between " +
                     std::to_string(lo) + " and " + std::to_string(hi));
  }
  return n;
}

GaugeConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw UsageError("config must be a JSON object");

  GaugeConfig cfg;
  cfg.spin = config_uint(doc, "spin", 1, 3);
  if (cfg.spin == 2) throw UsageError("config field \"spin\" must be 1 or 3");
  cfg.rank_e = config_uint(doc, "rank_E", 1, 4);
  cfg.gauge_rank = config_uint(doc, "gauge_rank", 1, 6);

  if (doc.contains("nilpotent_generators")) {
    const json& gens = doc.at("nilpotent_generators");
    if (!gens.is_object()) {
      throw UsageError(
          "config field \"nilpotent_generators\" must map names to matrix "
          "expressions");
    }
    static const std::regex ident("[A-Za-z_][A-Za-z_0-9]*");
    for (const auto& [name, value] : gens.items()) {
      if (!std::regex_match(name, ident)) {
        throw UsageError("generator name '" + name +
                         "' is not a valid identifier");
      }
      for (const char* reserved : {"i", "x", "u", "xplus", "xminus", "xppp",
                                   "xppm", "xpmm", "xmmm"}) {
        if (name == reserved) {
          throw UsageError("generator name '" + name + "' is reserved");
        }
      }
      if (!value.is_string()) {
        throw UsageError("generator '" + name +
                         "' must be a matrix expression string");
      }
      cfg.generators.emplace_back(name, value.get<std::string>());
    }
  }

  if (!doc.contains("prepotential") || !doc.at("prepotential").is_string()) {
    throw UsageError("config needs a \"prepotential\" expression string");
  }
  cfg.prepotential = doc.at("prepotential").get<std::string>();
  return cfg;
}

// Generators must be constant nilpotent square matrices; later generators
// may reference earlier ones.
void install_generators(const GaugeConfig& cfg, gg::VarTable& table) {
  const gg::PolyContext* ctx = table.model->context();
  for (const auto& [name, source] : cfg.generators) {
    gg::PolyMatrix g = [&] {
      try {
        return gg::elaborate(gg::parse(source), table);
      } catch (const gg::ParseError& e) {
        throw UsageError("generator '" + name + "': " + e.what());
      }
    }();
    if (g.rows() != cfg.gauge_rank || g.cols() != cfg.gauge_rank) {
      throw UsageError("generator '" + name + "' must be " +
                       std::to_string(cfg.gauge_rank) + "x" +
                       std::to_string(cfg.gauge_rank));
    }
    if (!(gg::PolyMatrix::from_constant(ctx, g.constant_part()) == g)) {
      throw UsageError("generator '" + name + "' must be a constant matrix");
    }
    gg::PolyMatrix power = g;
    bool nilpotent = false;
    for (std::size_t k = 0; k < cfg.gauge_rank && !nilpotent; ++k) {
      nilpotent = power.is_zero();
      power = power * g;
    }
    nilpotent = nilpotent || power.is_zero();
    if (!nilpotent) {
      throw UsageError("generator '" + name + "' is not nilpotent");
    }
    table.named.emplace(name, std::move(g));
  }
}

std::string coordinate_word(std::size_t spin, std::size_t big_a) {
  return std::string(spin - big_a, '1') + std::string(big_a, '2');
}

json curvature_map(const gg::PolyContext* ctx,
                   const std::vector<gg::PolyMatrix>& conn) {
  json out = json::object();
  for (std::size_t v = 0; v < ctx->num_x(); ++v) {
    for (std::size_t w = v + 1; w < ctx->num_x(); ++w) {
      out["F[" + ctx->var_name(v) + "," + ctx->var_name(w) + "]"] =
          gg::coordinate_curvature(conn, v, w).str();
    }
  }
  return out;
}

void render_gauge_text(const json& report, std::ostringstream& os) {
  os << "gauge pipeline report (" << report["mode"].get<std::string>()
     << ", spin " << report["spin"] << ", rank_E " << report["rank_E"]
     << ", gauge rank " << report["gauge_rank"] << ")\n";
  os << "prepotential: " << report["prepotential_echo"].get<std::string>()
     << "\n";
  os << "phi:          " << report["phi"].get<std::string>() << "\n";
  os << "A_mm:         " << report["A_mm"].get<std::string>() << "\n";
  os << "potentials:\n";
  for (const auto& [key, value] : report["C_e_alpha"].items()) {
    os << "  " << key << " = " << value.get<std::string>() << "\n";
  }
  os << "curvature components:\n";
  for (const auto& [key, value] : report["curvature_components"].items()) {
    if (value.get<std::string>() != "[[0, 0], [0, 0]]") {
      os << "  " << key << " = " << value.get<std::string>() << "\n";
    }
  }
  if (report.contains("curvature_profile")) {
    os << "curvature profile:";
    for (const auto& [key, value] : report["curvature_profile"].items()) {
      os << "  " << key << "=" << value.get<std::string>();
    }
    os << "\n";
  }
  os << "verdicts:\n";
  for (const auto& [key, value] : report["verdicts"].items()) {
    os << "  " << key << ": " << (value.get<bool>() ? "pass" : "FAIL")
       << "\n";
  }
  if (!report["truncation_order"].is_null()) {
    os << "truncation order: " << report["truncation_order"] << "\n";
  }
}

int finish_gauge_report(json& report, const std::string& format,
                        const std::string& output_path) {
  bool all = true;
  for (const auto& [key, value] : report["verdicts"].items()) {
    all = all && value.get<bool>();
  }
  if (format == "text") {
    std::ostringstream os;
    render_gauge_text(report, os);
    os << (all ? "result: all verdicts pass\n"
               : "result: verification failed\n");
    emit(os.str(), output_path);
  } else {
    emit(report.dump(2) + "\n", output_path);
  }
  return all ? kExitOk : kExitVerification;
}

int cmd_gauge_build(const std::string& config_path, const std::string& mode,
                    int order_flag, const std::string& format,
                    const std::string& output_path) {
  const GaugeConfig cfg = load_config(config_path);
  if (mode == "halfflat" && cfg.spin != 1) {
    throw UsageError("mode halfflat needs \"spin\": 1");
  }
  if (mode != "halfflat" && cfg.spin != 3) {
    throw UsageError("mode " + mode + " needs \"spin\": 3");
  }
  if (order_flag >= 0 && mode != "halfflat") {
    throw UsageError("--order applies to mode halfflat only");
  }

  gg::HarmonicModel hm(cfg.spin, cfg.rank_e);
  const gg::PolyContext* ctx = hm.context();
  gg::VarTable table;
  table.model = &hm;
  table.gauge_rank = cfg.gauge_rank;
  install_generators(cfg, table);
  const gg::PolyMatrix app = gg::elaborate(gg::parse(cfg.prepotential), table);
  if (app.rows() != cfg.gauge_rank || app.cols() != cfg.gauge_rank) {
    throw UsageError("prepotential must be " + std::to_string(cfg.gauge_rank) +
                     "x" + std::to_string(cfg.gauge_rank));
  }

  json report;
  report["schema"] = "grassmann-gauge/gauge-report/1";
  report["mode"] = mode;
  report["spin"] = cfg.spin;
  report["rank_E"] = cfg.rank_e;
  report["gauge_rank"] = cfg.gauge_rank;
  report["prepotential_echo"] = app.str();

  // the Yang-Mills check runs on the pairing-induced metric, which needs an
  // even number of blocks
  const bool ym_possible = cfg.rank_e % 2 == 0;

  if (mode == "halfflat") {
    if (auto why = gg::prepotential_rejection(hm, app)) {
      throw UsageError("prepotential rejected: " + *why);
    }
    std::optional<std::size_t> order;
    if (order_flag >= 0) order = static_cast<std::size_t>(order_flag);
    gg::SpinOneSystem sys =
        order ? gg::SpinOneSystem(hm, app, *order) : gg::SpinOneSystem(hm, app);

    report["phi"] = sys.bridge().str();
    report["A_mm"] = sys.lowered_potential().str();
    json c = json::object();
    for (std::size_t e = 0; e < cfg.rank_e; ++e) {
      for (std::size_t alpha = 0; alpha < 2; ++alpha) {
        c["C[" + std::to_string(e + 1) + "," + std::to_string(alpha + 1) +
          "]"] = sys.coefficient(e, alpha).str();
      }
    }
    report["C_e_alpha"] = c;
    report["curvature_components"] =
        curvature_map(ctx, sys.coordinate_connection());

    const gg::Poly u1 = gg::Poly::variable(ctx, ctx->u_index(true, 0));
    const gg::Poly u2 = gg::Poly::variable(ctx, ctx->u_index(true, 1));
    bool lin_c = true;
    for (std::size_t e = 0; e < cfg.rank_e; ++e) {
      lin_c = lin_c && u1 * sys.coefficient(e, 0) + u2 * sys.coefficient(e, 1) ==
                           sys.frame_connection(e);
    }
    json verdicts;
    verdicts["almost_half_flat"] = sys.audit().all();
    verdicts["half_flat"] = sys.half_flat();
    verdicts["linC_remainder_zero"] = lin_c;
    if (ym_possible) {
      verdicts["ym_zero"] =
          gg::yang_mills_residual(
              sys.coordinate_connection(),
              gg::spin_m_space(1, gg::standard_omega_e(cfg.rank_e)))
              .is_zero();
    }
    report["verdicts"] = verdicts;
    report["truncation_order"] = order ? json(*order) : json(nullptr);
    return finish_gauge_report(report, format, output_path);
  }

  const gg::Spin3Mode m3 = mode == "0partial" ? gg::Spin3Mode::zero_partial
                                              : gg::Spin3Mode::one_partial;
  gg::Spin3System sys(hm, app, m3);
  report["phi"] = sys.bridge().str();
  report["A_mm"] = sys.lowered_potential().str();
  json c = json::object();
  for (std::size_t e = 0; e < cfg.rank_e; ++e) {
    for (std::size_t g = 0; g <= 3; ++g) {
      c["C[" + std::to_string(e + 1) + "," + coordinate_word(3, g) + "]"] =
          sys.coefficient(e, g).str();
    }
  }
  report["C_e_alpha"] = c;
  report["curvature_components"] =
      curvature_map(ctx, sys.coordinate_connection());
  const auto& split = sys.curvature_split();
  report["curvature_profile"] = {
      {"f0", split.f0_is_zero() ? "zero" : "nonzero"},
      {"f1", split.f1_is_zero() ? "zero" : "nonzero"},
      {"f2", split.f2_is_zero() ? "zero" : "nonzero"},
      {"f3", split.f3_is_zero() ? "zero" : "nonzero"},
  };

  json verdicts;
  verdicts["audit_flat"] = sys.audit().all();
  verdicts["factor_table_ok"] =
      !gg::factor_table_mismatch(hm, sys.coordinate_connection()).has_value();
  verdicts["f0_zero"] = split.f0_is_zero();
  if (m3 == gg::Spin3Mode::one_partial) {
    verdicts["f1_zero"] = split.f1_is_zero();
    verdicts["f2_zero"] = split.f2_is_zero();
    if (ym_possible) {
      verdicts["ym_zero"] =
          gg::yang_mills_residual(
              sys.coordinate_connection(),
              gg::spin_m_space(3, gg::standard_omega_e(cfg.rank_e)))
              .is_zero();
    }
  }
  report["verdicts"] = verdicts;
  report["truncation_order"] = json(nullptr);
  return finish_gauge_report(report, format, output_path);
}

// --------------------------------------------------------------- verify all

int cmd_verify_all(const std::string& format,
                   const std::string& output_path) {
  const auto results = gg::run_all_criteria();
  bool all = true;
  int failed = 0;
  for (const auto& r : results) {
    all = all && r.passed;
    failed += r.passed ? 0 : 1;
  }

  if (format == "json") {
    json report;
    report["schema"] = "grassmann-gauge/verify/1";
    json items = json::array();
    for (const auto& r : results) {
      items.push_back({{"id", r.id},
                       {"title", r.title},
                       {"passed", r.passed},
                       {"details", r.details}});
    }
    report["criteria"] = items;
    report["passed_count"] = static_cast<int>(results.size()) - failed;
    report["failed_count"] = failed;
    report["passed"] = all;
    emit(report.dump(2) + "\n", output_path);
  } else {
    std::ostringstream os;
    for (const auto& r : results) {
      os << (r.passed ? "[pass] " : "[FAIL] ") << r.id << "  " << r.title
         << "\n       " << r.details << "\n";
    }
    os << (all ? "all criteria pass"
               : std::to_string(failed) + " of " +
                     std::to_string(results.size()) + " criteria failed")
       << "\n";
    emit(os.str(), output_path);
  }
  return all ? kExitOk : kExitVerification;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "grassmann-gauge: exact 4-form operator spectra and partially flat "
      "connection pipelines"};
  app.require_subcommand(1);

  // forms spectrum
  CLI::App* forms = app.add_subcommand("forms", "algebraic 4-form operators");
  forms->require_subcommand(1);
  CLI::App* spectrum =
      forms->add_subcommand("spectrum", "exact eigenvalue decomposition");
  std::string group;
  int m_flag = -1;
  std::string spectrum_format = "text";
  std::string spectrum_output;
  spectrum->add_option("--group", group, "which 4-form to analyze")
      ->required()
      ->check(CLI::IsMember({"kaehler", "hyperkaehler", "qk", "g2", "spin7",
                             "kostant-so-n", "kostant-u2", "spin-m"}));
  spectrum->add_option(
      "--m", m_flag,
      "integer parameter (m for kaehler/hyperkaehler/qk/spin-m, n for "
      "kostant-so-n)");
  spectrum->add_option("--format", spectrum_format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));
  spectrum->add_option("--output", spectrum_output, "write the report here");

  // gauge build
  CLI::App* gauge = app.add_subcommand("gauge", "connection pipelines");
  gauge->require_subcommand(1);
  CLI::App* build = gauge->add_subcommand(
      "build", "solve a prepotential into a partially flat connection");
  std::string config_path;
  std::string mode;
  int order_flag = -1;
  std::string build_format = "json";
  std::string build_output;
  build->add_option("--config", config_path, "prepotential config file")
      ->required()
      ->check(CLI::ExistingFile);
  build->add_option("--mode", mode, "pipeline to run")
      ->required()
      ->check(CLI::IsMember({"halfflat", "0partial", "1partial"}));
  build->add_option("--order", order_flag,
                    "truncate the bridge series at this x-degree");
  build->add_option("--format", build_format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));
  build->add_option("--output", build_output, "write the report here");

  // verify all
  CLI::App* verify = app.add_subcommand("verify", "built-in check suite");
  verify->require_subcommand(1);
  CLI::App* all = verify->add_subcommand("all", "run every acceptance check");
  std::string verify_format = "text";
  std::string verify_output;
  all->add_option("--format", verify_format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));
  all->add_option("--output", verify_output, "write the report here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (spectrum->parsed()) {
      return cmd_forms_spectrum(group, m_flag, spectrum_format,
                                spectrum_output);
    }
    if (build->parsed()) {
      return cmd_gauge_build(config_path, mode, order_flag, build_format,
                             build_output);
    }
    return cmd_verify_all(verify_format, verify_output);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const gg::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const gg::Error& e) {
    const std::string what = e.what();
    std::cerr << "error: " << what << "\n";
    return what.rfind("prepotential rejected", 0) == 0 ? kExitUsage
                                                       : kExitVerification;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitVerification;
  }
}
