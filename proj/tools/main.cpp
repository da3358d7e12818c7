#include "CLI11.hpp"

#include <nlohmann/json.hpp>

#include <cctype>
#include <iostream>
#include <sstream>
#include <string>

#include "hopfkit/compositions.hpp"
#include "hopfkit/gf.hpp"
#include "hopfkit/hopf.hpp"
#include "hopfkit/rational.hpp"
#include "hopfkit/species.hpp"
#include "hopfkit/transforms.hpp"

namespace {

using nlohmann::json;

std::string read_positional(const std::string& arg) {
  if (arg != "-") return arg;
  std::ostringstream buf;
  buf << std::cin.rdbuf();
  return buf.str();
}

void print_seq(const hopfkit::Seq& s, const std::string& format) {
  if (format == "json")
    std::cout << hopfkit::seq_to_json(s).dump() << "\n";
  else
    std::cout << hopfkit::render_seq(s) << "\n";
}

void print_series(const hopfkit::GFSeries& s, const std::string& format) {
  if (format == "json")
    std::cout << s.to_json().dump() << "\n";
  else
    std::cout << s.render() << "\n";
}

int print_report(const hopfkit::CheckReport& report, const std::string& format) {
  if (format == "csv") {
    std::cout << "axiom,I,S,T,witness\n";
    for (const auto& f : report.failures) {
      std::cout << f.axiom << "," << f.I.render() << "," << f.S.render() << ","
                << f.T.render() << ",\"" << f.witness << "\"\n";
    }
  } else {
    std::cout << report.to_json().dump() << "\n";
  }
  return report.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hopfkit: exact set-composition combinatorics, species dimensions, and the "
               "Boolean-transform feasibility battery"};
  app.require_subcommand(1);

  std::string format = "plain";
  CLI::Option* format_opt = app.add_option("--format", format, "output format")
                                ->check(CLI::IsMember({"plain", "json", "csv"}))
                                ->capture_default_str();
  int max_n = hopfkit::kDefaultEnumCap;
  app.add_option("--max-n", max_n, "enumeration size cap (hard ceiling 12)")
      ->envname("HOPFKIT_MAX_N");

  std::string seq_arg, seq_arg2, species_expr = "X", structure_expr = "L", q_text = "1",
              oracle_kind;
  int degree = 4;

  CLI::App* cmd_transform = app.add_subcommand("transform", "Boolean transform of a sequence");
  cmd_transform->add_option("sequence", seq_arg, "comma-separated terms, or - for stdin")
      ->required();

  CLI::App* cmd_inverse = app.add_subcommand("inverse", "inverse Boolean transform");
  cmd_inverse->add_option("sequence", seq_arg)->required();

  CLI::App* cmd_hadamard = app.add_subcommand(
      "hadamard-transform", "transform of the Hadamard product, from the factor transforms");
  cmd_hadamard->add_option("p", seq_arg)->required();
  cmd_hadamard->add_option("q", seq_arg2)->required();

  CLI::App* cmd_feas =
      app.add_subcommand("feasibility", "necessary-condition battery for dimension sequences");
  cmd_feas->add_option("sequence", seq_arg)->required();

  CLI::App* cmd_minnext =
      app.add_subcommand("min-next", "smallest next term keeping the transform nonnegative");
  cmd_minnext->add_option("sequence", seq_arg)->required();

  CLI::App* cmd_dims = app.add_subcommand("dims", "dimension sequence of a species");
  cmd_dims->add_option("--species", species_expr)->required();
  cmd_dims->add_option("--n", degree, "top degree");

  CLI::App* cmd_typegf = app.add_subcommand("typegf", "type generating function of a species");
  cmd_typegf->add_option("--species", species_expr)->required();
  cmd_typegf->add_option("--n", degree, "truncation order");

  CLI::App* cmd_basis = app.add_subcommand("basis", "basis labels of a species on [n]");
  cmd_basis->add_option("--species", species_expr)->required();
  cmd_basis->add_option("--n", degree, "ground set size");

  CLI::App* cmd_verify = app.add_subcommand("verify", "run the axiom checkers on a structure");
  cmd_verify->add_option("--structure", structure_expr,
                         "L | E | mock-even | free(<species>) | hadamard(a,b)");
  cmd_verify->add_option("--q", q_text, "deformation parameter, e.g. 1/2");
  cmd_verify->add_option("--n", degree, "check all ground sets up to this size");

  CLI::App* cmd_oracle = app.add_subcommand("oracle", "brute-force enumeration counts");
  cmd_oracle->add_option("kind", oracle_kind, "atomic | indecomposable")
      ->required()
      ->check(CLI::IsMember({"atomic", "indecomposable"}));
  cmd_oracle->add_option("--n", degree, "top degree");
  cmd_oracle->add_option("--species", species_expr);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (max_n < 1 || max_n > hopfkit::kHardEnumCap) {
      std::cerr << "error: --max-n must lie in [1, " << hopfkit::kHardEnumCap << "]\n";
      return 2;
    }
    const int cap = max_n;

    // Sequence outputs mirror the input format unless --format is given.
    auto is_json_text = [](const std::string& text) {
      for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) return c == '[';
      return false;
    };
    auto seq_format = [&](const std::string& text) {
      if (format_opt->count() > 0) return format;
      return is_json_text(text) ? std::string("json") : format;
    };

    if (cmd_transform->parsed()) {
      std::string text = read_positional(seq_arg);
      print_seq(hopfkit::boolean_transform(hopfkit::parse_seq(text)), seq_format(text));
      return 0;
    }
    if (cmd_inverse->parsed()) {
      std::string text = read_positional(seq_arg);
      print_seq(hopfkit::inverse_boolean(hopfkit::parse_seq(text)), seq_format(text));
      return 0;
    }
    if (cmd_hadamard->parsed()) {
      std::string text = read_positional(seq_arg);
      std::string text2 = read_positional(seq_arg2);
      std::string fmt = seq_format(text);
      if (fmt == "plain") fmt = seq_format(text2);
      print_seq(hopfkit::hadamard_boolean(hopfkit::parse_seq(text), hopfkit::parse_seq(text2)),
                fmt);
      return 0;
    }
    if (cmd_feas->parsed()) {
      hopfkit::FeasibilityReport report =
          hopfkit::feasibility(hopfkit::parse_seq(read_positional(seq_arg)));
      if (format == "csv") {
        std::cout << "condition,pass,witness\n";
        auto line = [](const char* name, const hopfkit::ConditionVerdict& v) {
          std::string w = v.witness.dump();
          std::string esc;
          for (char c : w) {
            esc += c;
            if (c == '"') esc += '"';
          }
          std::cout << name << "," << (v.pass ? "true" : "false") << ",\"" << esc << "\"\n";
        };
        line("boolean_nonneg", report.boolean_nonneg);
        line("submult", report.submult);
        line("exp_ratio", report.exp_ratio);
        line("cubic", report.cubic);
      } else {
        std::cout << report.to_json().dump() << "\n";
      }
      return report.all_pass() ? 0 : 1;
    }
    if (cmd_minnext->parsed()) {
      std::string text = read_positional(seq_arg);
      hopfkit::Int v = hopfkit::min_next_term(hopfkit::parse_seq(text));
      if (seq_format(text) == "json")
        std::cout << json(v.str()).dump() << "\n";
      else
        std::cout << v.str() << "\n";
      return 0;
    }
    if (cmd_dims->parsed()) {
      hopfkit::SpeciesPtr sp = hopfkit::parse_species(species_expr, cap);
      print_series(hopfkit::ordinary_gf(*sp, degree), format);
      return 0;
    }
    if (cmd_typegf->parsed()) {
      hopfkit::SpeciesPtr sp = hopfkit::parse_species(species_expr, cap);
      print_series(hopfkit::type_gf(*sp, degree), format);
      return 0;
    }
    if (cmd_basis->parsed()) {
      hopfkit::SpeciesPtr sp = hopfkit::parse_species(species_expr, cap);
      const auto labels = sp->basis(hopfkit::LabelSet::canonical(degree));
      if (format == "json") {
        json arr = json::array();
        for (const auto& b : labels) arr.push_back(b.repr());
        std::cout << arr.dump() << "\n";
      } else {
        for (const auto& b : labels) std::cout << b.repr() << "\n";
      }
      return 0;
    }
    if (cmd_verify->parsed()) {
      hopfkit::HopfPtr h =
          hopfkit::parse_structure(structure_expr, hopfkit::parse_rat(q_text), cap);
      return print_report(hopfkit::check_all(*h, degree), format);
    }
    if (cmd_oracle->parsed()) {
      std::vector<hopfkit::Rat> counts;
      if (oracle_kind == "atomic") {
        for (int n = 1; n <= degree; ++n)
          counts.emplace_back(hopfkit::atomic_partitions(n, cap));
        print_seq(hopfkit::Seq(std::move(counts)), format);
      } else {
        hopfkit::SpeciesPtr sp = hopfkit::parse_species(species_expr, cap);
        print_seq(hopfkit::indecomposable_transform(sp, degree, cap), format);
      }
      return 0;
    }
    std::cerr << "error: no subcommand\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
