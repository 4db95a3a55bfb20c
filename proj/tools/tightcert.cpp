// Command-line front end: classify / hf / dual / cf / verify / paths.
// Exit codes: 0 success, 1 invalid input, 2 internal check or verification
// failure.

#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "tightcert/cf.hpp"
#include "tightcert/classify.hpp"
#include "tightcert/json_io.hpp"

namespace {

using namespace tightcert;

// "-" means stdin; piped input is trimmed so a trailing newline never
// reaches the strict numeric parsers.
std::string slurp(const std::string& arg) {
  if (arg != "-") return arg;
  std::ostringstream buf;
  buf << std::cin.rdbuf();
  std::string text = buf.str();
  const char* ws = " \t\r\n";
  std::size_t first = text.find_first_not_of(ws);
  if (first == std::string::npos) return "";
  std::size_t last = text.find_last_not_of(ws);
  return text.substr(first, last - first + 1);
}

std::string expansion_text(const CFExpansion& terms) {
  std::string s = "[";
  for (std::size_t i = 0; i < terms.size(); ++i) s += (i ? "," : "") + terms[i].str();
  return s + "]";
}

CFExpansion expansion_from_text(const std::string& text) {
  CharVector k = char_vector_from_json(text);
  return k.values;
}

const char* outcome_text(Outcome o) {
  switch (o) {
    case Outcome::TightWithCertificate: return "tight (certified)";
    case Outcome::TightByCitation: return "tight (by citation)";
    case Outcome::NoTight: return "no tight structure";
    case Outcome::Inconclusive: return "inconclusive";
  }
  return "?";
}

void print_report_text(const Report& r) {
  if (r.normalized) {
    std::cout << "normalized: e0 = " << r.normalized->e0.str() << ", ratios =";
    for (const Rational& x : r.normalized->ratios) std::cout << " " << x.str();
    std::cout << "\n";
  }
  for (const BranchStep& s : r.trace)
    std::cout << "  " << s.rule << ": " << s.detail << "\n";
  std::cout << "verdict: " << outcome_text(r.verdict.outcome) << "\n";
  std::cout << "reason: " << r.verdict.reason << "\n";
  if (r.verdict.m_index) std::cout << "index: " << r.verdict.m_index->str() << "\n";
  if (r.verdict.certificate) {
    const TightnessCertificate& c = *r.verdict.certificate;
    std::cout << "certificate: family " << (c.family == Family::A ? "A" : "B")
              << ", ambient rank " << c.model.exceptional_count << ", path length "
              << c.path.steps.size() << ", d3 = " << c.d3.str()
              << ", d(-Y) = " << c.d_minus_y.str() << "\n";
  }
}

void print_table_text(const GeneratorTable& t) {
  std::cout << "det = " << t.det.str() << "\n";
  for (const auto& [cls, gens] : t.by_class) {
    std::cout << "class (";
    for (std::size_t i = 0; i < cls.residues.size(); ++i)
      std::cout << (i ? "," : "") << cls.residues[i].str();
    std::cout << "):";
    for (const Generator& g : gens) std::cout << " " << g.degree.str();
    std::cout << "\n";
  }
  std::cout << "generators = " << t.total_generators() << "\n";
  Int det_abs = t.det < 0 ? Int(-t.det) : t.det;
  std::cout << "L-space = " << (Int(t.total_generators()) == det_abs ? "yes" : "no") << "\n";
}

void print_tree_text(const PlumbingTree& tree) {
  StarShape s = star_shape_of(tree);
  std::cout << "center " << s.center_weight.str() << "; legs";
  for (const auto& leg : s.legs) {
    std::cout << " [";
    for (std::size_t i = 0; i < leg.size(); ++i) std::cout << (i ? "," : "") << leg[i].str();
    std::cout << "]";
  }
  std::cout << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tight contact structure decision tool for Seifert fibered spaces"};
  app.require_subcommand(1);
  bool text_mode = false;
  app.add_flag("--text{true},--json{false}", text_mode,
               "output mode (JSON is the default)");

  std::string seifert_arg, tree_arg, report_arg, vector_arg;

  CLI::App* classify_cmd = app.add_subcommand("classify", "decide tightness");
  CLI::Option* opt_seifert =
      classify_cmd->add_option("--seifert", seifert_arg, "Seifert invariants as JSON");
  CLI::Option* opt_tree =
      classify_cmd->add_option("--tree", tree_arg, "plumbing tree as JSON");
  opt_seifert->excludes(opt_tree);

  CLI::App* hf_cmd = app.add_subcommand("hf", "generator table of the plumbed boundary");
  hf_cmd->add_option("--tree", tree_arg, "plumbing tree as JSON")->required();

  CLI::App* dual_cmd = app.add_subcommand("dual", "reversed-orientation plumbing");
  dual_cmd->add_option("--tree", tree_arg, "plumbing tree as JSON")->required();

  CLI::App* cf_cmd = app.add_subcommand("cf", "continued-fraction calculus");
  std::string cf_op, cf_value;
  cf_cmd->add_option("op", cf_op, "expand | eval | dual")
      ->required()
      ->check(CLI::IsMember({"expand", "eval", "dual"}));
  cf_cmd->add_option("value", cf_value,
                     "\"p/q\" for expand; \"[x1,...,xn]\" otherwise; \"-\" reads stdin")
      ->required();

  CLI::App* verify_cmd = app.add_subcommand("verify", "re-check a report's certificate");
  verify_cmd->add_option("--report", report_arg, "report JSON (\"-\" or omitted: stdin)");

  CLI::App* paths_cmd = app.add_subcommand("paths", "full path through a vector");
  paths_cmd->add_option("--tree", tree_arg, "plumbing tree as JSON")->required();
  paths_cmd->add_option("--vector", vector_arg, "evaluations [<K,v1>,...]")->required();

  // the global output flag is also legal after a subcommand
  for (CLI::App* sub : app.get_subcommands(nullptr)) sub->fallthrough();
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;  // bad usage is invalid input
  }

  try {
    if (classify_cmd->parsed()) {
      ClassifierInput input;
      if (!seifert_arg.empty())
        input.seifert = seifert_input_from_json(slurp(seifert_arg));
      else if (!tree_arg.empty())
        input.tree = tree_from_json(slurp(tree_arg));
      else
        throw input_error("classify: provide --seifert or --tree");
      Report report = classify(input);
      if (text_mode)
        print_report_text(report);
      else
        std::cout << report_to_json(report) << "\n";
    } else if (hf_cmd->parsed()) {
      PlumbingTree tree = tree_from_json(slurp(tree_arg));
      GeneratorTable table = enumerate_generators(intersection_lattice(tree));
      if (text_mode)
        print_table_text(table);
      else
        std::cout << generator_table_to_json(table) << "\n";
    } else if (dual_cmd->parsed()) {
      PlumbingTree dual = dual_tree(tree_from_json(slurp(tree_arg)));
      if (text_mode)
        print_tree_text(dual);
      else
        std::cout << tree_to_json(dual) << "\n";
    } else if (cf_cmd->parsed()) {
      if (cf_op == "expand") {
        CFExpansion terms = cf_expand(Rational::parse(slurp(cf_value)));
        if (text_mode)
          std::cout << expansion_text(terms) << "\n";
        else
          std::cout << char_vector_to_json(CharVector{terms}) << "\n";
      } else if (cf_op == "eval") {
        std::cout << cf_eval(expansion_from_text(slurp(cf_value))).str() << "\n";
      } else {
        CFExpansion dual = riemenschneider_dual(expansion_from_text(slurp(cf_value)));
        if (text_mode)
          std::cout << expansion_text(dual) << "\n";
        else
          std::cout << char_vector_to_json(CharVector{dual}) << "\n";
      }
    } else if (verify_cmd->parsed()) {
      Report report = report_from_json(slurp(report_arg.empty() ? "-" : report_arg));
      bool ok = verify_certificate(report);
      std::cout << (ok ? "pass" : "fail") << "\n";
      return ok ? 0 : 2;
    } else if (paths_cmd->parsed()) {
      PlumbingTree tree = tree_from_json(slurp(tree_arg));
      CharVector k = char_vector_from_json(slurp(vector_arg));
      auto path = find_full_path_through(intersection_lattice(tree), k);
      if (!path) {
        std::cout << "none\n";
      } else if (text_mode) {
        std::cout << "steps = " << path->steps.size() << ", degree = " << path->degree.str()
                  << "\n";
      } else {
        std::cout << path_to_json(*path) << "\n";
      }
    }
  } catch (const input_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal check failed: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
