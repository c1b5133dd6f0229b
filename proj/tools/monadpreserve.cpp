// monadpreserve: command line front end for the monpres library.
//
// Subcommands:
//   classify   syntactic classification of every equation in a theory file
//   check      decide or refute preservation of a theory by a monad
//   props      structural properties of a monad (affineness, relevance, ...)
//   monoid     triviality analysis of a presented monoid
//   reproduce  run the full acceptance battery and print a pass/fail matrix
//
// Exit codes: 0 success / no violation, 1 violation found, 2 usage or parse
// error, 3 result unknown within the configured budgets.

#include <CLI11.hpp>

#include <monpres/algebra.hpp>
#include <monpres/common.hpp>
#include <monpres/monads.hpp>
#include <monpres/presentations.hpp>
#include <monpres/preserve.hpp>
#include <monpres/props.hpp>
#include <monpres/reproduce.hpp>
#include <monpres/terms.hpp>

#include <nlohmann/json.hpp>

#include <iostream>
#include <string>
#include <vector>

using nlohmann::ordered_json;

namespace {

using namespace monpres;

const char* yn(bool b) { return b ? "yes" : "no"; }

// ---- classify ----

struct ClassifyArgs {
  std::string theory_path;
  int model_bound = 4;
  int derivation_depth = 4;
  bool json = false;
};

int run_classify(const ClassifyArgs& a) {
  Theory th = load_theory(a.theory_path);
  DiscerningOptions dopt;
  dopt.model_bound = a.model_bound;
  dopt.derivation_depth = a.derivation_depth;

  ordered_json out;
  out["theory"] = th.name;
  out["equations"] = ordered_json::array();

  for (const Equation& e : th.equations) {
    EquationClass c = classify(e);
    std::string disc = "-";
    ordered_json jdisc = nullptr;
    if (c.two_dup && !c.drop) {
      DiscerningReport rep = two_discerning_check(e, dopt);
      disc = to_string(rep.verdict);
      jdisc = ordered_json::parse(rep.to_json());
    }
    if (a.json) {
      ordered_json je;
      je["name"] = e.name;
      je["equation"] = pretty(e);
      for (const auto& [flag, value] : class_flags(c)) je[flag] = value;
      je["two_discerning"] = jdisc;
      out["equations"].push_back(je);
    } else {
      std::cout << e.name << ": " << pretty(e) << "\n";
      for (const auto& [flag, value] : class_flags(c))
        std::cout << "  " << flag << ": " << yn(value) << "\n";
      if (disc != "-") std::cout << "  2-discerning: " << disc << "\n";
    }
  }
  if (a.json) std::cout << out.dump(2) << "\n";
  return 0;
}

// ---- check ----

struct CheckArgs {
  std::string selector;
  std::string theory_path;
  int max_carrier = 3;
  std::uint64_t budget = 0;
  std::uint64_t seed = 1;
  bool randomized = false;
  int jobs = 0;
  bool json = false;
};

int run_check(const CheckArgs& a) {
  MonadPtr monad = parse_monad(a.selector);
  Theory th = load_theory(a.theory_path);

  CheckOptions opts;
  opts.bounds.max_carrier = a.max_carrier;
  if (a.budget > 0) {
    opts.bounds.max_algebras = a.budget;
    opts.bounds.per_algebra_assignments = a.budget;
  }
  opts.randomized = a.randomized;
  opts.seed = a.seed;
  opts.jobs = a.jobs;

  bool violated = false;
  bool unknown = false;
  ordered_json reports = ordered_json::array();

  for (const Equation& e : th.equations) {
    CheckReport rep = check_preservation(monad, e, opts);
    if (rep.verdict == Verdict::Violated) violated = true;
    if (rep.verdict == Verdict::Unknown) unknown = true;
    if (a.json) {
      reports.push_back(ordered_json::parse(rep.to_json()));
    } else {
      std::cout << e.name << ": " << to_string(rep.verdict)
                << " (carrier <= " << rep.bounds.max_carrier
                << ", algebras " << rep.stats.algebras_scanned
                << ", satisfying " << rep.stats.algebras_satisfying
                << ", assignments " << rep.stats.assignments_scanned << ")\n";
      if (rep.witness) {
        const Witness& w = *rep.witness;
        std::cout << "  witness: carrier " << w.algebra.carrier.size << "\n";
        for (std::size_t i = 0; i < rep.vars.size(); ++i)
          std::cout << "    " << rep.vars[i] << " = "
                    << to_string(w.assignment[i]) << "\n";
        std::cout << "    lhs = " << to_string(w.lhs) << "\n";
        std::cout << "    rhs = " << to_string(w.rhs) << "\n";
      }
    }
  }

  if (a.json) {
    ordered_json out;
    out["monad"] = monad->name();
    out["theory"] = th.name;
    out["seed"] = a.seed;
    out["reports"] = reports;
    std::cout << out.dump(2) << "\n";
  }
  if (violated) return 1;
  if (unknown) return 3;
  return 0;
}

// ---- props ----

struct PropsArgs {
  std::string selector;
  int max_carrier = 3;
  std::vector<int> n_relevance;
  std::uint64_t budget = 0;
  std::uint64_t seed = 1;
  bool json = false;
};

void print_verdict(const std::string& label, const PropVerdict& v) {
  std::cout << label << ": " << to_string(v.status);
  if (v.status == PropStatus::UnknownUpTo) std::cout << " (bound " << v.bound << ")";
  if (!v.certificate.empty()) std::cout << " [" << v.certificate << "]";
  std::cout << "\n";
  if (!v.detail.empty()) std::cout << "  " << v.detail << "\n";
  if (v.witness)
    std::cout << "  witness at size " << v.witness->set_size << ": "
              << v.witness->diagram << "\n";
}

int run_props(const PropsArgs& a) {
  MonadPtr monad = parse_monad(a.selector);

  PropVerdict affine = is_affine(*monad);
  PropVerdict rel = relevance_check(monad, a.max_carrier, a.seed);

  std::vector<std::pair<int, PropVerdict>> nrel;
  for (int n : a.n_relevance)
    nrel.emplace_back(n, n_relevance_check(monad, n, a.max_carrier, a.seed));

  bool have_algebraic = monad->tier() == Tier::Enumerable;
  PropVerdict algebraic;
  if (have_algebraic) {
    std::uint64_t budget = a.budget > 0 ? a.budget : kDefaultEnumBudget;
    algebraic = algebraic_relevance_check(monad, 3, budget);
  }

  bool unknown = affine.status == PropStatus::UnknownUpTo ||
                 rel.status == PropStatus::UnknownUpTo;
  for (const auto& [n, v] : nrel)
    if (v.status == PropStatus::UnknownUpTo) unknown = true;
  if (have_algebraic && algebraic.status == PropStatus::UnknownUpTo) unknown = true;

  if (a.json) {
    ordered_json out;
    out["monad"] = monad->name();
    out["seed"] = a.seed;
    out["affine"] = ordered_json::parse(affine.to_json());
    out["relevance"] = ordered_json::parse(rel.to_json());
    out["n_relevance"] = ordered_json::object();
    for (const auto& [n, v] : nrel)
      out["n_relevance"][std::to_string(n)] = ordered_json::parse(v.to_json());
    out["algebraic_relevance"] =
        have_algebraic ? ordered_json::parse(algebraic.to_json()) : ordered_json(nullptr);
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "monad: " << monad->name() << "\n";
    print_verdict("affine", affine);
    print_verdict("relevant", rel);
    for (const auto& [n, v] : nrel) print_verdict(std::to_string(n) + "-relevant", v);
    if (have_algebraic) print_verdict("algebraically relevant (arity <= 3)", algebraic);
  }
  return unknown ? 3 : 0;
}

// ---- monoid ----

struct MonoidArgs {
  std::string presentation_path;
  std::uint64_t budget = 100000;
  int model_bound = 4;
  bool json = false;
};

int run_monoid(const MonoidArgs& a) {
  MonoidPresentation p = load_presentation(a.presentation_path);
  TrivialityReport rep = t1_triviality(p, a.budget, a.model_bound);
  PropVerdict affine = affineness_of_presented(p, a.budget, a.model_bound);

  if (a.json) {
    ordered_json out;
    out["presentation"] = ordered_json::parse(presentation_to_json_text(p));
    out["triviality"] = ordered_json::parse(rep.to_json());
    out["affine"] = ordered_json::parse(affine.to_json());
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "verdict: " << to_string(rep.verdict) << "\n";
    if (rep.verdict == Triviality::Trivial) {
      for (const auto& trace : rep.traces) {
        std::cout << "  " << trace.front();
        for (std::size_t i = 1; i < trace.size(); ++i)
          std::cout << " -> " << (trace[i].empty() ? "1" : trace[i]);
        std::cout << "\n";
      }
    }
    if (rep.countermodel) {
      std::cout << "  separating quotient of size " << rep.countermodel->monoid.size << ":";
      for (const auto& [g, img] : rep.countermodel->images)
        std::cout << " " << g << " -> " << img;
      std::cout << "\n";
    }
    print_verdict("affine (writer over this monoid)", affine);
  }
  return rep.verdict == Triviality::Unknown ? 3 : 0;
}

// ---- reproduce ----

struct ReproduceArgs {
  std::uint64_t seed = 1;
  int jobs = 0;
  bool sabotage_psi = false;
  std::vector<int> only;
  bool json = false;
};

int run_reproduce(const ReproduceArgs& a) {
  ReproduceOptions o;
  o.seed = a.seed;
  o.jobs = a.jobs;
  o.sabotage_psi = a.sabotage_psi;
  o.only = a.only;
  ReproduceReport rep = run_acceptance(o);
  if (a.json) {
    std::cout << rep.to_json() << "\n";
  } else {
    for (const CriterionResult& r : rep.results) {
      std::cout << criterion_line(r) << "\n";
      if (!r.passed && !r.detail.empty()) std::cout << "       " << r.detail << "\n";
    }
    std::cout << (rep.all_passed() ? "all criteria passed" : "FAILURES PRESENT") << "\n";
  }
  return rep.all_passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lift finite algebraic theories through monoidal monads"};
  app.require_subcommand(1);

  ClassifyArgs ca;
  CLI::App* classify = app.add_subcommand("classify", "classify the equations of a theory file");
  classify->add_option("file", ca.theory_path, "theory file")->required();
  classify->add_option("--model-bound", ca.model_bound, "countermodel size bound for 2-discerning");
  classify->add_option("--derivation-depth", ca.derivation_depth, "rewrite depth bound for 2-discerning");
  classify->add_flag("--json", ca.json, "machine readable output");

  CheckArgs ka;
  CLI::App* check = app.add_subcommand("check", "check preservation of a theory by a monad");
  check->add_option("monad", ka.selector, "monad selector")->required();
  check->add_option("file", ka.theory_path, "theory file")->required();
  check->add_option("--max-carrier", ka.max_carrier, "largest carrier size to scan");
  check->add_option("--budget", ka.budget, "algebra and assignment budget");
  check->add_option("--seed", ka.seed, "random seed");
  check->add_flag("--randomized", ka.randomized, "randomized assignment search");
  check->add_option("--jobs", ka.jobs, "worker threads (0 = all cores)");
  check->add_flag("--json", ka.json, "machine readable output");

  PropsArgs pa;
  CLI::App* props = app.add_subcommand("props", "structural properties of a monad");
  props->add_option("monad", pa.selector, "monad selector")->required();
  props->add_option("--max-carrier", pa.max_carrier, "largest set size to probe");
  props->add_option("--n-relevance", pa.n_relevance, "arities to test for n-relevance")
      ->delimiter(',');
  props->add_option("--budget", pa.budget, "enumeration budget");
  props->add_option("--seed", pa.seed, "random seed");
  props->add_flag("--json", pa.json, "machine readable output");

  MonoidArgs ma;
  CLI::App* monoid = app.add_subcommand("monoid", "triviality of a presented monoid");
  monoid->add_option("file", ma.presentation_path, "presentation file")->required();
  monoid->add_option("--budget", ma.budget, "rewrite search budget");
  monoid->add_option("--model-bound", ma.model_bound, "finite quotient size bound");
  monoid->add_flag("--json", ma.json, "machine readable output");

  ReproduceArgs ra;
  CLI::App* reproduce = app.add_subcommand("reproduce", "run the acceptance battery");
  reproduce->add_option("--seed", ra.seed, "random seed");
  reproduce->add_option("--jobs", ra.jobs, "worker threads (0 = all cores)");
  reproduce->add_flag("--json", ra.json, "machine readable output");
  reproduce->add_flag("--sabotage-psi", ra.sabotage_psi, "negative control: break the strength")
      ->group("");
  reproduce->add_option("--only", ra.only, "criteria subset")->delimiter(',')->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*classify) return run_classify(ca);
    if (*check) return run_check(ka);
    if (*props) return run_props(pa);
    if (*monoid) return run_monoid(ma);
    if (*reproduce) return run_reproduce(ra);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const CapabilityError& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return 2;
  } catch (const BudgetError& e) {
    std::cerr << "budget exhausted: " << e.what() << "\n";
    return 3;
  } catch (const StructuralError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
