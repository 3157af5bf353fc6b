#include "afl/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "afl/error.hpp"

namespace afl::cli {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  if (!s.empty() && s.back() == sep) parts.emplace_back();
  return parts;
}

Integer parse_integer(const std::string& s, const std::string& what) {
  Integer z;
  std::string t = s;
  if (!t.empty() && t[0] == '+') t.erase(0, 1);
  if (t.empty() || t.find_first_not_of("-0123456789") != std::string::npos ||
      t.find('-', 1) != std::string::npos || z.set_str(t, 10) != 0) {
    throw Error(ErrorCode::InvalidArgument, "bad integer '" + s + "' in " + what);
  }
  return z;
}

std::vector<Integer> parse_integer_list(const std::string& s, const std::string& what) {
  std::vector<Integer> out;
  if (s.empty()) return out;
  for (const auto& part : split(s, ',')) out.push_back(parse_integer(part, what));
  return out;
}

std::int64_t parse_positive(const std::string& s, const std::string& what) {
  Integer z = parse_integer(s, what);
  if (z < 1 || !z.fits_slong_p()) {
    throw Error(ErrorCode::InvalidArgument, what + " needs a positive integer, got '" + s + "'");
  }
  return z.get_si();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string format_witness(const Witness& w, const Backend& backend) {
  std::ostringstream os;
  if (w.point) {
    const Point& p = *w.point;
    for (std::size_t k = 0; k < p.size(); ++k) {
      if (k) os << ", ";
      os << (p.size() == 1 ? std::string("x") : "x" + std::to_string(k + 1)) << " = "
         << p[k].get_str();
    }
    os << (w.values.size() == 1 ? ", value " : ", values ");
    for (std::size_t i = 0; i < w.values.size(); ++i) {
      if (i) os << ", ";
      os << w.values[i].get_str();
    }
    return os.str();
  }
  const auto& alg = std::get<GammaAlgebra>(backend);
  os << (w.elements.size() == 1 ? "value " : "values ");
  for (std::size_t i = 0; i < w.elements.size(); ++i) {
    if (i) os << ", ";
    os << alg.format(w.elements[i]);
  }
  return os.str();
}

nlohmann::json witness_json(const Witness& w, const Backend& backend) {
  nlohmann::json j = nlohmann::json::object();
  if (w.point) {
    std::vector<std::string> pt, vals;
    for (const auto& x : *w.point) pt.push_back(x.get_str());
    for (const auto& x : w.values) vals.push_back(x.get_str());
    j["point"] = pt;
    j["values"] = vals;
  } else {
    const auto& alg = std::get<GammaAlgebra>(backend);
    std::vector<std::string> vals;
    for (const auto& x : w.elements) vals.push_back(alg.format(x));
    j["values"] = vals;
  }
  return j;
}

std::string normalize_reduction(std::string name) {
  for (const std::string arrow : {"→", "-to-", "_to_"}) {
    for (auto pos = name.find(arrow); pos != std::string::npos; pos = name.find(arrow)) {
      name.replace(pos, arrow.size(), "->");
    }
  }
  return name;
}

struct Instance {
  std::vector<std::string> terms;
};

}  // namespace

Backend parse_backend(const std::string& spec, std::size_t cf_budget) {
  const std::string es = "effros-shen:";
  if (spec == "farey") return FreeBackend{1};
  if (spec == "free") return FreeBackend{0};
  if (spec.rfind("free:", 0) == 0) {
    return FreeBackend{static_cast<unsigned>(parse_positive(spec.substr(5), "free:<n>"))};
  }
  if (spec.rfind("chain:", 0) == 0) {
    return GammaAlgebra::chain(parse_positive(spec.substr(6), "chain:<k>"));
  }
  if (spec.rfind("behncke-leptin:", 0) == 0) {
    auto parts = split(spec.substr(15), ',');
    if (parts.size() != 2) {
      throw Error(ErrorCode::InvalidArgument, "expected behncke-leptin:<m>,<n>");
    }
    return GammaAlgebra::behncke_leptin(parse_positive(parts[0], "behncke-leptin m"),
                                        parse_positive(parts[1], "behncke-leptin n"));
  }
  if (spec.rfind(es, 0) == 0) {
    std::string rest = spec.substr(es.size());
    auto with_budget = [&](CfNumber theta) {
      theta.limit_budget(cf_budget);
      return GammaAlgebra::effros_shen(std::move(theta));
    };
    if (rest == "golden") return with_budget(cf_from_surd(-1, 5, 2));
    if (rest == "inv-e") return with_budget(CfNumber::inv_e());
    if (rest.rfind("surd:", 0) == 0) {
      auto parts = split(rest.substr(5), ',');
      if (parts.size() != 3) {
        throw Error(ErrorCode::InvalidArgument, "expected effros-shen:surd:<P>,<D>,<Q>");
      }
      return with_budget(cf_from_surd(parse_integer(parts[0], "surd P"),
                                      parse_integer(parts[1], "surd D"),
                                      parse_integer(parts[2], "surd Q")));
    }
    if (rest.rfind("cf:", 0) == 0) {
      std::string body = rest.substr(3);
      auto semi = body.find(';');
      if (semi == std::string::npos) {
        throw Error(ErrorCode::InvalidArgument, "expected effros-shen:cf:<pre>;<per>");
      }
      return with_budget(CfNumber::periodic(parse_integer_list(body.substr(0, semi), "cf preperiod"),
                                            parse_integer_list(body.substr(semi + 1), "cf period")));
    }
    if (rest.rfind("stream:", 0) == 0) return with_budget(CfNumber::stream_file(rest.substr(7)));
  }
  throw Error(ErrorCode::InvalidArgument, "unknown algebra '" + spec + "'");
}

Assignment behncke_leptin_preset(const GammaAlgebra& algebra) {
  return {{1u, algebra.element(1, 0)}, {2u, algebra.element(0, 1)}};
}

std::string transpile(const std::string& reduction, std::span<const Term> terms) {
  const std::string name = normalize_reduction(reduction);
  auto need = [&](std::size_t count) {
    if (terms.size() != count) {
      throw Error(ErrorCode::ArityMismatch, "reduction '" + reduction + "' takes " +
                                                std::to_string(count) + " term(s)");
    }
  };
  if (name == "order->zero") {
    need(2);
    return render(reduce_order(terms[0], terms[1]));
  }
  if (name == "word->zero") {
    need(2);
    return render(reduce_word(terms[0], terms[1]));
  }
  if (name == "ecc->zero" || name == "eccentricity->zero") {
    need(2);
    return render(reduce_eccentricity(terms[0], terms[1]));
  }
  if (name == "central->zero") {
    need(1);
    return render(reduce_central(terms[0]));
  }
  if (name.rfind("zero->central", 0) == 0) {
    need(1);
    std::string suffix = name.substr(13);
    unsigned n = std::max(1u, max_variable(terms[0]));
    if (!suffix.empty()) {
      if (suffix[0] != ':') {
        throw Error(ErrorCode::InvalidArgument, "expected zero->central[:n]");
      }
      n = static_cast<unsigned>(parse_positive(suffix.substr(1), "zero->central n"));
    }
    return render(reduce_rho(terms[0], n));
  }
  throw Error(ErrorCode::InvalidArgument, "unknown reduction '" + reduction + "'");
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact decision procedures for projection classes coded by Lukasiewicz terms",
               "aflc"};
  std::string algebra_spec, problem_name_arg, terms_file, assign, reduction;
  std::string format = "text";
  std::vector<std::string> term_args;
  bool want_witness = false;
  std::size_t cf_budget = kDefaultCfBudget;
  std::size_t cell_budget = 1'000'000;

  app.add_option("--algebra", algebra_spec, "algebra to decide in");
  app.add_option("--problem", problem_name_arg, "p1 .. p7");
  app.add_option("--term", term_args, "instance term (repeatable)");
  app.add_option("--terms-file", terms_file, "batch file, one instance per line, terms separated by ';'");
  app.add_option("--assign", assign, "assignment file, or 'preset' for Behncke-Leptin");
  app.add_flag("--witness", want_witness, "print the witness of the verdict");
  app.add_option("--reduce", reduction, "print a transformed term instead of deciding");
  app.add_option("--cf-budget", cf_budget, "partial quotients available per irrational");
  app.add_option("--cell-budget", cell_budget, "largest complex the free backends may build");
  app.add_option("--format", format, "text or json-lines")
      ->check(CLI::IsMember({"text", "json-lines"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (!reduction.empty()) {
      std::vector<Term> terms;
      for (const auto& t : term_args) terms.push_back(parse(t));
      out << transpile(reduction, terms) << '\n';
      return kYes;
    }
    if (algebra_spec.empty() || problem_name_arg.empty()) {
      err << "error: --algebra and --problem are required (or use --reduce)\n";
      return kUsage;
    }
    auto problem = parse_problem(problem_name_arg);
    if (!problem) {
      err << "error: unknown problem '" << problem_name_arg << "' (expected p1..p7)\n";
      return kUsage;
    }
    Backend backend = parse_backend(algebra_spec, cf_budget);

    Assignment asg;
    if (!assign.empty()) {
      const auto* alg = std::get_if<GammaAlgebra>(&backend);
      if (!alg) {
        err << "error: free algebras interpret X_i as coordinates and take no assignment\n";
        return kUsage;
      }
      if (assign == "preset") {
        if (alg->kind() != GammaKind::BehnckeLeptin) {
          err << "error: the 'preset' assignment exists for behncke-leptin only\n";
          return kUsage;
        }
        asg = behncke_leptin_preset(*alg);
      } else {
        asg = parse_assignment(slurp(assign), *alg);
      }
    }

    std::vector<Instance> instances;
    if (!terms_file.empty()) {
      std::istringstream lines(slurp(terms_file));
      std::string line;
      while (std::getline(lines, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos || line[0] == '#') continue;
        instances.push_back(Instance{split(line, ';')});
      }
    }
    if (!term_args.empty()) instances.insert(instances.begin(), Instance{term_args});
    if (instances.empty()) {
      err << "error: no terms given (use --term or --terms-file)\n";
      return kUsage;
    }

    DecisionOptions options{cell_budget};
    int exit_code = kYes;
    for (const auto& inst : instances) {
      std::vector<Term> terms;
      for (const auto& t : inst.terms) terms.push_back(parse(t));
      auto start = std::chrono::steady_clock::now();
      Verdict v = decide(*problem, backend, terms, asg, options);
      double elapsed =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      if (!v.yes) exit_code = kNo;
      if (format == "json-lines") {
        nlohmann::json rec;
        rec["problem"] = problem_name(*problem);
        rec["algebra"] = algebra_spec;
        rec["verdict"] = v.yes ? "yes" : "no";
        rec["witness"] = (want_witness && v.witness) ? witness_json(*v.witness, backend)
                                                     : nlohmann::json(nullptr);
        rec["quotients_consumed"] = v.quotients_consumed;
        rec["cells_built"] = v.cells_built;
        rec["elapsed"] = elapsed;
        out << rec.dump() << '\n';
      } else {
        out << (v.yes ? "yes" : "no") << '\n';
        if (want_witness && v.witness) {
          out << "witness: " << format_witness(*v.witness, backend) << '\n';
        }
      }
    }
    return exit_code;
  } catch (const Error& e) {
    err << "error: " << error_name(e.code()) << ": " << e.what() << '\n';
    return (e.is_budget() || e.code() == ErrorCode::ArithmeticOverflow) ? kBudget : kUsage;
  }
}

}  // namespace afl::cli
