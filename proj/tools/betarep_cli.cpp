#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <string>

#include "betarep/io.hpp"

using namespace betarep;

namespace {

#ifndef BETAREP_DEFAULT_PRESETS
#define BETAREP_DEFAULT_PRESETS "share/presets.json"
#endif

std::string presets_path(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("BETAREP_PRESETS")) return env;
  return BETAREP_DEFAULT_PRESETS;
}

struct SpecSource {
  std::string preset, spec_file, presets_file;

  RecurrenceSpec resolve() const {
    if (preset.empty() == spec_file.empty())
      throw InvalidInput("exactly one of --preset / --spec is required");
    if (!spec_file.empty()) return load_spec_file(spec_file);
    for (const auto& p : load_presets(presets_path(presets_file)))
      if (p.name == preset) return p.spec;
    throw InvalidInput("unknown preset: " + preset);
  }
};

BaseSpec resolve_base(const std::string& base_arg) {
  if (base_arg.empty()) throw InvalidInput("--base is required");
  try {
    size_t pos = 0;
    long b = std::stol(base_arg, &pos);
    if (pos == base_arg.size()) return make_base_integer(b);
  } catch (const std::logic_error&) {
    // not an integer literal: treat as a file
  }
  return load_base_file(base_arg);
}

DigitString parse_digits(const std::string& arg) {
  DigitString s;
  std::string cur;
  for (char ch : arg + ",") {
    if (ch == ',' || ch == '.') {
      if (!cur.empty()) s.digits.push_back(std::stol(cur));
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  if (s.digits.empty()) throw InvalidInput("empty digit string");
  return s;
}

void add_spec_flags(CLI::App* cmd, SpecSource& src) {
  cmd->add_option("--preset", src.preset, "preset name from the catalog");
  cmd->add_option("--spec", src.spec_file, "recurrence spec JSON file");
  cmd->add_option("--presets", src.presets_file, "preset catalog path");
}

void print_report(const SearchReport& rep, const std::string& format,
                  bool trace) {
  if (format == "csv")
    std::cout << report_to_csv(rep);
  else
    std::cout << report_to_json(rep, true, trace).dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact search and effective bounds for order-3 recurrence "
               "terms that are palindromic concatenations of two repdigits "
               "in base beta"};
  app.require_subcommand(1);

  SpecSource src;
  std::string base_arg, format = "json", minpoly_arg, digits_arg, value_arg;
  unsigned long n_max = 500;
  long precision = 256;
  int jobs = 1;
  bool distinct = false, trace = false, generic = false;

  auto* c_check = app.add_subcommand("check", "verify Theorem hypotheses");
  add_spec_flags(c_check, src);
  c_check->add_option("--precision", precision, "working precision in bits");

  auto* c_search = app.add_subcommand("search", "enumerate solutions");
  add_spec_flags(c_search, src);
  c_search->add_option("--base", base_arg, "integer base or base spec file");
  c_search->add_option("--n-max", n_max, "search indices n in [0, n-max]");
  c_search->add_flag("--distinct", distinct, "require d1 != d2");
  c_search->add_option("--format", format, "json|csv")
      ->check(CLI::IsMember({"json", "csv"}));
  c_search->add_option("--precision", precision, "working precision in bits");
  c_search->add_option("--jobs", jobs, "worker threads");
  c_search->add_flag("--generic", generic,
                     "force the O_K equality path on integer bases");

  auto* c_certify = app.add_subcommand(
      "certify", "bound chain + enumeration up to min(n_max, cap)");
  add_spec_flags(c_certify, src);
  c_certify->add_option("--base", base_arg, "integer base or base spec file");
  c_certify->add_option("--n-max", n_max, "enumeration cap");
  c_certify->add_flag("--distinct", distinct, "require d1 != d2");
  c_certify->add_option("--format", format, "json|csv")
      ->check(CLI::IsMember({"json", "csv"}));
  c_certify->add_option("--precision", precision, "working precision in bits");
  c_certify->add_option("--jobs", jobs, "worker threads");
  c_certify->add_flag("--trace", trace, "include the derivation trace");

  auto* c_bound = app.add_subcommand("bound", "effective index bound only");
  add_spec_flags(c_bound, src);
  c_bound->add_option("--base", base_arg, "integer base or base spec file");
  c_bound->add_option("--precision", precision, "working precision in bits");
  c_bound->add_flag("--trace", trace, "include the derivation trace");

  auto* c_height = app.add_subcommand("height", "Weil height of a minpoly root");
  c_height->add_option("--minpoly", minpoly_arg,
                       "integer coefficients, constant term first, e.g. "
                       "\"[-2,0,1]\"")
      ->required();

  auto* c_expand = app.add_subcommand("expand", "base-beta digit expansion");
  c_expand->add_option("--base", base_arg, "integer base or base spec file");
  c_expand->add_option("--value", value_arg,
                       "value to expand (integer, or JSON K element)")
      ->required();

  auto* c_eval = app.add_subcommand("eval", "evaluate a digit string");
  c_eval->add_option("--base", base_arg, "integer base or base spec file");
  c_eval->add_option("--digits", digits_arg, "comma-separated digits")
      ->required();

  auto* c_match = app.add_subcommand("match", "palindromic pattern matches");
  c_match->add_option("--digits", digits_arg, "comma-separated digits")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 64;
  }

  try {
    if (c_check->parsed()) {
      HypothesisReport rep = check_hypotheses(src.resolve(), precision);
      std::cout << hypotheses_to_json(rep).dump(2) << "\n";
      return rep.all_pass() ? 0 : 2;
    }
    if (c_search->parsed()) {
      SearchOptions opt{distinct, precision, jobs, generic};
      SearchReport rep = enumerate_solutions(src.resolve(),
                                             resolve_base(base_arg), 0, n_max,
                                             opt);
      print_report(rep, format, false);
      return 0;
    }
    if (c_certify->parsed()) {
      SearchOptions opt{distinct, precision, jobs, generic};
      SearchReport rep =
          certify(src.resolve(), resolve_base(base_arg), n_max, opt);
      print_report(rep, format, trace);
      return rep.failure.empty() ? 0 : 2;
    }
    if (c_bound->parsed()) {
      CharacteristicData cd = characteristic_data(src.resolve(), precision);
      HypothesisReport hyp = check_hypotheses(cd);
      if (!hyp.all_pass()) {
        json out;
        out["hypotheses"] = hypotheses_to_json(hyp);
        out["failure"] = "hypotheses not satisfied";
        std::cout << out.dump(2) << "\n";
        return 2;
      }
      BaseSpec base = resolve_base(base_arg);
      EffectiveConstants ec = lambda_constants(cd, base, precision);
      BoundResult br = solve_bound_chain(ec, cd, base);
      json out = bound_result_to_json(br);
      out["nonvanishing"] =
          nonvanishing_str(nonvanishing_certificate(cd, cd.spec.K));
      if (!trace) out.erase("trace");
      std::cout << out.dump(2) << "\n";
      return 0;
    }
    if (c_height->parsed()) {
      json arr = json::parse(minpoly_arg);
      std::vector<mpz_class> coeffs;
      for (const auto& c : arr)
        coeffs.emplace_back(c.is_string() ? mpz_class(c.get<std::string>())
                                          : mpz_class(std::to_string(c.get<long long>())));
      IntPoly p(coeffs);
      if (p.degree() < 1) throw InvalidInput("minpoly must be nonconstant");
      if (p.degree() > 6)
        throw InvalidInput("height supports degree <= 6");
      auto factors = factor_squarefree(p);
      if (factors.size() != 1 || !(factors[0] == p.primitive()))
        throw InvalidInput("polynomial is not irreducible; pass the exact "
                           "minimal polynomial");
      AlgebraicNumber x = AlgebraicNumber::from_poly_root(
          p, isolate_all_roots(p.squarefree_part(), kStartPrec).front());
      RealBall h = weil_height(x, -40);
      json out;
      out["minpoly"] = arr;
      out["height"] = ball_to_json(h);
      std::cout << out.dump(2) << "\n";
      return 0;
    }
    if (c_expand->parsed()) {
      BaseSpec base = resolve_base(base_arg);
      KElem v = kelem_from_json(base.K, json::parse(value_arg));
      auto ds = expand(v, base);
      json out;
      out["value"] = kelem_to_json(v);
      if (ds) {
        out["digits"] = ds->str(base);
        out["length"] = ds->size();
      } else {
        out["digits"] = nullptr;
        out["no_expansion"] = true;
      }
      std::cout << out.dump(2) << "\n";
      return 0;
    }
    if (c_eval->parsed()) {
      BaseSpec base = resolve_base(base_arg);
      DigitString s = parse_digits(digits_arg);
      json out;
      out["digits"] = s.str(base);
      out["value"] = kelem_to_json(evaluate(s, base));
      std::cout << out.dump(2) << "\n";
      return 0;
    }
    if (c_match->parsed()) {
      DigitString s = parse_digits(digits_arg);
      json out = json::array();
      for (const auto& p : match_pattern(s)) {
        out.push_back(json{{"d1", p.d1}, {"d2", p.d2}, {"l", p.l}, {"m", p.m}});
      }
      std::cout << out.dump(2) << "\n";
      return 0;
    }
  } catch (const InvalidInput& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 3;
  } catch (const UnsupportedBase& e) {
    std::cerr << "unsupported base: " << e.what() << "\n";
    return 3;
  } catch (const RepeatedRoots& e) {
    std::cerr << "rejected: " << e.what() << "\n";
    return 2;
  } catch (const HypothesisViolation& e) {
    std::cerr << "hypothesis failure: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 64;
}
