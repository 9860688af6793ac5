#include "betarep/io.hpp"

#include <fstream>
#include <sstream>

namespace betarep {

json field_to_json(const FieldDesc& K) {
  if (K.is_rational()) return "Q";
  return json{{"sqrt", K.d()}};
}

FieldDesc field_from_json(const json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "Q") return FieldDesc::rationals();
    throw InvalidInput("unknown field: " + j.get<std::string>());
  }
  if (j.is_object() && j.contains("sqrt"))
    return FieldDesc::quadratic(j["sqrt"].get<long>());
  throw InvalidInput("field must be \"Q\" or {\"sqrt\": d}");
}

json kelem_to_json(const KElem& x) {
  if (x.is_rational()) {
    mpq_class q = x.as_rational();
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_str();
  }
  return json{{"a", x.a().get_str()},
              {"b", x.b().get_str()},
              {"den", x.den().get_str()}};
}

KElem kelem_from_json(const FieldDesc& K, const json& j) {
  if (j.is_number_integer())
    return KElem::from_int(K, mpz_class(std::to_string(j.get<long long>())));
  if (j.is_string()) {
    mpq_class q(j.get<std::string>());
    q.canonicalize();
    return KElem::from_rational(K, q);
  }
  if (j.is_array()) {
    auto get = [&](size_t i) { return mpz_class(j[i].get<std::string>()); };
    auto getn = [&](size_t i) {
      return j[i].is_string() ? mpz_class(j[i].get<std::string>())
                              : mpz_class(std::to_string(j[i].get<long long>()));
    };
    (void)get;
    if (j.size() == 2) return KElem(K, getn(0), getn(1), 1);
    if (j.size() == 3) return KElem(K, getn(0), getn(1), getn(2));
    throw InvalidInput("K element array must be [a,b] or [a,b,den]");
  }
  if (j.is_object()) {
    mpz_class a(j.at("a").get<std::string>());
    mpz_class b(j.at("b").get<std::string>());
    mpz_class den = j.contains("den") ? mpz_class(j["den"].get<std::string>())
                                      : mpz_class(1);
    return KElem(K, a, b, den);
  }
  throw InvalidInput("cannot parse K element");
}

json ball_to_json(const RealBall& b) {
  return json{{"mid", b.mid_str(30)}, {"rad", b.rad_str(5)}};
}

json spec_to_json(const RecurrenceSpec& spec) {
  json j;
  j["field"] = field_to_json(spec.K);
  j["coeffs"] = json::array(
      {kelem_to_json(spec.a), kelem_to_json(spec.b), kelem_to_json(spec.c)});
  j["initials"] = json::array({kelem_to_json(spec.a0), kelem_to_json(spec.a1),
                               kelem_to_json(spec.a2)});
  if (!spec.name.empty()) j["preset"] = spec.name;
  return j;
}

RecurrenceSpec spec_from_json(const json& j) {
  RecurrenceSpec spec;
  spec.K = j.contains("field") ? field_from_json(j.at("field"))
                               : FieldDesc::rationals();
  const json& c = j.at("coeffs");
  const json& i = j.at("initials");
  if (!c.is_array() || c.size() != 3 || !i.is_array() || i.size() != 3)
    throw InvalidInput("spec needs 3 coeffs and 3 initials");
  spec.a = kelem_from_json(spec.K, c[0]);
  spec.b = kelem_from_json(spec.K, c[1]);
  spec.c = kelem_from_json(spec.K, c[2]);
  spec.a0 = kelem_from_json(spec.K, i[0]);
  spec.a1 = kelem_from_json(spec.K, i[1]);
  spec.a2 = kelem_from_json(spec.K, i[2]);
  if (j.contains("preset")) spec.name = j["preset"].get<std::string>();
  spec.validate();
  return spec;
}

json base_to_json(const BaseSpec& base) {
  return json{{"field", field_to_json(base.K)},
              {"beta", kelem_to_json(base.beta)},
              {"norm_abs", base.norm_abs.get_str()}};
}

BaseSpec base_from_json(const json& j) {
  FieldDesc K = j.contains("field") ? field_from_json(j.at("field"))
                                    : FieldDesc::rationals();
  return make_base(K, kelem_from_json(K, j.at("beta")));
}

json hypotheses_to_json(const HypothesisReport& rep) {
  json j;
  j["z1_real_gt1"] = verdict_str(rep.z1_real_gt1);
  j["z2_le1"] = verdict_str(rep.z2_le1);
  j["z3_le1"] = verdict_str(rep.z3_le1);
  j["a1_nonzero"] = verdict_str(rep.a1_nonzero);
  j["z1_not_in_K"] = verdict_str(rep.z1_not_in_K);
  j["effective_eligible"] = verdict_str(rep.effective_eligible);
  j["all_pass"] = rep.all_pass();
  if (!rep.detail.empty()) j["detail"] = rep.detail;
  return j;
}

json trace_to_json(const std::vector<TraceEntry>& trace) {
  json arr = json::array();
  for (const auto& e : trace) {
    json rec;
    rec["name"] = e.name;
    rec["formula"] = e.formula;
    json in = json::object();
    for (const auto& [k, v] : e.inputs) in[k] = v;
    rec["inputs"] = in;
    rec["value"] = e.value;
    arr.push_back(rec);
  }
  return arr;
}

json bound_result_to_json(const BoundResult& br) {
  json j;
  j["n_max"] = br.n_max.get_str();
  j["effective"] = br.effective;
  json its = json::array();
  for (const auto& n : br.iterates) its.push_back(n.get_str());
  j["iterates"] = its;
  j["trace"] = trace_to_json(br.trace);
  return j;
}

json solution_to_json(const Solution& sol, const BaseSpec& base) {
  json j;
  j["n"] = sol.n;
  j["l"] = sol.l;
  j["m"] = sol.m;
  j["d1"] = sol.d1;
  j["d2"] = sol.d2;
  j["value"] = kelem_to_json(sol.value);
  if (sol.digits) j["digits"] = sol.digits->str(base);
  return j;
}

json report_to_json(const SearchReport& rep, bool include_timing,
                    bool include_trace) {
  json j;
  j["spec"] = spec_to_json(rep.spec);
  j["base"] = base_to_json(rep.base);
  j["n_range"] = json::array({rep.n_lo, rep.n_hi});
  j["options"] = json{{"distinct_digits", rep.options.distinct_digits},
                      {"precision", rep.options.precision},
                      {"jobs", rep.options.jobs}};
  json sols = json::array();
  for (const auto& s : rep.solutions) sols.push_back(solution_to_json(s, rep.base));
  j["solutions"] = sols;
  j["hypotheses"] = hypotheses_to_json(rep.hypotheses);
  json comp;
  comp["status"] =
      rep.status == Completeness::Complete ? "complete" : "partial";
  if (rep.n_max_known) comp["n_max"] = rep.n_max.get_str();
  comp["effective"] = rep.effective;
  j["completeness"] = comp;
  if (!rep.failure.empty()) j["failure"] = rep.failure;
  if (include_trace && !rep.trace.empty()) j["trace"] = trace_to_json(rep.trace);
  if (include_timing) j["timing_ms"] = rep.timing_ms;
  return j;
}

std::string report_to_csv(const SearchReport& rep) {
  std::ostringstream os;
  os << "n,l,m,d1,d2,value\n";
  for (const auto& s : rep.solutions) {
    os << s.n << "," << s.l << "," << s.m << "," << s.d1 << "," << s.d2 << ","
       << s.value.str() << "\n";
  }
  return os.str();
}

namespace {

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path);
  json j;
  in >> j;
  return j;
}

}  // namespace

std::vector<Preset> load_presets(const std::string& path) {
  json j = load_json_file(path);
  std::vector<Preset> out;
  for (const auto& rec : j.at("presets")) {
    Preset p;
    p.name = rec.at("name").get<std::string>();
    json sj = rec;
    sj["preset"] = p.name;
    p.spec = spec_from_json(sj);
    if (rec.contains("provenance"))
      p.provenance = rec["provenance"].get<std::string>();
    out.push_back(std::move(p));
  }
  return out;
}

RecurrenceSpec load_spec_file(const std::string& path) {
  return spec_from_json(load_json_file(path));
}

BaseSpec load_base_file(const std::string& path) {
  return base_from_json(load_json_file(path));
}

}  // namespace betarep
