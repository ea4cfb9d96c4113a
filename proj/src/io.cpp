#include "dockalloc/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dockalloc/errors.hpp"

namespace dockalloc {

namespace {

using nlohmann::json;

json rational_to_json(const Rational& r) { return json::array({r.num(), r.den()}); }

Rational rational_from_json(const json& j, const char* where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer()) {
    throw ParseError(std::string("expected [numerator, denominator] for ") + where);
  }
  return Rational(j[0].get<long long>(), j[1].get<long long>());
}

IntVec int_vec_from_json(const json& j, const char* where) {
  if (!j.is_array()) throw ParseError(std::string("expected an array for ") + where);
  IntVec out;
  out.reserve(j.size());
  for (const auto& v : j) {
    if (!v.is_number_integer()) {
      throw ParseError(std::string("expected integers in ") + where);
    }
    out.push_back(v.get<long long>());
  }
  return out;
}

json convex_to_json(const ConvexSpec& spec) {
  json j;
  if (const auto* q = std::get_if<QuadraticSpec>(&spec)) {
    j["kind"] = "quadratic";
    j["a"] = rational_to_json(q->a);
    j["b"] = rational_to_json(q->b);
    j["c"] = rational_to_json(q->c);
  } else {
    const auto& pl = std::get<PiecewiseLinearSpec>(spec);
    j["kind"] = "piecewise_linear";
    j["breakpoints"] = pl.breakpoints;
    json slopes = json::array();
    for (const Rational& s : pl.slopes) slopes.push_back(rational_to_json(s));
    j["slopes"] = slopes;
    j["value_at_origin"] = rational_to_json(pl.value_at_origin);
  }
  return j;
}

ConvexSpec convex_from_json(const json& j, const char* where) {
  if (!j.is_object() || !j.contains("kind")) {
    throw ParseError(std::string("expected a convex spec object for ") + where);
  }
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "quadratic") {
    QuadraticSpec q{rational_from_json(j.at("a"), "quadratic a"),
                    rational_from_json(j.at("b"), "quadratic b"),
                    rational_from_json(j.at("c"), "quadratic c")};
    if (!convex_spec_valid(ConvexSpec{q})) {
      throw ParseError(std::string("quadratic with negative curvature in ") + where);
    }
    return q;
  }
  if (kind == "piecewise_linear") {
    PiecewiseLinearSpec pl;
    pl.breakpoints = int_vec_from_json(j.at("breakpoints"), "breakpoints");
    for (const auto& s : j.at("slopes")) pl.slopes.push_back(rational_from_json(s, "slope"));
    pl.value_at_origin = rational_from_json(j.at("value_at_origin"), "value_at_origin");
    if (!convex_spec_valid(ConvexSpec{pl})) {
      throw ParseError(std::string("invalid piecewise-linear spec in ") + where);
    }
    return pl;
  }
  throw ParseError("unknown convex spec kind '" + kind + "' in " + where);
}

}  // namespace

Instance parse_instance_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  try {
    Instance inst;
    inst.d_bar = int_vec_from_json(j.at("d_bar"), "d_bar");
    inst.b_bar = int_vec_from_json(j.at("b_bar"), "b_bar");
    inst.ell = int_vec_from_json(j.at("ell"), "ell");
    inst.u = int_vec_from_json(j.at("u"), "u");
    inst.gamma = j.at("gamma").get<long long>();
    const long long n = j.at("n").get<long long>();
    if (n != inst.n()) throw ParseError("field n does not match vector lengths");

    const json& cost = j.at("cost");
    const std::string family = cost.at("family").get<std::string>();
    std::vector<StationCost> stations;
    if (family == "separable_convex") {
      for (const auto& st : cost.at("stations")) {
        stations.push_back(SeparableConvexCost{convex_from_json(st.at("phi"), "phi"),
                                               convex_from_json(st.at("psi"), "psi"),
                                               convex_from_json(st.at("theta"), "theta")});
      }
    } else if (family == "table") {
      for (const auto& st : cost.at("stations")) {
        TableCost tab;
        tab.d_max = st.at("d_max").get<long long>();
        tab.b_max = st.at("b_max").get<long long>();
        if (tab.d_max < 0 || tab.b_max < 0) throw ParseError("negative table dimensions");
        const auto& values = st.at("values");
        if (static_cast<long long>(values.size()) != (tab.d_max + 1) * (tab.b_max + 1)) {
          throw ParseError("table size does not match (d_max+1)*(b_max+1)");
        }
        for (const auto& v : values) tab.values.push_back(rational_from_json(v, "table value"));
        stations.push_back(std::move(tab));
      }
    } else {
      throw ParseError("unknown cost family '" + family + "'");
    }
    if (static_cast<long long>(stations.size()) != n) {
      throw ParseError("cost stations count does not match n");
    }
    inst.cost = std::make_shared<const CostModel>(std::move(stations));
    inst.validate();

    // Table grids must cover the reachable evaluation box and be
    // multimodular; separable-convex specs were already shape-checked.
    for (long long i = 0; i < n; ++i) {
      if (auto box = inst.cost->domain_box(i)) {
        const long long need_d = inst.u[i];
        const long long need_b = std::min(inst.u[i], inst.total_b());
        if (box->first < need_d || box->second < need_b) {
          throw ParseError("table at station " + std::to_string(i) +
                           " does not cover d in [0," + std::to_string(need_d) + "], b in [0," +
                           std::to_string(need_b) + "]");
        }
      }
      if (auto bad = validate_multimodular(*inst.cost, i, inst.u[i],
                                           std::min(inst.u[i], inst.total_b()))) {
        throw ParseError("cost at station " + std::to_string(i) +
                         " is not multimodular: inequality " +
                         std::to_string(bad->inequality_id) + " fails at (" +
                         std::to_string(bad->alpha) + ", " + std::to_string(bad->beta) + ")");
      }
    }
    return inst;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed instance: ") + e.what());
  }
}

Instance load_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance_text(buf.str());
}

std::string serialize_instance(const Instance& inst) {
  json j;
  j["n"] = inst.n();
  j["d_bar"] = inst.d_bar;
  j["b_bar"] = inst.b_bar;
  j["ell"] = inst.ell;
  j["u"] = inst.u;
  j["gamma"] = inst.gamma;

  json stations = json::array();
  bool table = false, separable = false;
  for (long long i = 0; i < inst.n(); ++i) {
    const StationCost& sc = inst.cost->station(i);
    if (const auto* sep = std::get_if<SeparableConvexCost>(&sc)) {
      separable = true;
      json st;
      st["phi"] = convex_to_json(sep->phi);
      st["psi"] = convex_to_json(sep->psi);
      st["theta"] = convex_to_json(sep->theta);
      stations.push_back(st);
    } else {
      table = true;
      const auto& tab = std::get<TableCost>(sc);
      json st;
      st["d_max"] = tab.d_max;
      st["b_max"] = tab.b_max;
      json values = json::array();
      for (const Rational& v : tab.values) values.push_back(rational_to_json(v));
      st["values"] = values;
      stations.push_back(st);
    }
  }
  if (table && separable) {
    throw ParseError("instance mixes cost families; the file format holds one family");
  }
  j["cost"] = {{"family", table ? "table" : "separable_convex"}, {"stations", stations}};
  return j.dump(2) + "\n";
}

void save_instance_file(const Instance& inst, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write " + path);
  out << serialize_instance(inst);
}

const char* const kReportHeader =
    "instance_id,n,D,B,gamma,lambda,dist_l1,dist_linf,bound,p_cases,q_cases,n_cases,"
    "table1_bound,pass,phases,gamma_steps,wall_ms";

std::string report_row_csv(const ReportRow& row) {
  std::ostringstream os;
  os << row.instance_id << ',' << row.n << ',' << row.d_total << ',' << row.b_total << ','
     << row.gamma << ',' << row.lambda << ',' << row.dist_l1 << ',' << row.dist_linf << ','
     << row.bound << ',' << row.p_cases << ',' << row.q_cases << ',' << row.n_cases << ','
     << row.table1_bound << ',' << row.pass << ',' << row.phases << ',' << row.gamma_steps << ','
     << row.wall_ms;
  return os.str();
}

}  // namespace dockalloc
