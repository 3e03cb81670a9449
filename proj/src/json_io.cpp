#include "nsl/json_io.hpp"

#include <fstream>
#include <sstream>

namespace nsl {

namespace {

const Json& field(const Json& j, const std::string& key) {
  require(j.is_object() && j.contains(key), Errc::Schema, "missing field '" + key + "'");
  return j.at(key);
}

int int_field(const Json& j, const std::string& key) {
  const Json& v = field(j, key);
  require(v.is_number_integer(), Errc::Schema, "field '" + key + "' must be an integer");
  return v.get<int>();
}

long long_field(const Json& j, const std::string& key) {
  const Json& v = field(j, key);
  require(v.is_number_integer(), Errc::Schema, "field '" + key + "' must be an integer");
  return v.get<long>();
}

std::string str_field(const Json& j, const std::string& key) {
  const Json& v = field(j, key);
  require(v.is_string(), Errc::Schema, "field '" + key + "' must be a string");
  return v.get<std::string>();
}

Rat rat_field(const Json& j, const std::string& key) {
  const Json& v = field(j, key);
  if (v.is_number_integer()) return Rat(v.get<long>());
  require(v.is_string(), Errc::Schema, "field '" + key + "' must be a rational string");
  return rat_parse(v.get<std::string>());
}

RatMat mat_from_json(const Json& j) {
  require(j.is_array(), Errc::Schema, "matrix must be an array of rows");
  int rows = static_cast<int>(j.size());
  int cols = rows == 0 ? 0 : static_cast<int>(j.at(0).size());
  RatMat m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    require(j.at(i).is_array() && static_cast<int>(j.at(i).size()) == cols, Errc::Schema,
            "ragged matrix");
    for (int k = 0; k < cols; ++k) {
      const Json& cell = j.at(i).at(k);
      m.at(i, k) = cell.is_number_integer() ? Rat(cell.get<long>())
                                            : rat_parse(cell.get<std::string>());
    }
  }
  return m;
}

}  // namespace

Json to_json(const CurveGraph& g) {
  Json vs = Json::array();
  for (const auto& v : g.vertices()) {
    Json jv{{"id", v.id}, {"genus", v.genus}};
    if (v.label) jv["label"] = *v.label;
    vs.push_back(jv);
  }
  Json es = Json::array();
  for (const auto& e : g.edges()) es.push_back({{"id", e.id}, {"ends", {e.end0, e.end1}}});
  Json ms = Json::array();
  for (const auto& m : g.marked_points()) ms.push_back({{"id", m.id}, {"vertex", m.vertex}});
  return {{"vertices", vs}, {"edges", es}, {"marked_points", ms}};
}

CurveGraph curve_from_json(const Json& j) {
  std::vector<Vertex> vs;
  for (const auto& jv : field(j, "vertices")) {
    Vertex v{str_field(jv, "id"), int_field(jv, "genus"), std::nullopt};
    if (jv.contains("label")) v.label = jv.at("label").get<std::string>();
    vs.push_back(std::move(v));
  }
  std::vector<Edge> es;
  if (j.contains("edges"))
    for (const auto& je : j.at("edges")) {
      const Json& ends = field(je, "ends");
      require(ends.is_array() && ends.size() == 2, Errc::Schema, "edge ends must be a pair");
      es.push_back({str_field(je, "id"), ends.at(0).get<std::string>(),
                    ends.at(1).get<std::string>()});
    }
  std::vector<MarkedPoint> ms;
  if (j.contains("marked_points"))
    for (const auto& jm : j.at("marked_points"))
      ms.push_back({str_field(jm, "id"), str_field(jm, "vertex")});
  return CurveGraph(std::move(vs), std::move(es), std::move(ms));
}

Json to_json(const Subcurve& s) {
  Json vs = Json::array();
  for (const auto& v : s.vertices) vs.push_back(v);
  return {{"vertices", vs}};
}

Subcurve subcurve_from_json(const Json& j) {
  Subcurve s;
  for (const auto& v : field(j, "vertices")) s.vertices.insert(v.get<std::string>());
  return s;
}

Json to_json(const SheafOnTree& f) {
  Json types = Json::object();
  for (const auto& [vid, t] : f.vertex_types()) types[vid] = t.parts();
  Json defects = Json::object();
  for (const auto& [eid, d] : f.edge_defects()) defects[eid] = d;
  return {{"tree", to_json(f.tree())}, {"rank", f.rank()}, {"vertex_types", types},
          {"edge_defects", defects}};
}

SheafOnTree sheaf_from_json(const Json& j) {
  CurveGraph tree = curve_from_json(field(j, "tree"));
  int rank = int_field(j, "rank");
  std::map<std::string, SplittingType> types;
  for (const auto& [vid, parts] : field(j, "vertex_types").items()) {
    require(parts.is_array(), Errc::Schema, "vertex_types values must be arrays");
    types.emplace(vid, SplittingType(parts.get<std::vector<int>>()));
  }
  std::map<std::string, int> defects;
  if (j.contains("edge_defects"))
    for (const auto& [eid, d] : j.at("edge_defects").items()) defects[eid] = d.get<int>();
  std::map<std::string, EdgeGluing> gluing;
  if (j.contains("gluing"))
    for (const auto& [eid, g] : j.at("gluing").items())
      gluing.emplace(eid, EdgeGluing{mat_from_json(field(g, "pi_minus")),
                                     mat_from_json(field(g, "pi_plus")),
                                     mat_from_json(field(g, "iso"))});
  return SheafOnTree(std::move(tree), rank, std::move(types), std::move(defects),
                     std::move(gluing));
}

Json to_json(const ChargeDatum& d) {
  return {{"chi", d.chi}, {"b_beta", rat_str(d.b_beta)}, {"jl_beta", rat_str(d.jl_beta)},
          {"h_beta", d.h_beta}};
}

ChargeDatum datum_from_json(const Json& j) {
  return ChargeDatum(long_field(j, "chi"), rat_field(j, "b_beta"), rat_field(j, "jl_beta"),
                     long_field(j, "h_beta"));
}

Json to_json(const ChargeValue& z) { return {{"re", rat_str(z.re)}, {"im", rat_str(z.im)}}; }

Json to_json(const FMDatum& d) {
  Json contracted = Json::array();
  for (const auto& v : d.contracted) contracted.push_back(v);
  Json types = Json::object();
  for (const auto& [vid, t] : d.vertex_types) types[vid] = t.parts();
  Json defects = Json::object();
  for (const auto& [eid, del] : d.edge_defects) defects[eid] = del;
  Json charges = Json::object();
  for (const auto& [vid, q] : d.vertex_charges) charges[vid] = to_json(q);
  Json core_chi = Json::object();
  for (const auto& [vid, c] : d.core_chi) core_chi[vid] = c;
  Json pts = Json::array(), verts = Json::array();
  for (const auto& t : d.point_torsions)
    pts.push_back({{"id", t.id}, {"at", t.at}, {"charge", to_json(t.charge)}});
  for (const auto& t : d.vertical_torsions)
    verts.push_back({{"id", t.id}, {"at", t.at}, {"charge", to_json(t.charge)}});
  Json out{{"curve", to_json(d.curve)},
           {"rank", d.rank},
           {"contracted", contracted},
           {"vertex_types", types},
           {"edge_defects", defects},
           {"vertex_charges", charges},
           {"core_charge", to_json(d.core_charge)},
           {"point_torsions", pts},
           {"vertical_torsions", verts},
           {"total_charge", to_json(d.total_charge)}};
  if (!d.core_chi.empty()) out["core_chi"] = core_chi;
  return out;
}

FMDatum fm_from_json(const Json& j) {
  FMDatum d;
  d.curve = curve_from_json(field(j, "curve"));
  d.rank = int_field(j, "rank");
  if (j.contains("contracted"))
    for (const auto& v : j.at("contracted")) d.contracted.insert(v.get<std::string>());
  if (j.contains("vertex_types"))
    for (const auto& [vid, parts] : j.at("vertex_types").items())
      d.vertex_types.emplace(vid, SplittingType(parts.get<std::vector<int>>()));
  if (j.contains("edge_defects"))
    for (const auto& [eid, del] : j.at("edge_defects").items())
      d.edge_defects[eid] = del.get<int>();
  if (j.contains("vertex_charges"))
    for (const auto& [vid, q] : j.at("vertex_charges").items())
      d.vertex_charges[vid] = datum_from_json(q);
  if (j.contains("core_chi"))
    for (const auto& [vid, c] : j.at("core_chi").items()) d.core_chi[vid] = c.get<long>();
  d.core_charge = datum_from_json(field(j, "core_charge"));
  auto records = [&](const char* key, std::vector<TorsionRecord>& out) {
    if (!j.contains(key)) return;
    for (const auto& jt : j.at(key))
      out.push_back({str_field(jt, "id"), str_field(jt, "at"),
                     datum_from_json(field(jt, "charge"))});
  };
  records("point_torsions", d.point_torsions);
  records("vertical_torsions", d.vertical_torsions);
  d.total_charge = datum_from_json(field(j, "total_charge"));
  d.validate();
  return d;
}

Json to_json(const Scenario& s) {
  Json out{{"rank", s.rank},
           {"total_h_beta", s.total_h_beta},
           {"u_one_h_beta", s.u_one_h_beta},
           {"n_a", s.n_a},
           {"core_node_count", s.core_node_count},
           {"core_defects", s.core_defects},
           {"l_torsion", s.l_torsion},
           {"chi_E_C0", s.chi_E_C0},
           {"chi_F_mod_torsion", s.chi_F_mod_torsion},
           {"attach_count", s.attach_count}};
  if (s.u_a_fragment) out["u_a_fragment"] = to_json(*s.u_a_fragment);
  return out;
}

Scenario scenario_from_json(const Json& j) {
  Scenario s;
  s.rank = int_field(j, "rank");
  s.total_h_beta = long_field(j, "total_h_beta");
  if (j.contains("u_one_h_beta"))
    s.u_one_h_beta = j.at("u_one_h_beta").get<std::vector<long>>();
  s.n_a = j.value("n_a", 0);
  s.core_node_count = j.value("core_node_count", 0);
  if (j.contains("core_defects")) s.core_defects = j.at("core_defects").get<std::vector<int>>();
  s.l_torsion = j.value("l_torsion", 0L);
  s.chi_E_C0 = j.value("chi_E_C0", 0L);
  s.chi_F_mod_torsion = j.value("chi_F_mod_torsion", 0L);
  s.attach_count = j.value("attach_count", 0);
  if (j.contains("u_a_fragment")) s.u_a_fragment = sheaf_from_json(j.at("u_a_fragment"));
  return s;
}

Json to_json(const TraceStep& t) {
  return {{"kind", t.kind},
          {"site", t.site},
          {"err_before", to_json(t.err_before)},
          {"err_after", to_json(t.err_after)},
          {"certificate", t.certificate}};
}

Json parse_json(const std::string& text) {
  Json j = Json::parse(text, nullptr, false);
  require(!j.is_discarded(), Errc::Schema, "malformed JSON input");
  return j;
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), Errc::Usage, "cannot open input file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str());
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace nsl
