#include "conelab/jsonio.hpp"

namespace conelab {

json rational_to_json(const Rational& r) { return r.str(); }

Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (!j.is_string()) throw Error("json: expected a rational \"p/q\" string");
  return Rational::from_string(j.get<std::string>());
}

json vec_to_json(const QVec& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(rational_to_json(x));
  return a;
}

QVec vec_from_json(const json& j) {
  if (!j.is_array()) throw Error("json: expected an array of rationals");
  QVec v;
  for (const auto& e : j) v.push_back(rational_from_json(e));
  return v;
}

json mat_to_json(const QMat& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) rows.push_back(vec_to_json(m.row(i)));
  return rows;
}

QMat mat_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw Error("json: expected a matrix as array of rows");
  std::vector<QVec> rows;
  for (const auto& e : j) rows.push_back(vec_from_json(e));
  QMat m(int(rows.size()), int(rows.front().size()));
  for (size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.front().size()) throw Error("json: ragged matrix rows");
    for (size_t k = 0; k < rows[i].size(); ++k) m(int(i), int(k)) = rows[i][k];
  }
  return m;
}

json cone_to_json(const Cone& c) {
  json j;
  switch (c.kind()) {
    case Cone::Kind::Polyhedral: {
      j["kind"] = "polyhedral";
      j["dim"] = c.ambient_dim();
      json gens = json::array();
      for (const auto& g : c.generators()) gens.push_back(vec_to_json(g));
      j["generators"] = std::move(gens);
      return j;
    }
    case Cone::Kind::Lorentz:
      j["kind"] = "lorentz";
      j["n"] = c.lorentz_n();
      j["r"] = rational_to_json(c.lorentz_r());
      return j;
    case Cone::Kind::Psd:
      j["kind"] = "psd";
      j["n"] = c.psd_n();
      return j;
    case Cone::Kind::Classical:
      j["kind"] = "classical";
      j["n"] = c.classical_n();
      return j;
    case Cone::Kind::Polygon: {
      j["kind"] = "polygon";
      json verts = json::array();
      for (const auto& v : c.polygon_vertices())
        verts.push_back(json::array({rational_to_json(v.x), rational_to_json(v.y)}));
      j["vertices"] = std::move(verts);
      return j;
    }
  }
  throw Error("cone_to_json: unreachable");
}

Cone cone_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind")) throw Error("json: cone object must carry a kind");
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "polyhedral") {
    int dim = j.at("dim").get<int>();
    std::vector<QVec> gens;
    for (const auto& e : j.at("generators")) gens.push_back(vec_from_json(e));
    return make_polyhedral(dim, std::move(gens));
  }
  if (kind == "lorentz")
    return make_lorentz(j.at("n").get<int>(), rational_from_json(j.at("r")));
  if (kind == "psd") return make_psd(j.at("n").get<int>());
  if (kind == "classical") return make_classical(j.at("n").get<int>());
  if (kind == "polygon") {
    std::vector<Point2> verts;
    for (const auto& e : j.at("vertices")) {
      QVec v = vec_from_json(e);
      if (v.size() != 2) throw Error("json: polygon vertices are pairs");
      verts.push_back({v[0], v[1]});
    }
    return make_polygon(std::move(verts));
  }
  throw Error("json: unknown cone kind \"" + kind + "\"");
}

json tensor_to_json(const QMat& m) {
  json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  j["entries"] = mat_to_json(m);
  return j;
}

QMat tensor_from_json(const json& j) {
  QMat m = mat_from_json(j.at("entries"));
  if (m.rows() != j.at("rows").get<int>() || m.cols() != j.at("cols").get<int>())
    throw Error("json: tensor shape does not match its entries");
  return m;
}

namespace {

json evidence_to_json(const std::vector<EvidenceEntry>& ev) {
  json a = json::array();
  for (const auto& e : ev)
    a.push_back(json{{"i", e.i}, {"j", e.j}, {"value", rational_to_json(e.value)}});
  return a;
}

std::vector<EvidenceEntry> evidence_from_json(const json& j) {
  std::vector<EvidenceEntry> ev;
  for (const auto& e : j)
    ev.push_back({e.at("i").get<int>(), e.at("j").get<int>(), rational_from_json(e.at("value"))});
  return ev;
}

json disk_evidence_to_json(const std::vector<DiskEvidence>& ev) {
  json a = json::array();
  for (const auto& e : ev)
    a.push_back(json{{"vector", vec_to_json(e.vector)}, {"slack", rational_to_json(e.slack)}});
  return a;
}

std::vector<DiskEvidence> disk_evidence_from_json(const json& j) {
  std::vector<DiskEvidence> ev;
  for (const auto& e : j)
    ev.push_back({vec_from_json(e.at("vector")), rational_from_json(e.at("slack"))});
  return ev;
}

}  // namespace

json certificate_to_json(const SeparationCertificate& cert) {
  json j;
  j["kind"] = "polyhedral-pair";
  j["witness"] = mat_to_json(cert.witness);
  j["functional"] = mat_to_json(cert.functional);
  j["separation_value"] = rational_to_json(cert.separation_value);
  j["max_evidence"] = evidence_to_json(cert.max_evidence);
  j["min_evidence"] = evidence_to_json(cert.min_evidence);
  return j;
}

SeparationCertificate certificate_from_json(const json& j) {
  SeparationCertificate cert;
  cert.witness = mat_from_json(j.at("witness"));
  cert.functional = mat_from_json(j.at("functional"));
  cert.separation_value = rational_from_json(j.at("separation_value"));
  cert.max_evidence = evidence_from_json(j.at("max_evidence"));
  cert.min_evidence = evidence_from_json(j.at("min_evidence"));
  return cert;
}

json retract_pair_to_json(const RetractPair& r) {
  json j;
  j["source"] = cone_to_json(r.source);
  j["target"] = cone_to_json(r.target);
  j["phi"] = mat_to_json(r.phi);
  j["psi"] = mat_to_json(r.psi);
  return j;
}

RetractPair retract_pair_from_json(const json& j) {
  RetractPair r;
  r.source = cone_from_json(j.at("source"));
  r.target = cone_from_json(j.at("target"));
  r.phi = mat_from_json(j.at("phi"));
  r.psi = mat_from_json(j.at("psi"));
  return r;
}

json chain_to_json(const RetractChain& chain) {
  json steps = json::array();
  for (const auto& s : chain.steps) {
    json e;
    e["kind"] = s.kind;
    if (s.index >= 0) e["facet_index"] = s.index;
    if (!s.lambda.is_zero()) e["lambda"] = rational_to_json(s.lambda);
    e["pair"] = retract_pair_to_json(s.pair);
    steps.push_back(std::move(e));
  }
  json j;
  j["steps"] = std::move(steps);
  j["total"] = retract_pair_to_json(chain.total);
  return j;
}

RetractChain chain_from_json(const json& j) {
  RetractChain chain;
  for (const auto& e : j.at("steps")) {
    ChainStep s;
    s.kind = e.at("kind").get<std::string>();
    s.index = e.contains("facet_index") ? e.at("facet_index").get<int>() : -1;
    if (e.contains("lambda")) s.lambda = rational_from_json(e.at("lambda"));
    s.pair = retract_pair_from_json(e.at("pair"));
    chain.steps.push_back(std::move(s));
  }
  chain.total = retract_pair_from_json(j.at("total"));
  return chain;
}

json trace_to_json(const DescentTrace& trace) { return chain_to_json(chain_of(trace)); }

json semiquantum_to_json(const SemiquantumCertificate& cert) {
  json j;
  j["kind"] = "semiquantum";
  j["psd_n"] = cert.psd_n;
  j["witness"] = mat_to_json(cert.witness);
  j["functional"] = mat_to_json(cert.functional);
  j["separation_value"] = rational_to_json(cert.separation_value);
  j["base"] = {{"witness", mat_to_json(cert.base_witness)},
               {"functional", mat_to_json(cert.base_functional)},
               {"separation_value", rational_to_json(cert.base_separation)},
               {"margin", rational_to_json(cert.margin)},
               {"max_evidence", disk_evidence_to_json(cert.base_max)},
               {"min_evidence", disk_evidence_to_json(cert.base_min)}};
  j["left_chain"] = chain_to_json(cert.left);
  j["right_chain"] = chain_to_json(cert.right);
  j["sampling"] = {{"seed", cert.seed}, {"samples", cert.samples}, {"tol", cert.tol}};
  return j;
}

SemiquantumCertificate semiquantum_from_json(const json& j) {
  SemiquantumCertificate cert;
  cert.psd_n = j.at("psd_n").get<int>();
  cert.witness = mat_from_json(j.at("witness"));
  cert.functional = mat_from_json(j.at("functional"));
  cert.separation_value = rational_from_json(j.at("separation_value"));
  const json& b = j.at("base");
  cert.base_witness = mat_from_json(b.at("witness"));
  cert.base_functional = mat_from_json(b.at("functional"));
  cert.base_separation = rational_from_json(b.at("separation_value"));
  cert.margin = rational_from_json(b.at("margin"));
  cert.base_max = disk_evidence_from_json(b.at("max_evidence"));
  cert.base_min = disk_evidence_from_json(b.at("min_evidence"));
  cert.left = chain_from_json(j.at("left_chain"));
  cert.right = chain_from_json(j.at("right_chain"));
  cert.seed = j.at("sampling").at("seed").get<uint64_t>();
  cert.samples = j.at("sampling").at("samples").get<int>();
  cert.tol = j.at("sampling").at("tol").get<double>();
  return cert;
}

json space_to_json(const NormedSpace& s) {
  json j;
  if (s.kind == NormedSpace::Kind::Euclidean) {
    j["kind"] = "euclidean";
    j["dim"] = s.dim;
    return j;
  }
  j["kind"] = "polytope";
  json verts = json::array();
  for (const auto& v : s.vertices) verts.push_back(vec_to_json(v));
  j["vertices"] = std::move(verts);
  return j;
}

NormedSpace space_from_json(const json& j) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "euclidean") return euclidean_ball(j.at("dim").get<int>());
  if (kind == "polytope") {
    std::vector<QVec> verts;
    for (const auto& e : j.at("vertices")) verts.push_back(vec_from_json(e));
    return polytope_ball(std::move(verts));
  }
  throw Error("json: unknown ball kind \"" + kind + "\"");
}

}  // namespace conelab
