#include "clab/json_io.hpp"

namespace clab {

json field_to_json(FieldPtr f) {
  if (!f->base()) {
    json j;
    j["p"] = f->p();
    j["m"] = f->degree();
    j["modulus"] = f->modulus_fp();
    return j;
  }
  json j;
  j["base"] = field_to_json(f->base());
  j["degree"] = f->ext_degree();
  j["modulus_codes"] = f->modulus();
  return j;
}

FieldPtr field_from_json(const json& j) {
  if (j.contains("base")) {
    FieldPtr base = field_from_json(j.at("base"));
    FieldPtr e = extension_field(base, j.at("degree").get<int>());
    if (j.contains("modulus_codes") &&
        j.at("modulus_codes").get<std::vector<uint32_t>>() != e->modulus())
      throw std::invalid_argument("field_from_json: tower modulus mismatch");
    return e;
  }
  long p = j.at("p").get<long>();
  int m = j.at("m").get<int>();
  FieldPtr f = make_field(p, m);
  if (j.contains("modulus") && j.at("modulus").get<std::vector<long>>() != f->modulus_fp())
    throw std::invalid_argument("field_from_json: modulus mismatch (non-canonical field)");
  return f;
}

json fq_to_json(const Fq& a) { return json(a.coeffs_fp()); }

Fq fq_from_json(const json& j, FieldPtr f) {
  std::vector<long> digits = j.get<std::vector<long>>();
  if (int(digits.size()) != f->degree())
    throw std::invalid_argument("fq_from_json: wrong coefficient count");
  uint64_t v = 0;
  for (int i = f->degree() - 1; i >= 0; --i) {
    long d = digits[size_t(i)];
    if (d < 0 || d >= f->p()) throw std::invalid_argument("fq_from_json: residue out of range");
    v = v * uint64_t(f->p()) + uint64_t(d);
  }
  return Fq(f, uint32_t(v));
}

json mat_to_json(const MatQ& m) {
  FieldPtr f = mat_field(m);
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(fq_to_json(m(i, j).in(f)));
    rows.push_back(row);
  }
  json out;
  out["n"] = m.rows();
  out["field"] = field_to_json(f);
  out["rows"] = rows;
  return out;
}

MatQ mat_from_json(const json& j) { return mat_from_json(j, field_from_json(j.at("field"))); }

MatQ mat_from_json(const json& j, FieldPtr f) {
  const json& rows = j.at("rows");
  int n = int(rows.size());
  int cols = n > 0 ? int(rows.at(0).size()) : 0;
  MatQ m(n, cols);
  for (int i = 0; i < n; ++i)
    for (int c = 0; c < cols; ++c) m(i, c) = fq_from_json(rows.at(size_t(i)).at(size_t(c)), f);
  return m;
}

json poly_to_json(const PolyQ& f) {
  json coeffs = json::array();
  for (int i = 0; i <= f.degree(); ++i) coeffs.push_back(fq_to_json(f.coeff(i)));
  json out;
  out["coeffs"] = coeffs;
  out["field"] = field_to_json(f.field);
  return out;
}

json ctx_to_json(const GroupCtx& ctx) {
  json j;
  j["family"] = family_name(ctx.family);
  j["nprime"] = ctx.nprime;
  j["field"] = field_to_json(ctx.field);
  j["projective"] = ctx.projective;
  j["derived"] = ctx.derived_only;
  return j;
}

GroupCtx ctx_from_json(const json& j) {
  std::string fam = j.at("family").get<std::string>();
  Family family;
  if (fam == "gl")
    family = Family::GL;
  else if (fam == "sl")
    family = Family::SL;
  else if (fam == "sp")
    family = Family::Sp;
  else if (fam == "so-odd")
    family = Family::SOodd;
  else if (fam == "so-even")
    family = Family::SOeven;
  else
    throw std::invalid_argument("ctx_from_json: unknown family " + fam);
  GroupCtx ctx;
  ctx.family = family;
  ctx.nprime = j.at("nprime").get<int>();
  ctx.field = field_from_json(j.at("field"));
  ctx.projective = j.value("projective", false);
  ctx.derived_only = j.value("derived", false);
  return ctx;
}

json rack_to_json(const FiniteRack& r) {
  json j;
  j["size"] = r.size;
  j["op"] = r.op;
  return j;
}

json certificate_to_json(const Certificate& c) {
  json j;
  j["kind"] = c.kind;
  j["shape"] = c.shape;
  j["property"] = c.property;
  j["group"] = ctx_to_json(c.ctx);
  json w = json::object();
  for (const auto& [name, m] : c.witness) w[name] = mat_to_json(m);
  j["witness"] = w;
  json ch = json::object();
  for (const auto& [name, v] : c.checks) ch[name] = v;
  j["checks"] = ch;
  j["search_bound"] = c.search_bound;
  if (!c.recipe.empty()) j["recipe"] = c.recipe;
  if (!c.applicability.empty()) j["applicability"] = c.applicability;
  if (!c.aux.empty()) {
    json a = json::object();
    for (const auto& [name, v] : c.aux) a[name] = v;
    j["aux"] = a;
  }
  return j;
}

Certificate certificate_from_json(const json& j) {
  Certificate c;
  c.kind = j.at("kind").get<std::string>();
  c.shape = j.value("shape", "");
  c.property = j.value("property", "");
  c.ctx = ctx_from_json(j.at("group"));
  for (auto it = j.at("witness").begin(); it != j.at("witness").end(); ++it)
    c.witness.emplace_back(it.key(), mat_from_json(it.value(), c.ctx.field));
  for (auto it = j.at("checks").begin(); it != j.at("checks").end(); ++it)
    c.checks.emplace_back(it.key(), it.value().get<bool>());
  c.search_bound = j.value("search_bound", "");
  c.recipe = j.value("recipe", "");
  c.applicability = j.value("applicability", "");
  if (j.contains("aux"))
    for (auto it = j.at("aux").begin(); it != j.at("aux").end(); ++it)
      c.aux.emplace_back(it.key(), it.value().get<long long>());
  return c;
}

}  // namespace clab
