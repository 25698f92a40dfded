#include "report.hpp"

#include <cmath>
#include <fstream>

namespace gfix::cli {

Json num(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);
}

Json to_json(const Point& p) {
  if (p.indexed()) return p.index();
  Json a = Json::array();
  for (double c : p.coords()) a.push_back(c);
  return a;
}

Json to_json(const std::vector<Point>& pts) {
  Json a = Json::array();
  for (const auto& p : pts) a.push_back(to_json(p));
  return a;
}

Json to_json(const AxiomReport& r) {
  Json axioms = Json::array();
  for (const auto& s : r.axioms) {
    axioms.push_back({{"axiom", std::string(axiom_name(s.axiom))},
                      {"passed", s.passed},
                      {"worst", num(s.worst)},
                      {"checked", s.checked},
                      {"witness", to_json(s.witness)}});
  }
  return {{"passed", r.all_passed()},
          {"exhaustive", r.exhaustive},
          {"samples", r.sample_count},
          {"seed", r.seed},
          {"axioms", axioms}};
}

Json to_json(const SymmetryReport& r) {
  return {{"symmetric", r.symmetric},
          {"worst", num(r.worst)},
          {"checked", r.checked},
          {"witness", to_json(r.witness)}};
}

namespace {

Json tuple_json(const std::optional<Tuple>& t) {
  if (!t) return nullptr;
  return {{"x", to_json(t->x)},
          {"y", to_json(t->y)},
          {"z", to_json(t->z)},
          {"indices", {t->indices[0], t->indices[1], t->indices[2]}}};
}

}  // namespace

Json to_json(const ConditionReport& r) {
  const auto& v = r.witness_values;
  return {{"status", std::string(status_name(r.status))},
          {"min_lambda", num(r.min_lambda)},
          {"witness", tuple_json(r.witness)},
          {"witness_sides",
           {{"image", num(v.image)},
            {"lhs", num(v.lhs)},
            {"rhs", num(v.rhs)},
            {"log_lhs", num(v.log_lhs)},
            {"log_rhs", num(v.log_rhs)},
            {"log_space", v.log_space}}},
          {"tuples_tested", r.tuples_tested},
          {"vacuous_tuples", r.vacuous_tuples},
          {"coefficient_violation", tuple_json(r.coefficient_violation)},
          {"declared_lambda_ok", r.declared_lambda_ok},
          {"exhaustive", r.exhaustive},
          {"seed", r.seed}};
}

Json to_json(const FixedPointResult& r) {
  Json residuals = Json::array();
  for (double d : r.map_residuals) residuals.push_back(num(d));
  Json out = {{"success", r.success},
              {"u", to_json(r.u)},
              {"residual", num(r.residual)},
              {"map_residuals", residuals},
              {"iterations", r.iterations},
              {"bound", num(r.bound)},
              {"stop", std::string(stop_reason_name(r.trace.stop))},
              {"contractive", r.contractive},
              {"lambda_hat", num(r.trace.lambda_final)},
              {"certified_bound", r.trace.certified},
              {"warnings", r.warnings}};
  if (r.base_map_residual) {
    out["map_residual"] = num(*r.base_map_residual);
    out["iterate_fixed_but_not_map_fixed"] = r.iterate_fixed_but_not_map_fixed;
  }
  return out;
}

Json to_json(const SeriesCertificate& c) {
  return {{"verdict", std::string(series_verdict_name(c.kind, c.verdict))},
          {"lambda", num(c.lambda)},
          {"n_lambda", c.n_lambda},
          {"horizon", c.horizon},
          {"max_average", num(c.max_average)},
          {"note", c.note}};
}

Json to_json(const OracleReport& r) {
  Json fps = Json::array();
  for (const auto& set : r.fixed_points) fps.push_back(to_json(set));
  Json disc = Json::array();
  for (const auto& d : r.discrepancies) {
    disc.push_back({{"check", d.check}, {"detail", d.detail}, {"witness", to_json(d.witness)}});
  }
  return {{"agreement", r.agreement},
          {"fixed_points", fps},
          {"common_fixed_points", to_json(r.common_fixed_points)},
          {"certified", r.certified},
          {"exhaustive", to_json(r.exhaustive)},
          {"solver_point", r.solver_point ? to_json(*r.solver_point) : Json(nullptr)},
          {"discrepancies", disc}};
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path.string() + "'");
  out << text;
}

void write_report(const std::filesystem::path& path, const Json& report) {
  write_text(path, report.dump(2) + "\n");
}

}  // namespace gfix::cli
