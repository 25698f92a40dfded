#include "commands.hpp"

#include <functional>
#include <ostream>

#include "config.hpp"
#include "gfix/axioms.hpp"
#include "gfix/oracle.hpp"
#include "gfix/solver.hpp"
#include "report.hpp"

namespace gfix::cli {

namespace {

struct Loaded {
  ProblemConfig cfg;
  Tolerance tol;
};

Loaded load(const CommandOptions& opts) {
  Loaded l{load_config(opts.config), {}};
  l.tol = l.cfg.tolerance;
  apply_tolerance_env(l.tol);
  return l;
}

GSpace space_of(const Loaded& l) {
  try {
    return build_space(l.cfg.space, l.tol);
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(std::string("space: ") + e.what());
  }
}

std::size_t samples_of(const CommandOptions& opts, const Loaded& l) { return opts.samples.value_or(l.cfg.samples); }

Json header(const char* command, const CommandOptions& opts, const GSpace* space) {
  Json j = {{"command", command}, {"config", opts.config.generic_string()}, {"seed", opts.seed}};
  if (space) j["space"] = space->name() + " on " + space->domain().describe();
  return j;
}

template <typename T>
const T& require_section(const std::optional<T>& section, const char* name) {
  if (!section) throw ConfigError(std::string("config has no '") + name + "' section");
  return *section;
}

// Shared error policy: config and usage problems exit 2, everything else the command decides.
int guarded(const char* name, std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    err << name << ": config error: " << e.what() << '\n';
  } catch (const InputError& e) {
    err << name << ": input error: " << e.what() << '\n';
  } catch (const BudgetExceeded& e) {
    err << name << ": refused: " << e.what() << '\n';
  } catch (const SyntaxError& e) {
    err << name << ": syntax error: " << e.what() << '\n';
  } catch (const Error& e) {
    err << name << ": error: " << e.what() << '\n';
  } catch (const std::filesystem::filesystem_error& e) {
    err << name << ": " << e.what() << '\n';
  }
  return kExitUsage;
}

SamplingPlan plan_of(const CommandOptions& opts, const Loaded& l, bool exhaustive) {
  SamplingPlan p;
  p.samples = samples_of(opts, l);
  p.seed = opts.seed;
  p.exhaustive = exhaustive;
  if (l.cfg.condition) p.index_horizon = l.cfg.condition->index_horizon;
  return p;
}

bool within_oracle_budget(const GSpace& space, const Condition& cond, std::size_t horizon) {
  const auto& d = space.domain();
  return d.enumerable() && d.size() <= kOraclePointBudget &&
         exhaustive_tuple_count(space, cond, horizon) <= kOracleTupleBudget;
}

}  // namespace

int cmd_check_axioms(const CommandOptions& opts, std::ostream& log, std::ostream& err) {
  return guarded("check-axioms", err, [&] {
    const Loaded l = load(opts);
    const GSpace space = space_of(l);
    const std::size_t n = samples_of(opts, l);
    const AxiomReport axioms = check_axioms(space, n, opts.seed);
    const SymmetryReport sym = check_symmetry(space, n, opts.seed);
    Json rep = header("check-axioms", opts, &space);
    rep["passed"] = axioms.all_passed();
    rep["report"] = to_json(axioms);
    rep["symmetry"] = to_json(sym);
    write_report(opts.out / "check-axioms.json", rep);
    log << "check-axioms: " << (axioms.all_passed() ? "all axioms pass" : "axiom failure");
    for (const auto& s : axioms.axioms) {
      if (!s.passed) log << ' ' << axiom_name(s.axiom);
    }
    log << '\n';
    return axioms.all_passed() ? kExitOk : kExitNegative;
  });
}

int cmd_verify(const CommandOptions& opts, std::ostream& log, std::ostream& err) {
  return guarded("verify", err, [&] {
    const Loaded l = load(opts);
    const GSpace space = space_of(l);
    const auto& ccfg = require_section(l.cfg.condition, "condition");
    const MapSet maps = build_maps(require_section(l.cfg.maps, "maps"));
    const Condition cond = build_condition(ccfg);

    Json rep = header("verify", opts, &space);
    rep["variant"] = std::string(variant_name(cond.variant));
    rep["k"] = cond.k;
    rep["p"] = cond.p;
    rep["lambda"] = num(cond.lambda);

    ConditionReport verdict;
    if (opts.exhaustive) {
      if (!space.domain().enumerable()) throw InputError("--exhaustive needs a grid or tabulated space");
      verdict = exhaustive_condition_check(space, cond, maps, ccfg.index_horizon);
      rep["sampled"] = nullptr;
      rep["exhaustive"] = to_json(verdict);
    } else {
      const ConditionReport sampled = estimate_min_lambda(space, cond, maps, plan_of(opts, l, false));
      rep["sampled"] = to_json(sampled);
      verdict = sampled;
      if (within_oracle_budget(space, cond, ccfg.index_horizon)) {
        verdict = exhaustive_condition_check(space, cond, maps, ccfg.index_horizon);
        rep["exhaustive"] = to_json(verdict);
      } else {
        rep["exhaustive"] = nullptr;
      }
    }

    bool ok = verdict.status != ConditionStatus::Violated;
    if (cond.variant == Variant::FamilyCoeff) {
      const auto cert = detect_alpha_series(coefficient_sequence(ccfg), std::max<std::size_t>(10, ccfg.coefficient_horizon));
      rep["coefficient_series"] = to_json(cert);
      ok = ok && cert.verdict == SeriesVerdict::Holds;
    }
    rep["verdict"] = std::string(status_name(verdict.status));
    rep["min_lambda"] = num(verdict.min_lambda);
    rep["satisfied"] = ok;
    write_report(opts.out / "verify.json", rep);
    log << "verify: " << status_name(verdict.status) << ", min_lambda = " << format_double(verdict.min_lambda)
        << (verdict.exhaustive ? " (exhaustive)" : " (sampled)") << '\n';
    return ok ? kExitOk : kExitNegative;
  });
}

int cmd_solve(const CommandOptions& opts, std::ostream& log, std::ostream& err) {
  return guarded("solve", err, [&] {
    const Loaded l = load(opts);
    const GSpace space = space_of(l);
    const auto& mcfg = require_section(l.cfg.maps, "maps");
    const auto& scfg = require_section(l.cfg.solver, "solver");
    const MapSet maps = build_maps(mcfg);
    const Point x0 = build_x0(scfg);

    Json rep = header("solve", opts, &space);
    rep["x0"] = to_json(x0);
    std::optional<FixedPointResult> res;
    try {
      switch (mcfg.mode) {
        case MapsMode::Single:
          if (scfg.p > 1) {
            rep["mode"] = "iterate-power";
            rep["p"] = scfg.p;
            res = solve_iterate_power(space, maps.maps[0], scfg.p, x0, l.tol);
          } else {
            rep["mode"] = "picard";
            res = picard_solve(space, maps.maps[0], x0, l.tol);
          }
          break;
        case MapsMode::Triplet:
          rep["mode"] = "cyclic-triplet";
          res = cyclic_triplet_solve(space, maps.maps[0], maps.maps[1], maps.maps[2], x0, l.tol);
          break;
        case MapsMode::Family: {
          rep["mode"] = "family";
          FamilyOptions fo;
          fo.probes = scfg.probes;
          if (l.cfg.condition && l.cfg.condition->coefficients) {
            fo.coefficients = coefficient_sequence(*l.cfg.condition);
            fo.coefficient_horizon = l.cfg.condition->coefficient_horizon;
          }
          res = family_solve(space, *maps.family, x0, fo, l.tol);
          break;
        }
      }
    } catch (const DomainError& e) {
      rep["success"] = false;
      rep["error"] = "orbit-escapes-domain";
      rep["message"] = e.what();
      write_report(opts.out / "solve.json", rep);
      log << "solve: orbit escapes the domain\n";
      return kExitNegative;
    }
    rep["result"] = to_json(*res);
    rep["trace"] = "trace.csv";
    write_text(opts.out / "trace.csv", trace_to_csv(res->trace));
    write_report(opts.out / "solve.json", rep);
    log << "solve: " << (res->success ? "converged" : "failed") << " (" << stop_reason_name(res->trace.stop)
        << ") u = " << res->u.to_string() << ", residual = " << format_double(res->residual) << ", iterations = "
        << res->iterations << '\n';
    return res->success ? kExitOk : kExitNegative;
  });
}

int cmd_series(const CommandOptions& opts, std::ostream& log, std::ostream& err) {
  return guarded("series", err, [&] {
    const Loaded l = load(opts);
    const auto& scfg = require_section(l.cfg.series, "series");
    const Sequence seq = build_sequence(scfg.sequence);
    const bool finite = scfg.sequence.kind == "values";
    const std::size_t n_values = scfg.sequence.values.size();

    Json rep = header("series", opts, nullptr);
    bool ok = false;
    switch (scfg.mode) {
      case SeriesMode::Alpha: {
        rep["kind"] = "alpha-series";
        const auto cert = detect_alpha_series(seq, scfg.horizon.value_or(finite ? n_values : 10000));
        rep["certificate"] = to_json(cert);
        ok = cert.verdict == SeriesVerdict::Holds;
        log << "series: " << series_verdict_name(cert.kind, cert.verdict);
        if (ok) log << ", lambda = " << format_double(cert.lambda) << ", n(lambda) = " << cert.n_lambda;
        log << '\n';
        break;
      }
      case SeriesMode::Lambda: {
        rep["kind"] = "lambda-sequence";
        const auto cert = detect_lambda_sequence(seq, scfg.horizon.value_or(finite ? n_values + 1 : 10000));
        rep["certificate"] = to_json(cert);
        ok = cert.verdict == SeriesVerdict::Holds;
        log << "series: " << series_verdict_name(cert.kind, cert.verdict);
        if (ok) log << ", lambda = " << format_double(cert.lambda) << ", n(lambda) = " << cert.n_lambda;
        log << '\n';
        break;
      }
      case SeriesMode::Limsup: {
        rep["kind"] = "limsup";
        const auto r = check_limsup_condition(seq, scfg.horizon.value_or(finite ? n_values : 10000));
        rep["verdict"] = std::string(limsup_name(r.verdict));
        rep["tail_sup"] = num(r.tail_sup);
        ok = r.verdict == LimsupVerdict::Holds;
        log << "series: limsup condition " << limsup_name(r.verdict) << '\n';
        break;
      }
    }
    rep["accepted"] = ok;
    write_report(opts.out / "series.json", rep);
    return ok ? kExitOk : kExitNegative;
  });
}

int cmd_oracle(const CommandOptions& opts, std::ostream& log, std::ostream& err) {
  return guarded("oracle", err, [&] {
    const Loaded l = load(opts);
    const GSpace space = space_of(l);
    if (!space.domain().enumerable()) throw InputError("the oracle needs a grid or tabulated space");
    const auto& ccfg = require_section(l.cfg.condition, "condition");
    const MapSet maps = build_maps(require_section(l.cfg.maps, "maps"));
    const Condition cond = build_condition(ccfg);

    const ConditionReport sampled = estimate_min_lambda(space, cond, maps, plan_of(opts, l, false));
    std::optional<FixedPointResult> solved;
    Json rep = header("oracle", opts, &space);
    if (l.cfg.solver) {
      const Point x0 = build_x0(*l.cfg.solver);
      const auto& m = *l.cfg.maps;
      try {
        if (m.mode == MapsMode::Single) {
          solved = picard_solve(space, maps.maps[0], x0, l.tol);
        } else if (m.mode == MapsMode::Triplet) {
          solved = cyclic_triplet_solve(space, maps.maps[0], maps.maps[1], maps.maps[2], x0, l.tol);
        } else {
          FamilyOptions fo;
          fo.probes.clear();
          for (std::size_t i = 1; i <= ccfg.index_horizon; ++i) fo.probes.push_back(i);
          solved = family_solve(space, *maps.family, x0, fo, l.tol);
        }
      } catch (const DomainError& e) {
        rep["solver_error"] = e.what();
      }
    }
    const OracleReport oracle = cross_validate(space, cond, maps, solved, sampled, ccfg.index_horizon);
    rep["variant"] = std::string(variant_name(cond.variant));
    rep["sampled"] = to_json(sampled);
    rep["solver"] = solved ? to_json(*solved) : Json(nullptr);
    rep["oracle"] = to_json(oracle);
    write_report(opts.out / "oracle.json", rep);
    log << "oracle: " << (oracle.agreement ? "full agreement" : "disagreement") << ", exhaustive min_lambda = "
        << format_double(oracle.exhaustive.min_lambda) << ", " << oracle.common_fixed_points.size()
        << " common fixed point(s)\n";
    return oracle.agreement ? kExitOk : kExitNegative;
  });
}

}  // namespace gfix::cli
