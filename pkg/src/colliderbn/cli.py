"""Command-line front end: validate models, run queries, scenarios and bias
audits, fit CPTs from CSV records, and launch the API server."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import IO, Sequence

from .causal import Intervention, audit_bias, interventional_query
from .core import Cpt, Network, NetworkError, validate_network
from .inference import prior_marginals, query_posterior
from .model_io import (ParseError, cpt_from_counts, parse_scenario,
                       read_records, serialize_model)
from .model_io import parse_model as _parse_model
from .render import monitor, percent

USAGE_ERROR = 2
DOMAIN_ERROR = 1


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse that raises instead of exiting, so run_cli owns the streams."""

    def error(self, message):
        raise UsageError(message)


def _json_dumps(doc) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def _parse_assignments(pairs: Sequence[str], flag: str) -> dict[str, str]:
    out: dict[str, str] = {}
    for token in pairs:
        if "=" not in token:
            raise UsageError(f"{flag} expects VAR=STATE, got {token!r}")
        var, state = token.split("=", 1)
        if not var or not state:
            raise UsageError(f"{flag} expects VAR=STATE, got {token!r}")
        if var in out:
            raise UsageError(f"duplicate {flag} for variable {var!r}")
        out[var] = state
    return out


def _load_model(path: str) -> Network:
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise NetworkError("IO_ERROR", f"cannot read {path}: {exc.strerror}") from None
    return _parse_model(data)


def _apply_interventions(network: Network, interventions: dict[str, str]):
    from .causal import apply_do

    for var, state in interventions.items():
        network = apply_do(network, Intervention(var, state))
    return network


def _print_distributions(network: Network, posteriors: dict[str, dict[str, float]],
                         fmt: str, out: IO[str], extra: dict | None = None) -> None:
    if fmt == "json":
        doc = {"model": network.name}
        if extra:
            doc.update(extra)
        doc["posteriors"] = posteriors
        out.write(_json_dumps(doc))
        return
    for var_id, dist in posteriors.items():
        label = network.variable(var_id).label
        if fmt == "bars":
            out.write(monitor(var_id, dist).text(label=f"{label} ({var_id})") + "\n")
        else:
            out.write(f"{label} ({var_id})\n")
            width = max(len(s) for s in dist)
            for state, p in dist.items():
                out.write(f"  {state:<{width}}  {percent(p):>6}\n")


def cmd_validate(args, out: IO[str], err: IO[str]) -> int:
    network = _load_model(args.model)
    report = validate_network(network)
    if report.ok:
        out.write(f"{network.name}: ok\n")
        return 0
    for v in report.violations:
        err.write(f"ERROR {v.code} at {v.location}: {v.message}\n")
    return DOMAIN_ERROR


def cmd_marginals(args, out: IO[str], err: IO[str]) -> int:
    network = _load_model(args.model)
    evidence = _parse_assignments(args.evidence, "--evidence")
    if evidence:
        posteriors = {v.id: query_posterior(network, evidence, v.id).distribution
                      for v in network.variables if v.id not in evidence}
    else:
        posteriors = prior_marginals(network)
    _print_distributions(network, posteriors, args.format, out,
                         extra={"evidence": evidence})
    return 0


def cmd_query(args, out: IO[str], err: IO[str]) -> int:
    network = _load_model(args.model)
    evidence = _parse_assignments(args.evidence, "--evidence")
    interventions = _parse_assignments(args.do, "--do")
    for var in interventions:
        if var in evidence:
            raise UsageError(f"variable {var!r} appears in both --evidence and --do")
    mutilated = _apply_interventions(network, interventions)
    result = query_posterior(mutilated, evidence, args.target)

    if args.format == "json":
        doc = {
            "model": network.name,
            "target": args.target,
            "evidence": evidence,
            "do": interventions,
            "posterior": result.distribution,
            "evidence_probability": result.evidence_probability,
        }
        if args.state is not None:
            doc["state"] = args.state
            doc["probability"] = result.distribution[args.state]
        out.write(_json_dumps(doc))
        return 0

    if args.state is not None:
        out.write(f"P({args.target}={args.state}) = {percent(result.distribution[args.state])}\n")
        return 0
    _print_distributions(network, {args.target: result.distribution}, args.format, out)
    return 0


def _path_doc(report) -> dict:
    return {
        "nodes": list(report.nodes),
        "directions": list(report.directions),
        "roles": list(report.node_roles),
        "open": report.open_given,
    }


def cmd_audit(args, out: IO[str], err: IO[str]) -> int:
    network = _load_model(args.model)
    selection = _parse_assignments(args.selection, "--selection")

    exposure_var = network.variable(args.exposure)
    outcome_var = network.variable(args.outcome)
    if args.exposure_states:
        parts = args.exposure_states.split(",")
        if len(parts) != 2:
            raise UsageError("--exposure-states expects S1,S0")
        e1, e0 = parts
    elif exposure_var.states == ("true", "false"):
        e1, e0 = "true", "false"
    else:
        raise UsageError(f"variable {args.exposure!r} is not Boolean; "
                         "pass --exposure-states S1,S0")
    if args.outcome_state:
        outcome_state = args.outcome_state
    elif outcome_var.states == ("true", "false"):
        outcome_state = "true"
    else:
        raise UsageError(f"variable {args.outcome!r} is not Boolean; pass --outcome-state")

    report = audit_bias(network, args.exposure, args.outcome, outcome_state,
                        (e1, e0), selection)

    if args.format == "json":
        doc = {
            "model": network.name,
            "exposure": report.exposure,
            "outcome": report.outcome,
            "exposure_states": list(report.exposure_states),
            "outcome_state": report.outcome_state,
            "selection": report.selection,
            "selected_contrast": report.selected_contrast,
            "population_contrast": report.population_contrast,
            "interventional_contrast": report.interventional_contrast,
            "paths_unconditioned": [_path_doc(p) for p in report.paths_unconditioned],
            "paths_selected": [_path_doc(p) for p in report.paths_selected],
            "reversal": report.reversal,
        }
        out.write(_json_dumps(doc))
        return 0

    out.write(f"Bias audit: {report.exposure} -> {report.outcome} "
              f"(outcome state {report.outcome_state!r})\n")
    sel = ", ".join(f"{k}={v}" for k, v in report.selection.items()) or "(none)"
    out.write(f"  selection: {sel}\n")
    out.write(f"  selected contrast       {report.selected_contrast:+.6f}\n")
    out.write(f"  population contrast     {report.population_contrast:+.6f}\n")
    out.write(f"  interventional contrast {report.interventional_contrast:+.6f}\n")
    out.write(f"  reversal: {'YES' if report.reversal else 'no'}\n")
    for heading, paths in (("paths (unconditioned)", report.paths_unconditioned),
                           ("paths (under selection)", report.paths_selected)):
        out.write(f"  {heading}:\n")
        for p in paths:
            trail = " ".join(p.tokens())
            roles = ",".join(p.node_roles) or "-"
            state = "open" if p.open_given else "blocked"
            out.write(f"    {trail}  [{roles}] {state}\n")
    return 0


def cmd_scenario(args, out: IO[str], err: IO[str]) -> int:
    try:
        data = Path(args.scenario).read_bytes()
    except OSError as exc:
        raise NetworkError("IO_ERROR", f"cannot read {args.scenario}: {exc.strerror}") from None
    scenario = parse_scenario(data)
    model_path = Path(scenario.model)
    if not model_path.is_absolute():
        model_path = Path(args.scenario).parent / model_path
    network = _load_model(str(model_path))

    mutilated = network
    for iv in scenario.interventions:
        from .causal import apply_do
        mutilated = apply_do(mutilated, iv)

    queries = scenario.queries or [(v.id, None) for v in network.variables
                                   if v.id not in scenario.evidence
                                   and all(iv.variable != v.id for iv in scenario.interventions)]
    posteriors = {}
    for target, _state in queries:
        posteriors[target] = query_posterior(mutilated, scenario.evidence, target).distribution
    extra = {
        "label": scenario.label,
        "evidence": dict(scenario.evidence),
        "do": {iv.variable: iv.state for iv in scenario.interventions},
    }
    _print_distributions(network, posteriors, args.format, out, extra=extra)
    return 0


def cmd_fit(args, out: IO[str], err: IO[str]) -> int:
    try:
        skeleton_doc = json.loads(Path(args.skeleton).read_text("utf-8"))
        csv_text = Path(args.data).read_text("utf-8")
    except OSError as exc:
        raise NetworkError("IO_ERROR", str(exc)) from None
    except json.JSONDecodeError as exc:
        raise ParseError("SYNTAX", exc.msg, exc.lineno, exc.colno) from None

    records = read_records(csv_text)

    # Fill in CPTs that the skeleton leaves without rows; keep supplied rows.
    fitted = dict(skeleton_doc)
    cpts = []
    from .core import DiscreteVariable

    variables = [DiscreteVariable(v["id"], v.get("label", v["id"]), tuple(v["states"]))
                 for v in skeleton_doc.get("variables", [])]
    shell = Network(name=skeleton_doc.get("name", ""), variables=variables,
                    edges=[tuple(e) for e in skeleton_doc.get("edges", [])], cpts=[])
    for entry in skeleton_doc.get("cpts", []):
        if entry.get("rows"):
            cpts.append(entry)
            continue
        cpt = cpt_from_counts(shell, records, entry["child"],
                              entry.get("parents", []), smoothing=args.smoothing)
        cpts.append({"child": cpt.child, "parents": list(cpt.parents),
                     "rows": [list(r) for r in cpt.rows]})
    fitted["cpts"] = cpts
    fitted.setdefault("format_version", 1)

    # Round-trip through the parser so only a valid model is ever written.
    network = _parse_model(json.dumps(fitted).encode("utf-8"))
    Path(args.output).write_bytes(serialize_model(network))
    out.write(f"wrote {args.output}\n")
    return 0


def cmd_serve(args, out: IO[str], err: IO[str]) -> int:
    from .server import serve

    serve(port=args.port, models_dir=args.models_dir)
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="colliderbn",
                     description="Exact inference and bias auditing for causal"
                                 " Bayesian networks")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a model file")
    p.add_argument("model")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("marginals", help="marginal distribution of every variable")
    p.add_argument("model")
    p.add_argument("--evidence", action="append", default=[], metavar="VAR=STATE")
    p.add_argument("--format", choices=["table", "bars", "json"], default="table")
    p.set_defaults(func=cmd_marginals)

    p = sub.add_parser("query", help="posterior of one target variable")
    p.add_argument("model")
    p.add_argument("--target", required=True)
    p.add_argument("--state")
    p.add_argument("--evidence", action="append", default=[], metavar="VAR=STATE")
    p.add_argument("--do", action="append", default=[], metavar="VAR=STATE")
    p.add_argument("--format", choices=["table", "bars", "json"], default="table")
    p.set_defaults(func=cmd_query)

    p = sub.add_parser("audit", help="selection-bias audit of an exposure/outcome pair")
    p.add_argument("model")
    p.add_argument("--exposure", required=True)
    p.add_argument("--outcome", required=True)
    p.add_argument("--outcome-state", dest="outcome_state")
    p.add_argument("--exposure-states", dest="exposure_states", metavar="S1,S0")
    p.add_argument("--selection", action="append", default=[], metavar="VAR=STATE")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("scenario", help="run a scenario file")
    p.add_argument("scenario")
    p.add_argument("--format", choices=["table", "bars", "json"], default="table")
    p.set_defaults(func=cmd_scenario)

    p = sub.add_parser("fit", help="estimate missing CPTs from CSV records")
    p.add_argument("--data", required=True)
    p.add_argument("--skeleton", required=True)
    p.add_argument("--smoothing", type=float, default=0.0)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("serve", help="start the HTTP API server")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--models-dir", dest="models_dir", default="models")
    p.set_defaults(func=cmd_serve)

    return parser


def run_cli(argv: Sequence[str], out: IO[str] | None = None,
            err: IO[str] | None = None) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
        return args.func(args, out, err)
    except UsageError as exc:
        err.write(f"usage error: {exc}\n")
        return USAGE_ERROR
    except ParseError as exc:
        err.write(f"ERROR {exc.code} line {exc.line} col {exc.column}: {exc.message}\n")
        return DOMAIN_ERROR
    except NetworkError as exc:
        err.write(f"ERROR {exc.code}: {exc.message}\n")
        return DOMAIN_ERROR


def main() -> None:
    sys.exit(run_cli(sys.argv[1:]))


if __name__ == "__main__":
    main()
