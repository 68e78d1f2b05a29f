"""Command-line interface: one JSON document per invocation.

Exit codes: 0 success, 2 hypothesis failure (report still printed),
1 computation error, 64 usage error, 65 malformed input.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from importlib import resources
from typing import Any, Callable, Sequence

import jsonschema

from . import __version__
from .endoclass import (
    BaseField,
    EndoReport,
    HypothesisFailure,
    classify_cp,
    classify_quintic_jacobian,
    endo_field_containment,
)
from .exactmath import IntMatrix, UniPoly
from .numfield import (
    CycloSubfield,
    GaloisLabel,
    class_number_imag,
    cyclotomic_subfields,
    dedekind_2maximal,
    inert_at_2,
    quartic_galois,
    quintic_galois,
)
from . import quatorder as qo

EXIT_OK, EXIT_ERROR, EXIT_HYPOTHESIS, EXIT_USAGE, EXIT_SCHEMA = 0, 1, 2, 64, 65
RANDOMIZED = {"quintic-galois", "classify-quintic", "verify-paper"}
DEFAULT_BUDGET = 200


class UsageError(Exception):
    pass


class SchemaError(Exception):
    pass


def load_schema(name: str) -> dict:
    return json.loads(resources.files("endoatlas").joinpath("schemas", name).read_text())


# ---------------------------------------------------------------------------
# canonical JSON


def jsonable(x: Any) -> Any:
    """Convert library values to JSON with no floats: rationals become strings."""
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else str(x.numerator)
    if isinstance(x, float):
        raise TypeError("floating-point value in an exact report")
    if isinstance(x, UniPoly):
        return [str(c) for c in x.coeffs]
    if isinstance(x, IntMatrix):
        return x.tolist()
    if isinstance(x, qo.Quaternion):
        return {"coords": [str(c) for c in x.coords], "text": str(x)}
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = [jsonable(v) for v in x]
        return sorted(items) if isinstance(x, (set, frozenset)) else items
    raise TypeError(f"cannot serialize {type(x).__name__}")


def dumps(doc: dict) -> str:
    return json.dumps(jsonable(doc), sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def document(command: str, inputs: dict, result: Any, certificates: dict) -> dict:
    return {"command": command, "input": inputs, "result": result,
            "certificates": certificates, "version": __version__}


# ---------------------------------------------------------------------------
# parameter decoding


def _poly(coeffs) -> UniPoly:
    return UniPoly([int(c) for c in coeffs])


def _quat(alg: qo.QuatAlgebra, coords) -> qo.Quaternion:
    return alg.elem(*(Fraction(str(c)) for c in coords))


def _label_json(lab: GaloisLabel) -> tuple[str, dict]:
    return lab.label, {"mode": lab.mode, **lab.certificate}


def _order_json(O: qo.QuatOrder) -> dict:
    chk = qo.is_order(O)
    out = {"name": O.name, "basis": [str(e) for e in O.basis],
           "basis_matrix": O.basis_matrix, "is_order": chk.ok}
    if chk.ok:
        disc = qo.reduced_discriminant(O)
        out.update(gram=O.gram, reduced_discriminant=disc.value, hereditary=disc.hereditary)
    else:
        out.update(reason=chk.reason, witness=chk.witness)
    return out


def _action_json(act: qo.ConjugationAction) -> dict:
    return {"element": str(act.element), "matrix": act.matrix, "mod2": act.mod2,
            "identity_mod2": act.identity_mod2}


def _report_result(rep: EndoReport) -> tuple[Any, dict, int]:
    body = rep.to_json()
    code = EXIT_HYPOTHESIS if rep.status == "hypothesis-fails" else EXIT_OK
    return body["result"], body, code


# ---------------------------------------------------------------------------
# commands; each returns (result, certificates, exit code)


def cmd_quintic_galois(p: dict):
    lab = quintic_galois(_poly(p["coeffs"]), budget=p["budget"], seed=p["seed"])
    res, cert = _label_json(lab)
    return res, cert, EXIT_OK


def cmd_quartic_galois(p: dict):
    res, cert = _label_json(quartic_galois(_poly(p["coeffs"])))
    return res, cert, EXIT_OK


def cmd_dedekind2(p: dict):
    g = _poly(p["coeffs"])
    r = dedekind_2maximal(g)
    return r.maximal, {"shape": [list(s) for s in r.shape], "inert_at_2": inert_at_2(g)}, EXIT_OK


def cmd_quat_order(p: dict):
    alg = qo.QuatAlgebra(p["D"], p["m"])
    if p.get("order", "lemma") == "standard":
        orders = [qo.standard_order(alg)]
    else:
        orders = qo.lemma_order(p["D"], p["m"])
    data = [_order_json(O) for O in orders]
    res = [d.get("reduced_discriminant") for d in data]
    return res, {"orders": data, "ramified_primes": sorted(alg.ramified_primes)}, EXIT_OK


def _lemma_member(p: dict) -> qo.QuatOrder:
    orders = qo.lemma_order(p["D"], p["m"])
    idx = p.get("order_index", 0)
    if idx >= len(orders):
        raise ValueError(f"order_index {idx} out of range: {len(orders)} lemma order(s)")
    return orders[idx]


def cmd_quat_action(p: dict):
    O = _lemma_member(p)
    act = qo.conjugation_matrix(O, _quat(O.algebra, p["q"]))
    return act.identity_mod2, {"order": O.name, **_action_json(act)}, EXIT_OK


def cmd_twists(p: dict):
    O = _lemma_member(p)
    mu = _quat(O.algebra, p["mu"]) if "mu" in p else O.algebra.k
    tws = qo.twist_search(O, mu)
    rows = [{"chi": tw.chi, "norm": tw.norm, "nrd": tw.nrd} for tw in tws]
    return sorted({tw.norm for tw in tws}), {"order": O.name, "mu": mu, "twists": rows}, EXIT_OK


def cmd_qm_verdict(p: dict):
    v = qo.qm_endo_verdict(p["D"], p["m"])
    cert = {"case": v.case, "twist_norm": v.twist_norm, "note": v.note,
            "candidate_fields": [f"Q(sqrt({d}))" for d in v.candidates],
            "kernels": [{"order": k.order, "trivial_mod2": list(k.trivial_mod2),
                         "actions": {n: _action_json(a) for n, a in k.actions.items()}}
                        for k in v.kernels]}
    return v.result, cert, EXIT_OK


def cmd_class_number(p: dict):
    return class_number_imag(p["d"]), {"d": p["d"]}, EXIT_OK


def _cyclo_json(sf: CycloSubfield) -> dict:
    return {"degree": sf.degree, "subgroup_order": sf.subgroup_order,
            "period_poly": sf.period_poly, "verified_mod": list(sf.verified_mod)}


def cmd_cyclo_subfields(p: dict):
    subs = cyclotomic_subfields(p["p"])
    return [sf.degree for sf in subs], {"subfields": [_cyclo_json(sf) for sf in subs]}, EXIT_OK


def cmd_classify_cp(p: dict):
    try:
        rep = classify_cp(p["g"], p.get("d"))
    except HypothesisFailure as exc:
        rep = exc.report
    return _report_result(rep)


def cmd_classify_quintic(p: dict):
    if p.get("base_d") is not None:
        base = BaseField("quadratic", p["base_d"])
    elif p.get("real_quadratic"):
        base = BaseField("other", None, tuple(p["real_quadratic"]))
    else:
        base = BaseField()
    cand = _poly(p["candidate"]) if p.get("candidate") else None
    rep = classify_quintic_jacobian(_poly(p["coeffs"]), base, cand, budget=p["budget"], seed=p["seed"])
    return _report_result(rep)


def cmd_endo_field(p: dict):
    rep = endo_field_containment(_poly(p["coeffs"]), p.get("order", "equation"), p.get("galois"))
    return _report_result(rep)


def cmd_verify_paper(p: dict):
    from .verify import verify_paper

    items = verify_paper(seed=p["seed"], budget=p["budget"])
    failed = [it["name"] for it in items if not it["passed"]]
    result = {"passed": len(items) - len(failed), "failed": failed, "total": len(items)}
    return result, {"items": items}, EXIT_OK if not failed else EXIT_ERROR


COMMANDS: dict[str, Callable[[dict], tuple]] = {
    "quintic-galois": cmd_quintic_galois,
    "quartic-galois": cmd_quartic_galois,
    "quat-order": cmd_quat_order,
    "quat-action": cmd_quat_action,
    "twists": cmd_twists,
    "qm-verdict": cmd_qm_verdict,
    "class-number": cmd_class_number,
    "cyclo-subfields": cmd_cyclo_subfields,
    "dedekind2": cmd_dedekind2,
    "classify-cp": cmd_classify_cp,
    "classify-quintic": cmd_classify_quintic,
    "endo-field": cmd_endo_field,
    "verify-paper": cmd_verify_paper,
}


# ---------------------------------------------------------------------------
# argument parsing


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _json_arg(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"not valid JSON: {text!r} ({exc.msg})") from None


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False, allow_abbrev=False)
    common.add_argument("--seed", type=int, default=None, help="seed for randomized procedures")
    common.add_argument("--machine", action="store_true", help="require an explicit --seed")
    common.add_argument("--output", "-o", default=None, help="also write the JSON document here")

    ap = _Parser(prog="endoatlas", allow_abbrev=False,
                 description="Exact computations for endomorphism algebras and 2-torsion fields.")
    ap.add_argument("--version", action="version", version=__version__)
    ap.add_argument("--job", default=None, help="run a JSON job file instead of a subcommand")
    sub = ap.add_subparsers(dest="command", parser_class=_Parser)

    def add(name, help_):
        return sub.add_parser(name, help=help_, parents=[common], allow_abbrev=False)

    for name, help_ in (("quintic-galois", "Galois group of a quintic"),
                        ("quartic-galois", "Galois group of a quartic"),
                        ("dedekind2", "Dedekind criterion at 2 for Z[x]/(g)")):
        s = add(name, help_)
        s.add_argument("--coeffs", required=True, help="little-endian coefficient list, JSON")
        if name == "quintic-galois":
            s.add_argument("--budget", type=int, default=DEFAULT_BUDGET)

    for name, help_ in (("quat-order", "lemma orders of (D/m, m) with discriminants"),
                        ("quat-action", "conjugation matrix of q on a lemma order"),
                        ("twists", "twists of (O, mu) up to sign"),
                        ("qm-verdict", "endomorphism-field verdict for QM surfaces")):
        s = add(name, help_)
        s.add_argument("--D", type=int, required=True)
        s.add_argument("--m", type=int, required=True)
        if name == "quat-order":
            s.add_argument("--order", choices=["lemma", "standard"], default="lemma")
        if name in ("quat-action", "twists"):
            s.add_argument("--order-index", type=int, default=0)
        if name == "quat-action":
            s.add_argument("--q", required=True, help="coordinates in 1,i,j,k, JSON")
        if name == "twists":
            s.add_argument("--mu", default=None, help="coordinates in 1,i,j,k, JSON (default k)")

    s = add("class-number", "class number of Q(sqrt d), d < 0")
    s.add_argument("-d", type=int, required=True)
    s = add("cyclo-subfields", "Gaussian-period polynomials of the subfields of Q(zeta_p)")
    s.add_argument("-p", type=int, required=True)
    s = add("classify-cp", "possible End^0(A) when the 2-torsion field is cyclic of order 2g+1")
    s.add_argument("-g", type=int, required=True)
    s.add_argument("-d", type=int, default=None, help="imaginary quadratic base Q(sqrt d)")
    s = add("classify-quintic", "case analysis for the jacobian of y^2 = f(x), deg f = 5")
    s.add_argument("--coeffs", required=True)
    s.add_argument("--candidate", default=None, help="defining polynomial of End^0, JSON")
    s.add_argument("--base-d", type=int, default=None, help="base field Q(sqrt d)")
    s.add_argument("--real-quadratic", default=None,
                   help="JSON list of d with Q(sqrt d) inside an unspecified base field")
    s.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    s = add("endo-field", "check the hypotheses placing L inside K(A[2])")
    s.add_argument("--coeffs", required=True)
    s.add_argument("--order", choices=["equation", "maximal"], default="equation")
    s.add_argument("--galois", choices=["yes", "no"], default=None,
                   help="assert Galois-ness (used above degree 4)")
    s = add("verify-paper", "replay the worked examples")
    s.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    return ap


def _resolve_seed(ns, env) -> int | None:
    if ns.seed is not None:
        return ns.seed
    if ns.command in RANDOMIZED and ns.machine:
        raise UsageError(f"{ns.command}: --machine requires an explicit --seed")
    raw = env.get("ENDOATLAS_SEED")
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"ENDOATLAS_SEED must be an integer, got {raw!r}") from None


def job_from_args(ns, env) -> dict:
    """Translate parsed flags into a JobSpec dictionary."""
    c = ns.command
    params: dict[str, Any] = {}
    for key in ("coeffs", "q"):
        if getattr(ns, key, None) is not None:
            params[key] = _json_arg(getattr(ns, key))
    for key in ("D", "m", "d", "p", "g", "budget", "order_index", "base_d"):
        if getattr(ns, key, None) is not None:
            params[key] = getattr(ns, key)
    if getattr(ns, "order", None) is not None:
        params["order"] = ns.order
    if c == "twists" and ns.mu is not None:
        params["mu"] = _json_arg(ns.mu)
    if c == "classify-quintic":
        if ns.candidate is not None:
            params["candidate"] = _json_arg(ns.candidate)
        if ns.real_quadratic is not None:
            params["real_quadratic"] = _json_arg(ns.real_quadratic)
    if c == "endo-field" and ns.galois is not None:
        params["galois"] = ns.galois == "yes"
    if c in RANDOMIZED:
        params["seed"] = _resolve_seed(ns, env)
    return {"command": c, "params": params, "output": ns.output}


def validate_job(job: Any) -> dict:
    try:
        jsonschema.validate(job, load_schema("jobspec.json"))
    except jsonschema.ValidationError as exc:
        path = "/".join(str(x) for x in exc.absolute_path) or "<root>"
        raise SchemaError(f"{path}: {exc.message}") from None
    params = dict(job["params"])
    if job["command"] in RANDOMIZED:
        params.setdefault("seed", 0)
        params.setdefault("budget", DEFAULT_BUDGET)
    return {**job, "params": params}


def execute(job: dict) -> tuple[dict, int]:
    command, params = job["command"], job["params"]
    try:
        result, cert, code = COMMANDS[command](params)
    except (ValueError, ArithmeticError) as exc:
        cert = {"error": {"type": type(exc).__name__, "message": str(exc)}}
        return document(command, params, None, cert), EXIT_ERROR
    return document(command, params, result, cert), code


def _emit(text: str, output: str | None, stdout) -> None:
    stdout.write(text)
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None, env=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    env = os.environ if env is None else env
    try:
        ns = build_parser().parse_args(argv)
        if ns.job is not None:
            if ns.command is not None:
                raise UsageError("endoatlas: --job cannot be combined with a subcommand")
            try:
                with open(ns.job, encoding="utf-8") as fh:
                    job = json.load(fh)
            except OSError as exc:
                raise UsageError(f"endoatlas: cannot read job file: {exc}") from None
            except json.JSONDecodeError as exc:
                raise SchemaError(f"job file is not valid JSON: {exc.msg}") from None
        elif ns.command is None:
            raise UsageError("endoatlas: a subcommand or --job is required")
        else:
            job = job_from_args(ns, env)
        job = validate_job(job)
    except UsageError as exc:
        print(str(exc), file=stderr)
        return EXIT_USAGE
    except SchemaError as exc:
        print(f"endoatlas: malformed input: {exc}", file=stderr)
        return EXIT_SCHEMA

    doc, code = execute(job)
    text = dumps(doc)
    jsonschema.validate(json.loads(text), load_schema("report.json"))
    _emit(text, job.get("output"), stdout)
    if code == EXIT_ERROR and doc["result"] is None:
        print(f"endoatlas: {doc['certificates']['error']['message']}", file=stderr)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
