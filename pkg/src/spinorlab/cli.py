"""Command-line surface: verification runs and classification reports.

Subcommands: ``report``, ``verify-all``, ``algebra``, ``transform``,
``position``, ``content``.  JSON output is byte-deterministic for a fixed
configuration; every float is serialized with 17 significant digits.

Exit codes: 0 pass, 1 check failure, 2 usage error, 3 numerical indeterminacy.
"""

import argparse
import sys

import numpy as np

from . import equations as eqs
from . import poincare, position
from .suite import RunConfig, run_verify_all
from .symmetry import IndeterminateVerdict, classify_equation


# -- deterministic JSON ------------------------------------------------------

def _json_scalar(x):
    if isinstance(x, bool):
        return "true" if x else "false"
    if x is None:
        return "null"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return format(float(x), ".17g")
    if isinstance(x, str):
        return '"' + x.replace("\\", "\\\\").replace('"', '\\"') + '"'
    raise TypeError(f"cannot serialize {type(x)}")


def dumps(obj) -> str:
    if isinstance(obj, dict):
        items = (f"{_json_scalar(str(k))}: {dumps(v)}"
                 for k, v in sorted(obj.items()))
        return "{" + ", ".join(items) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(dumps(v) for v in obj) + "]"
    return _json_scalar(obj)


def _matrix_json(m):
    if m is None:
        return None
    return [[float(z.real), float(z.imag)] for z in np.asarray(m).ravel()]


# -- report assembly ----------------------------------------------------------

def _report_doc(report):
    elements = []
    for v in report.verdicts:
        elements.append({
            "label": v.element.label,
            "invariant": v.invariant,
            "residual": v.residual,
            "matrix": _matrix_json(v.intertwiner.unitary_rep
                                   if v.intertwiner else None),
        })
    return {"equation": report.equation, "elements": elements,
            "agreement": report.agreement}


def _report_markdown(report):
    lines = [f"# Classification: {report.equation}", "",
             "| element | invariant | residual |",
             "|---|---|---|"]
    for v in report.verdicts:
        lines.append(f"| {v.element.label} | {str(v.invariant).lower()} "
                     f"| {v.residual:.3e} |")
    lines += ["", f"claims checked: {report.claims_checked}",
              f"agreement: {str(report.agreement).lower()}",
              f"coherence: {str(report.coherence_ok).lower()}"]
    return "\n".join(lines) + "\n"


def _checks_doc(checks):
    return {"pass": all(c.passed for c in checks),
            "checks": [{"name": c.name, "residual": c.residual,
                        "tol": c.tol, "pass": c.passed} for c in checks]}


def _checks_markdown(checks, title):
    lines = [f"# {title}", "", "| check | residual | tol | pass |",
             "|---|---|---|---|"]
    for c in checks:
        lines.append(f"| {c.name} | {c.residual:.3e} | {c.tol:.0e} "
                     f"| {str(c.passed).lower()} |")
    lines += ["", f"overall: {'pass' if all(c.passed for c in checks) else 'FAIL'}"]
    return "\n".join(lines) + "\n"


def _emit(args, doc, markdown):
    print(dumps(doc) if args.format == "json" else markdown, end="\n")


# -- subcommands ---------------------------------------------------------------

def _cfg(args) -> RunConfig:
    return RunConfig(seed=args.seed, samples=args.samples,
                     holdout=args.holdout, tol=args.tol, mass=args.mass,
                     kappa=args.kappa,
                     corrupt_reduction=getattr(args, "corrupt_reduction", False))


def _equation(args, name):
    return eqs.catalog_equation(name, m=args.mass, kappa=args.kappa,
                                corrupt_reduction=getattr(args, "corrupt_reduction",
                                                     False))


def cmd_report(args) -> int:
    cfg = _cfg(args)
    eq = _equation(args, args.equation)
    report = classify_equation(eq, seed=cfg.seed, n_fit=cfg.samples,
                               n_holdout=cfg.holdout)
    doc = _report_doc(report)
    if args.element is not None:
        want = report.verdict_for(args.element).element.label
        doc["elements"] = [e for e in doc["elements"] if e["label"] == want]
    _emit(args, doc, _report_markdown(report))
    return 0 if report.agreement else 1


def cmd_verify_all(args) -> int:
    cfg = _cfg(args)
    checks = run_verify_all(cfg)
    _emit(args, _checks_doc(checks), _checks_markdown(checks, "verify-all"))
    if not all(c.passed for c in checks):
        failing = [c.name for c in checks if not c.passed]
        print(f"failing checks: {', '.join(failing)}", file=sys.stderr)
        return 1
    return 0


def cmd_algebra(args) -> int:
    cfg = _cfg(args)
    gs = poincare.generator_set(args.generators, m=cfg.mass)
    from .opcalc import sample_momenta
    samples = sample_momenta(gs.d, max(cfg.samples // 2, 4), cfg.seed)
    resid, second = poincare.algebra_residual(gs, samples)
    doc = {"generators": args.generators, "closure_residual": resid,
           "second_order_residual": second,
           "pass": resid <= 1e-8 and second <= 1e-10}
    md = (f"# Algebra closure: {args.generators}\n\n"
          f"closure residual: {resid:.3e}\n"
          f"second-order residual: {second:.3e}\n")
    _emit(args, doc, md)
    return 0 if doc["pass"] else 1


def cmd_transform(args) -> int:
    cfg = _cfg(args)
    from .opcalc import sample_momenta
    samples = sample_momenta(3, cfg.samples, cfg.seed)
    if args.name == "tU2*tU1":
        u = eqs.composed_tu(m=cfg.mass)
    else:
        u = eqs.catalog_unitary(args.name, m=cfg.mass)
    unit = eqs.unitarity_residual(u, samples)
    doc = {"name": args.name, "unitarity_residual": unit}
    if u.source is not None and u.target is not None:
        doc["transform_residual"] = eqs.verify_transform(
            u, samples, m=cfg.mass, kappa=cfg.kappa,
            corrupt_reduction=cfg.corrupt_reduction)
    if u.exponential is not None:
        doc["exp_vs_closed"] = eqs.exp_closed_residual(u, samples)
    ok = all(v <= cfg.tol * 10 for k, v in doc.items()
             if isinstance(v, float))
    doc["pass"] = ok
    md = f"# Transformation {args.name}\n\n" + "\n".join(
        f"{k}: {v:.3e}" for k, v in doc.items() if isinstance(v, float)) + "\n"
    _emit(args, doc, md)
    return 0 if ok else 1


def cmd_position(args) -> int:
    cfg = _cfg(args)
    from .opcalc import sample_momenta
    samples = sample_momenta(3, cfg.samples, cfg.seed)
    rep = position.verify_position(args.name, samples)
    ok = (rep["closed_vs_conjugation"] <= cfg.tol
          and rep["canonical_commutator"] <= 1e-10)
    doc = dict(rep)
    doc["name"] = args.name
    doc["pass"] = ok
    md = f"# Position operator {args.name}\n\n" + "\n".join(
        f"{k}: {v:.3e}" for k, v in rep.items()) + "\n"
    _emit(args, doc, md)
    return 0 if ok else 1


_CONTENT_SETS = {"dirac_massless": "psi", "chi_4c": "chi",
                 "phi_diag": "phi", "weyl_plus": "weyl",
                 "chi_plus": "chi2", "chi_minus": "chi2"}


def cmd_content(args) -> int:
    cfg = _cfg(args)
    from .opcalc import sample_momenta
    eq = _equation(args, args.equation)
    gs = poincare.generator_set(_CONTENT_SETS[args.equation])
    samples = sample_momenta(3, cfg.samples, cfg.seed)
    branches = poincare.irrep_content_by_branch(eq, gs, samples)
    doc = {"equation": args.equation,
           "content_by_p3_branch": {
               k: [[s, h] for s, h in v] for k, v in sorted(branches.items())}}
    md_lines = [f"# Irrep content: {args.equation}", ""]
    for k, v in sorted(branches.items()):
        md_lines.append(f"p3 {k}: " + ", ".join(
            f"(eps={s:+d}, s={h:+.1f})" for s, h in v))
    _emit(args, doc, "\n".join(md_lines) + "\n")
    return 0


def _add_common(p):
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--samples", type=int, default=12)
    p.add_argument("--holdout", type=int, default=4)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--format", choices=("json", "md"), default="json")
    p.add_argument("--mass", type=float, default=1.0)
    p.add_argument("--kappa", type=float, default=1.0)
    p.add_argument("--corrupt-reduction", dest="corrupt_reduction", action="store_true",
                   help="negative control: rebuild the two-component "
                        "reduction with the inconsistent sigma_2 p2 term")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="spinorlab", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("report", help="classify one equation over the full "
                                      "discrete group")
    p.add_argument("--equation", required=True)
    p.add_argument("--element", default=None,
                   help="restrict JSON output to one element, e.g. P3*C")
    _add_common(p)
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("verify-all", help="run every verification check")
    _add_common(p)
    p.set_defaults(func=cmd_verify_all)

    p = sub.add_parser("algebra", help="generator-algebra closure residuals")
    p.add_argument("--generators", required=True,
                   choices=poincare.GENERATOR_NAMES)
    _add_common(p)
    p.set_defaults(func=cmd_algebra)

    p = sub.add_parser("transform", help="unitarity/transform residuals")
    p.add_argument("--name", required=True)
    _add_common(p)
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("position", help="position-operator residuals")
    p.add_argument("--name", required=True, choices=position.POSITION_NAMES)
    _add_common(p)
    p.set_defaults(func=cmd_position)

    p = sub.add_parser("content", help="energy-sign/helicity irrep content")
    p.add_argument("--equation", required=True,
                   choices=sorted(_CONTENT_SETS))
    _add_common(p)
    p.set_defaults(func=cmd_content)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except IndeterminateVerdict as exc:
        print(f"indeterminate: {exc}", file=sys.stderr)
        return 3
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
