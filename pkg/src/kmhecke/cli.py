"""Batch command line front end.

Four subcommands::

    kmhecke datum-check    --preset sl3
    kmhecke regular-report --preset affine-sl2 --L 6 --dot g.dot --json r.json
    kmhecke uc-report      --preset case7 --L 5 --json r.json
    kmhecke accept         [--only NAME] [--seed N] [--json r.json]

Root data come either from a bundled preset (``--preset``) or from a
JSON file (``--datum``) with the same schema; ``--tau`` and ``--sigma``
override the bundled character and parameters.  All randomness flows
from the single ``--seed``.  Exit codes: 0 pass, 1 mathematical
failure, 2 usage.
"""

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import acceptance
from . import linalg
from . import presets
from . import regular
from . import rgroup
from . import rootdata
from .laurent import Character


class UsageError(Exception):
    """Bad flags or config values; exits with code 2."""


@dataclass(frozen=True)
class Config:
    preset: str = None
    datum_path: str = None
    tau: tuple = None
    sigma: str = None
    L: int = 4
    seed: int = 0
    dot: str = None
    json_path: str = None
    only: str = None

    def __post_init__(self):
        if self.L < 1:
            raise UsageError(f"--L must be >= 1, got {self.L}")


def _load_doc(config):
    if (config.preset is None) == (config.datum_path is None):
        raise UsageError("give exactly one of --preset / --datum")
    if config.preset is not None:
        doc = presets.load_preset(config.preset)
    else:
        try:
            doc = json.loads(Path(config.datum_path).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read datum file: {exc}")
    if config.sigma is not None:
        doc["sigma"] = {k: config.sigma for k in doc["sigma"]}
        doc.pop("sigmaPrime", None)
    if config.tau is not None:
        doc["tau"] = list(config.tau)
    return doc


def _resolve(config):
    doc = _load_doc(config)
    datum = rootdata.RootDatum.from_json(doc)
    if "tau" not in doc:
        raise UsageError("no character: the datum has no tau and no "
                         "--tau was given")
    tau = Character(doc["tau"])
    if len(tau.values) != datum.rank_y:
        raise UsageError(f"tau has {len(tau.values)} values, "
                         f"rankY = {datum.rank_y}")
    return datum, tau


def _require_sigma_generic(datum):
    """The stabilizer analysis assumes |sigma_s| > 1 on every node."""
    for s in range(datum.n):
        for val in (datum.sigma[s], datum.sigma_prime[s]):
            if abs(val) <= 1:
                raise UsageError(
                    f"sigma_{s} = {val} but this command needs |sigma| > 1")


def _emit(report, config):
    text = json.dumps(report, indent=2, sort_keys=True)
    if config.json_path:
        Path(config.json_path).write_text(text + "\n")
    else:
        print(text)


# -- subcommands --------------------------------------------------------------------

def cmd_datum_check(config):
    doc = _load_doc(config)
    violations = rootdata.validate_kac_moody(doc.get("A", []))
    report = {"kac_moody_violations": violations}
    if violations:
        _emit(report, config)
        return 1
    datum = rootdata.RootDatum.from_json(doc)
    pairing = linalg.frac_matrix(datum.pairing)
    kernel = [[str(c) for c in row] for row in linalg.nullspace(pairing)]
    report.update({
        "nodes": datum.n,
        "rank_y": datum.rank_y,
        "pairing_rank": linalg.rank(pairing),
        "pairing_kernel": kernel,
        "sigma": {str(s): str(datum.sigma[s]) for s in range(datum.n)},
        "sigma_prime": {str(s): str(datum.sigma_prime[s])
                        for s in range(datum.n)},
        "equal_parameters": all(datum.sigma[s] == datum.sigma_prime[s]
                                for s in range(datum.n)),
    })
    if kernel:
        report["note"] = ("pairing has a kernel: central directions; "
                          "characters are free on them")
    if "tau" in doc:
        tau = Character(doc["tau"])
        if len(tau.values) != datum.rank_y:
            report["tau_error"] = (f"{len(tau.values)} values for "
                                   f"rankY = {datum.rank_y}")
            _emit(report, config)
            return 1
        report["tau"] = [str(v) for v in tau.values]
    _emit(report, config)
    return 0


def cmd_regular_report(config):
    datum, tau = _resolve(config)
    regular.check_regular(datum, tau, config.L)
    graph = regular.build_graph(datum, tau, config.L, seed=config.seed)
    order = sorted(graph.vertices, key=lambda w: (w.length(), w.matrix))
    e = datum.identity_elt()
    report = {
        "L": config.L,
        "vertices": [repr(w) for w in order],
        "edges": [{"w": repr(edge.w), "s": edge.s, "sw": repr(edge.sw),
                   "iso": edge.iso, "annotation": edge.annotation}
                  for edge in sorted(
                      graph.edges,
                      key=lambda edge: (edge.w.length(), edge.w.matrix,
                                        edge.s))],
        "components": sorted(
            sorted(repr(w) for w in comp) for comp in graph.iso_components()),
        "distance_from_identity": {
            repr(w): regular.semi_distance(datum, tau, w, e, seed=config.seed)
            for w in order},
        "submodule_weights": {
            repr(w): sorted(
                repr(u) for u in regular.submodule_weights(
                    datum, tau, w, config.L, seed=config.seed))
            for w in order},
        "proper_submodules": sorted(
            sorted(repr(u) for u in ws)
            for ws in regular.proper_submodules(
                datum, tau, config.L, seed=config.seed)),
        "irr_dims": {repr(w): regular.irr_quotient_report(graph, w)["dim"]
                     for w in order},
    }
    if config.dot:
        Path(config.dot).write_text(regular.dot_export(graph))
    _emit(report, config)
    return 0


def cmd_uc_report(config):
    datum, tau = _resolve(config)
    _require_sigma_generic(datum)
    report = rgroup.uc_report(datum, tau, config.L, seed=config.seed)
    _emit(report, config)
    return 0


def cmd_accept(config):
    results = acceptance.run_all(only=config.only, seed=config.seed)
    ok = True
    for r in results:
        in_time = r["elapsed"] <= r["limit"]
        passed = r["passed"] and in_time
        ok = ok and passed
        mark = "PASS" if passed else "FAIL"
        extra = "" if in_time else f"  (over the {r['limit']:.0f}s budget)"
        print(f"{mark}  {r['name']:<24} {r['elapsed']:7.2f}s  "
              f"{r['detail']}{extra}")
    if config.json_path:
        # timings are not deterministic; the file keeps only the verdicts
        doc = [{"name": r["name"], "passed": r["passed"],
                "detail": r["detail"]} for r in results]
        Path(config.json_path).write_text(
            json.dumps(doc, indent=2, sort_keys=True) + "\n")
    return 0 if ok else 1


# -- argument parsing ---------------------------------------------------------------

def _parse_tau(text):
    vals = [chunk.strip() for chunk in text.split(",")]
    if not all(vals):
        raise UsageError(f"bad --tau {text!r}: expected 'r1,r2,...'")
    for v in vals:
        try:
            Fraction(v)
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"bad --tau entry {v!r}: not a rational")
    return tuple(vals)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="kmhecke",
        description="Exact principal-series computations on Kac-Moody "
                    "root data.")
    sub = parser.add_subparsers(dest="command", required=True)
    specs = {
        "datum-check": "validate a root datum and its parameters",
        "regular-report": "isomorphism graph and submodules at a "
                          "regular character",
        "uc-report": "stabilizer, R-group and endomorphism report",
        "accept": "run the acceptance battery",
    }
    for name, help_text in specs.items():
        p = sub.add_parser(name, help=help_text)
        if name != "accept":
            p.add_argument("--preset", choices=presets.PRESET_NAMES)
            p.add_argument("--datum", dest="datum_path", metavar="FILE")
            p.add_argument("--tau", metavar="R1,R2,...")
            p.add_argument("--sigma", metavar="R")
            p.add_argument("--L", type=int, default=4)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--json", dest="json_path", metavar="PATH")
        if name == "regular-report":
            p.add_argument("--dot", metavar="PATH")
        if name == "accept":
            p.add_argument("--only",
                           choices=[c[0] for c in acceptance.CRITERIA])
    return parser


COMMANDS = {
    "datum-check": cmd_datum_check,
    "regular-report": cmd_regular_report,
    "uc-report": cmd_uc_report,
    "accept": cmd_accept,
}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    fields = {f: getattr(args, f, None) for f in (
        "preset", "datum_path", "sigma", "seed", "dot", "json_path", "only")}
    try:
        tau = _parse_tau(args.tau) if getattr(args, "tau", None) else None
        config = Config(tau=tau, L=getattr(args, "L", 4), **fields)
        return COMMANDS[args.command](config)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except (rootdata.KacMoodyError, regular.RegularityViolation,
            rgroup.NotInUC, ValueError, ArithmeticError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
