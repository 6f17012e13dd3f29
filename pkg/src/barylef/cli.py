"""Command-line front end.

Exit status: 0 on success, 1 when a verification fails or no certificate
is found, 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from . import eulerian as eu
from .complex_core import (
    EmptyComplexError,
    NotPureError,
    SimplicialComplex,
    barycentric_subdivision,
    f_vector,
    g_vector,
    h_vector,
    is_m_sequence,
    peak_positions,
)
from .face_algebra import (
    DEFAULT_PRIME,
    DEFAULT_SEED,
    DEFAULT_TRIALS,
    LefschetzCertificate,
    almost_strong_lefschetz_check,
    s_lefschetz_check,
    verify_certificate,
)
from .facet_io import FacetParseError, format_facets, format_sidecar, read_facets, write_subdivided
from .modp import PrimeField
from .shelling import DEFAULT_NODE_BUDGET, ShellingBudgetExceeded, find_shelling, h_from_restrictions

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
COMMANDS = ("fvec", "hvec", "gvec", "sd", "shell", "lefschetz", "eulerian", "verify", "report")


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    inputs: tuple[str, ...]
    prime: int = DEFAULT_PRIME
    trials: int = DEFAULT_TRIALS
    seed: int = DEFAULT_SEED
    format: str = "text"
    budget: int = DEFAULT_NODE_BUDGET
    d: int | None = None
    sd: bool = False
    s: int | None = None
    cm: bool = False
    output: str | None = None

    def echo(self) -> dict:
        return {"command": self.command, "prime": self.prime, "trials": self.trials,
                "seed": self.seed, "budget": self.budget}


def _vec(v) -> str:
    return "(" + ",".join(map(str, v)) + ")"


def _load(cfg: RunConfig, path: str):
    cx = read_facets(path)
    return barycentric_subdivision(cx) if cfg.sd else cx


def _require_pure(cx):
    base = cx.base if hasattr(cx, "base") else cx
    if not base.is_pure:
        raise NotPureError(f"input is not pure (facet sizes {sorted({len(f) for f in base.facets})})")


def _one_input(cfg: RunConfig) -> str:
    if len(cfg.inputs) != 1:
        raise UsageError(f"{cfg.command} takes exactly one facet-list file")
    return cfg.inputs[0]


def cmd_vectors(cfg: RunConfig):
    cx = _load(cfg, _one_input(cfg))
    h = h_vector(cx)
    value = {"fvec": f_vector(cx), "hvec": h, "gvec": g_vector(h)}[cfg.command]
    return EXIT_OK, {cfg.command: list(value)}, _vec(value)


def cmd_sd(cfg: RunConfig):
    sd = barycentric_subdivision(read_facets(_one_input(cfg)))
    if cfg.output:
        write_subdivided(sd, cfg.output)
    data = {
        "facets": [sorted(f) for f in sd.base.sorted_facets()],
        "origin": {str(v): sorted(sd.origin[v]) for v in sorted(sd.origin)},
        "level": {str(v): sd.level[v] for v in sorted(sd.level)},
    }
    return EXIT_OK, data, format_facets(sd.base) + format_sidecar(sd)


def cmd_shell(cfg: RunConfig):
    cx = _load(cfg, _one_input(cfg))
    _require_pure(cx)
    try:
        cert = find_shelling(cx, cfg.budget)
    except ShellingBudgetExceeded as exc:
        return EXIT_FAIL, {"shelling": None, "status": "budget exhausted"}, str(exc)
    if cert is None:
        return EXIT_FAIL, {"shelling": None, "status": "none found"}, "no shelling exists"
    h = h_from_restrictions(cert, cx.d)
    data = {"status": "found", **cert.to_json(), "h": list(h)}
    return EXIT_OK, data, cert.to_text() + f"h = {_vec(h)}"


def cmd_lefschetz(cfg: RunConfig):
    cx = _load(cfg, _one_input(cfg))
    _require_pure(cx)
    field = PrimeField(cfg.prime)
    if cfg.s is None:
        res = almost_strong_lefschetz_check(cx, cfg.trials, cfg.seed, field)
    else:
        res = s_lefschetz_check(cx, cfg.s, cfg.trials, cfg.seed, field)
    if not res:
        return EXIT_FAIL, res.to_json(), "no certificate found (inconclusive)\n" + "\n".join(res.reasons)
    lines = [f"certificate: s={res.s} p={res.p} seed={res.seed} trial={res.trial}"]
    lines += [f"  omega^{res.s - 2 * w.i}: degree {w.i} -> {w.target}  dim {w.dim_source} -> "
              f"{w.dim_target}  rank {w.rank}" for w in res.witnesses]
    return EXIT_OK, {"certificate": res.to_json()}, "\n".join(lines)


def _require_d(cfg: RunConfig) -> int:
    if cfg.d is None or cfg.d < 1:
        raise UsageError("--d N (N >= 1) is required")
    return cfg.d


def cmd_eulerian(cfg: RunConfig):
    table = eu.a_table_recurrence(_require_d(cfg))
    return EXIT_OK, {"table": table.to_json()}, table.to_csv().rstrip("\n")


def verify_eulerian(d: int, brute_max: int = eu.BRUTE_FORCE_MAX_D) -> dict:
    """Every identity and inequality family on the table A(d, ., .)."""
    table = eu.a_table_recurrence(d)
    out = {"d": d}
    if d <= brute_max:
        out["bruteforce_matches_recurrence"] = eu.a_table_bruteforce(d, brute_max) == table
    out["symmetry"] = eu.verify_symmetry(d, table).to_json()
    out["inequalities"] = eu.verify_inequalities(d - 1, table).to_json()
    flat = eu.flatten_and_check_A(d, table)
    out["flattened"] = {"sequence": list(flat.sequence), "unimodal": flat.unimodal,
                        "symmetric": flat.symmetric, "middle_peak": flat.middle_peak}
    out["pass"] = bool(
        out.get("bruteforce_matches_recurrence", True)
        and out["symmetry"]["pass"]
        and out["inequalities"]["pass"]
        and flat.ok
    )
    return out


def cmd_verify(cfg: RunConfig):
    if not cfg.inputs:
        raise UsageError("verify needs a target: eulerian or certificate FILE")
    target, rest = cfg.inputs[0], cfg.inputs[1:]
    if target == "eulerian":
        data = verify_eulerian(_require_d(cfg))
        lines = [f"A({data['d']},.,.)"]
        for key in ("bruteforce_matches_recurrence",):
            if key in data:
                lines.append(f"{key}: {'pass' if data[key] else 'FAIL'}")
        lines.append(f"symmetry: {'pass' if data['symmetry']['pass'] else 'FAIL'}")
        for c in data["inequalities"]["checks"]:
            lines.append(f"{c['name']}: {'pass' if c['pass'] else 'FAIL'}")
        for m in data["inequalities"]["middle_pair_unasserted"]:
            lines.append(f"middle pair (not asserted) column {m['column']}: "
                         f"{m['lower']} vs {m['upper']}")
        flat_ok = all(data["flattened"][k] for k in ("unimodal", "symmetric", "middle_peak"))
        lines.append(f"flattened unimodal+symmetric: {'pass' if flat_ok else 'FAIL'}")
        return (EXIT_OK if data["pass"] else EXIT_FAIL), data, "\n".join(lines)
    if target == "certificate":
        if len(rest) != 1:
            raise UsageError("verify certificate takes one JSON record")
        with open(rest[0]) as fh:
            record = json.load(fh)
        record = record.get("certificate", record)
        if record is None:
            raise UsageError("record holds no certificate")
        ok = verify_certificate(LefschetzCertificate.from_json(record))
        return (EXIT_OK if ok else EXIT_FAIL), {"verified": ok}, "verified" if ok else "REJECTED"
    raise UsageError(f"unknown verify target {target!r}")


def build_report(cx: SimplicialComplex, cfg: RunConfig) -> tuple[int, dict]:
    """h, g, their subdivided versions, M-sequence and peak verdicts, and a certificate attempt."""
    _require_pure(cx)
    hypothesis = "cm-assumed" if cfg.cm else None
    try:
        shelling = find_shelling(cx, cfg.budget)
    except ShellingBudgetExceeded:
        shelling = None
        status = "budget exhausted"
    else:
        status = "found" if shelling else "none found"
    if shelling is not None:
        hypothesis = "shellable"
    if hypothesis is None:
        return EXIT_FAIL, {
            "rejected": True,
            "reason": f"shelling search: {status}; the subdivision results assume a shellable "
                      "(or Cohen-Macaulay) complex. Pass --cm to assume Cohen-Macaulay.",
        }
    d = cx.d
    h = h_vector(cx)
    sd = barycentric_subdivision(cx)
    h_sd = h_vector(sd)
    g_sd = g_vector(h_sd)
    predicted = eu.predict_peak(h, d) if min(h) >= 0 else None
    peaks = peak_positions(h_sd)
    ineq = all(h_sd[d - 1 - i] >= h_sd[i] for i in range((d - 2) // 2 + 1))
    cert = almost_strong_lefschetz_check(sd, cfg.trials, cfg.seed, PrimeField(cfg.prime))
    m_h, m_gsd = is_m_sequence(h), is_m_sequence(g_sd)
    peak_ok = predicted is not None and peaks.unimodal and (
        predicted <= peaks.positions if d % 2 == 0 else bool(predicted & peaks.positions)
    )
    data = {
        "hypothesis": hypothesis,
        "shelling": shelling.to_json() if shelling else None,
        "f": list(f_vector(cx)),
        "h": list(h),
        "g": list(g_vector(h)),
        "h_is_m_sequence": m_h.ok,
        "h_sd": list(h_sd),
        "h_sd_matches_transform": h_sd == eu.sd_h_transform(h, d),
        "g_sd": list(g_sd),
        "g_sd_is_m_sequence": m_gsd.ok,
        "peak_positions": sorted(peaks.positions),
        "h_sd_unimodal": peaks.unimodal,
        "predicted_peak": sorted(predicted) if predicted is not None else None,
        "peak_as_predicted": peak_ok,
        "upper_half_dominates": ineq,
        "certificate": cert.to_json() if cert else None,
        "certificate_attempt": None if cert else cert.to_json(),
    }
    ok = all([m_h.ok, m_gsd.ok, data["h_sd_matches_transform"], peak_ok, ineq, bool(cert)])
    data["pass"] = ok
    return (EXIT_OK if ok else EXIT_FAIL), data


def cmd_report(cfg: RunConfig):
    cx = read_facets(_one_input(cfg))
    code, data = build_report(cx, cfg)
    if data.get("rejected"):
        return code, data, "REJECTED: " + data["reason"]
    lines = [
        f"hypothesis: {data['hypothesis']}",
        f"h = {_vec(data['h'])}   g = {_vec(data['g'])}   M-sequence: {data['h_is_m_sequence']}",
        f"h(sd) = {_vec(data['h_sd'])}   g(sd) = {_vec(data['g_sd'])}   "
        f"M-sequence: {data['g_sd_is_m_sequence']}",
        f"peak at {data['peak_positions']}, predicted {data['predicted_peak']}: "
        f"{'ok' if data['peak_as_predicted'] else 'MISMATCH'}",
        f"h_(d-1-i)(sd) >= h_i(sd): {data['upper_half_dominates']}",
        "certificate: " + ("found" if data["certificate"] else "not found (inconclusive)"),
    ]
    return code, data, "\n".join(lines)


HANDLERS = {
    "fvec": cmd_vectors, "hvec": cmd_vectors, "gvec": cmd_vectors, "sd": cmd_sd,
    "shell": cmd_shell, "lefschetz": cmd_lefschetz, "eulerian": cmd_eulerian,
    "verify": cmd_verify, "report": cmd_report,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def make_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--prime", type=int, default=DEFAULT_PRIME)
    common.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--budget", type=int, default=DEFAULT_NODE_BUDGET,
                        help="node budget for shelling search")
    common.add_argument("--d", type=int, default=None, help="table order for eulerian commands")
    common.add_argument("--sd", action="store_true", help="subdivide the input first")
    common.add_argument("--s", type=int, default=None, help="Lefschetz level (default: dimension)")
    common.add_argument("--cm", action="store_true", help="report: assume Cohen-Macaulay")
    common.add_argument("--output", "-o", default=None, help="sd: write facets and .sd sidecar here")

    parser = _Parser(prog="barylef", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        sp = sub.add_parser(name, parents=[common])
        sp.add_argument("inputs", nargs="*")
    return parser


def run(cfg: RunConfig) -> tuple[int, str]:
    """Execute one command; returns (exit status, rendered output)."""
    try:
        if cfg.prime is not None:
            PrimeField(cfg.prime)
        if cfg.trials < 1 or cfg.budget < 1:
            raise UsageError("--trials and --budget must be positive")
        code, data, text = HANDLERS[cfg.command](cfg)
    except (UsageError, FacetParseError, EmptyComplexError, NotPureError, OSError, ValueError) as exc:
        code, data, text = EXIT_USAGE, {"error": str(exc)}, f"error: {exc}"
    if cfg.format == "json":
        return code, json.dumps({"config": cfg.echo(), "status": code, **data}, indent=2)
    header = " ".join(f"{k}={v}" for k, v in cfg.echo().items())
    return code, f"# {header}\n{text}"


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    cfg = RunConfig(
        command=args.command, inputs=tuple(args.inputs), prime=args.prime, trials=args.trials,
        seed=args.seed, format=args.format, budget=args.budget, d=args.d, sd=args.sd, s=args.s,
        cm=args.cm, output=args.output,
    )
    code, out = run(cfg)
    stream = sys.stderr if code == EXIT_USAGE else sys.stdout
    print(out, file=stream)
    return code


if __name__ == "__main__":
    sys.exit(main())
