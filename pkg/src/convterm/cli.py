"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Optional, Sequence

from .algebra import EnumeratorMatrix, WeightEnumerator, em_pow
from .brute_force import (
    dual_code,
    enumerate_weights,
    sets_equal,
    trellis_generator_matrix,
    trellis_weight_counts,
)
from .duality import MacWilliamsError, macwilliams_transform
from .encoder import (
    CodeSpec,
    CodeSpecError,
    TrellisError,
    TrellisSection,
    UnsupportedRateError,
    build_trellis,
    dual_spec,
    hwam,
    load_trellis,
    parse_code_spec,
)
from .spectrum import (
    DivergenceError,
    Method,
    convergence_report,
    free_spectrum,
    normalized_spectrum,
    union_bound,
)
from .terminator import (
    BlockCodeMatrix,
    TerminationKind,
    generator_matrix,
    termination_enumerator,
)

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2

DUAL_KIND = {
    TerminationKind.SUBCODE: TerminationKind.PROJECTION,
    TerminationKind.PROJECTION: TerminationKind.SUBCODE,
    TerminationKind.TRUNCATED: TerminationKind.REVERSE_TRUNCATED,
    TerminationKind.REVERSE_TRUNCATED: TerminationKind.TRUNCATED,
    TerminationKind.TAILBITING: TerminationKind.TAILBITING,
}


class InputError(Exception):
    pass


def poly_json(w: WeightEnumerator) -> dict[str, int]:
    return {str(d): v for d, v in w.items()}


def matrix_json(m: EnumeratorMatrix) -> dict:
    return {"states": list(m.state_order), "entries": [[poly_json(e) for e in row] for row in m.entries]}


class Source:
    """A code given either as a generator spec or as an explicit trellis file."""

    def __init__(self, code: Optional[str], trellis_path: Optional[str]):
        if (code is None) == (trellis_path is None):
            raise InputError("give exactly one of --code or --trellis")
        self.spec: Optional[CodeSpec] = None
        if code is not None:
            self.spec = parse_code_spec(code)
            self.trellis: TrellisSection = build_trellis(self.spec)
            self.label = self.spec.octal()
        else:
            try:
                text = Path(trellis_path).read_text()
            except OSError as exc:
                raise InputError(f"cannot read trellis file: {exc}") from exc
            self.trellis = load_trellis(text)
            self.label = f"trellis:{trellis_path}"
        self.lam = hwam(self.trellis)

    def matrix(self, kind: TerminationKind, n_sections: int) -> BlockCodeMatrix:
        if self.spec is not None:
            return generator_matrix(self.spec, kind, n_sections)
        return trellis_generator_matrix(self.trellis, kind, n_sections)


def _emit(args, command: str, inputs: dict, outputs: dict, text: str, ok: bool = True) -> int:
    if args.format == "json":
        doc = {"command": command, "inputs": inputs, "outputs": outputs, "status": "ok" if ok else "fail"}
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        print(text)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_hwam(args) -> int:
    src = Source(args.code, args.trellis)
    if args.power < 0:
        raise InputError("--power must be nonnegative")
    m = em_pow(src.lam, args.power, args.mod_degree)
    head = f"Lambda^{args.power}(x) for {src.label}"
    if args.mod_degree is not None:
        head += f" (mod x^{args.mod_degree + 1})"
    inputs = {"code": src.label, "power": args.power, "mod_degree": args.mod_degree}
    return _emit(args, "hwam", inputs, {"matrix": matrix_json(m)}, head + "\n" + str(m))


def cmd_terminate(args) -> int:
    src = Source(args.code, args.trellis)
    kind = TerminationKind.parse(args.kind)
    n_sections = args.N
    if n_sections < 1:
        raise InputError("-N must be positive")
    raw = termination_enumerator(src.lam, kind, n_sections)
    mult = raw[0]
    distinct = raw.exact_div(mult)
    outputs: dict[str, Any] = {}
    lines = [f"{kind.value} termination of {src.label}, N={n_sections}"]
    if args.emit in ("enumerator", "both"):
        outputs["enumerator"] = poly_json(distinct)
        lines.append(f"weight enumerator: {distinct}")
        if mult != 1:
            outputs["path_functional"] = poly_json(raw)
            outputs["path_multiplicity"] = mult
            lines.append(f"path functional: {raw} (each codeword reached by {mult} paths)")
    g = None
    if args.emit in ("matrix", "both") or args.check:
        g = src.matrix(kind, n_sections)
    if args.emit in ("matrix", "both"):
        outputs["matrix"] = g.to_dict()
        outputs["matrix"]["symbol_rows"] = g.symbol_rows()
        lines.append(f"generator matrix ({g.n_block},{g.rank}), {g.gens.nrows} rows:")
        lines.extend("  " + r for r in g.symbol_rows())
        if not g.gens.nrows:
            lines.append("  (zero code)")
    ok = True
    if args.check:
        brute = enumerate_weights(g)
        walked = trellis_weight_counts(src.trellis, kind, n_sections)
        ok = brute == distinct == walked
        outputs["check"] = {"pass": ok, "brute_force": poly_json(brute), "trellis_walk": poly_json(walked)}
        lines.append(f"check: {'pass' if ok else 'FAIL'} (brute force {brute})")
    inputs = {"code": src.label, "kind": kind.value, "N": n_sections}
    return _emit(args, "terminate", inputs, outputs, "\n".join(lines), ok)


def verify_code(src: Source, dual: Optional[Source], n_max: int) -> list[dict]:
    """Set-level dualities and MacWilliams identities for ``N = 1..n_max``."""
    rows = []
    for n_sections in range(1, n_max + 1):
        for kind, pair in DUAL_KIND.items():
            g = src.matrix(kind, n_sections)
            gd = dual_code(g)
            k = g.rank
            length = g.n_block
            w = termination_enumerator(src.lam, kind, n_sections, distinct=True)
            row: dict[str, Any] = {"N": n_sections, "kind": kind.value, "dual_kind": pair.value, "k": k}
            try:
                t = macwilliams_transform(w, length, k)
                row["macwilliams_vs_brute_dual"] = t == enumerate_weights(gd)
            except MacWilliamsError:
                t = None
                row["macwilliams_vs_brute_dual"] = False
            if dual is not None:
                h = dual.matrix(pair, n_sections)
                row["set_duality"] = sets_equal(gd, h)
                wd = termination_enumerator(dual.lam, pair, n_sections, distinct=True)
                row["macwilliams_vs_dual_trellis"] = t is not None and t == wd
            row["pass"] = all(v for key, v in row.items() if key in (
                "macwilliams_vs_brute_dual", "set_duality", "macwilliams_vs_dual_trellis"))
            rows.append(row)
    return rows


def cmd_verify(args) -> int:
    src = Source(args.code, args.trellis)
    dual = None
    if args.dual_trellis:
        dual = Source(None, args.dual_trellis)
    elif src.spec is not None and src.spec.n == 2:
        dual = Source(dual_spec(src.spec).octal(), None)
    if args.n_max < 1:
        raise InputError("--n-max must be positive")
    rows = verify_code(src, dual, args.n_max)
    ok = all(r["pass"] for r in rows)
    lines = [f"verify {src.label}" + (f" against dual {dual.label}" if dual else " (no dual trellis: brute-force duals only)")]
    lines.append(f"{'N':>3} {'kind':<18} {'dual kind':<18} {'k':>3}  sets  MW(brute)  MW(dual)")
    for r in rows:
        def mark(key):
            return "-" if key not in r else ("ok" if r[key] else "FAIL")
        lines.append(f"{r['N']:>3} {r['kind']:<18} {r['dual_kind']:<18} {r['k']:>3}  {mark('set_duality'):<4}  "
                     f"{mark('macwilliams_vs_brute_dual'):<9}  {mark('macwilliams_vs_dual_trellis')}")
    lines.append("all checks passed" if ok else "VERIFICATION FAILED")
    inputs = {"code": src.label, "dual": dual.label if dual else None, "n_max": args.n_max}
    return _emit(args, "verify", inputs, {"rows": rows, "pass": ok}, "\n".join(lines), ok)


def parse_n_list(text: str) -> list[int]:
    out: list[int] = []
    for part in text.split(","):
        if ".." in part:
            lo, hi = part.split("..")
            out.extend(range(int(lo), int(hi) + 1))
        elif part:
            out.append(int(part))
    if not out or min(out) < 1:
        raise InputError(f"bad N list {text!r}")
    return sorted(set(out))


def _fmt_counts(report) -> str:
    if not report.counts:
        return "(none)"
    if report.divisor == 1:
        return str(WeightEnumerator.from_dict(report.counts))
    return ", ".join(f"{d}: {v}/{report.divisor}" for d, v in sorted(report.counts.items()))


def cmd_spectrum(args) -> int:
    src = Source(args.code, args.trellis)
    method = Method(args.method)
    inputs = {"code": src.label, "dmax": args.dmax, "method": method.value}
    if method is Method.FIRST_RETURN:
        rep = free_spectrum(src.lam, args.dmax)
        text = f"free distance spectrum of {src.label} (d <= {args.dmax}): {_fmt_counts(rep)}"
        return _emit(args, "spectrum", inputs, {"report": rep.to_dict()}, text)
    kind = TerminationKind(method.value)
    if args.n_list:
        n_list = parse_n_list(args.n_list)
        conv = convergence_report(src.lam, kind, n_list, args.dmax)
        inputs["n_list"] = n_list
        lines = [f"{kind.value} normalized counts of {src.label} vs free spectrum {_fmt_counts(conv.reference)}"]
        for row in conv.table():
            lines.append("  " + "  ".join(f"{k}={v}" for k, v in row.items()))
        for d, n in conv.stabilized_at.items():
            lines.append(f"  d={d}: " + (f"exact from N={n}" if n is not None else "not stabilized"))
        return _emit(args, "spectrum", inputs, {"convergence": conv.to_dict()}, "\n".join(lines))
    if args.N is None:
        raise InputError("normalized spectra need -N or --n-list")
    rep = normalized_spectrum(src.lam, kind, args.N, args.dmax)
    inputs["N"] = args.N
    text = f"{kind.value} spectrum of {src.label}, N={args.N}, d <= {args.dmax}: {_fmt_counts(rep)}"
    return _emit(args, "spectrum", inputs, {"report": rep.to_dict()}, text)


def cmd_estimate(args) -> int:
    src = Source(args.code, args.trellis)
    try:
        p = float(args.p)
    except ValueError as exc:
        raise InputError(f"bad probability {args.p!r}") from exc
    if not 0 <= p <= 0.5:
        raise InputError(f"crossover probability {args.p} outside [0, 1/2]")
    if args.horizon < 1:
        raise InputError("--horizon must be positive")
    tb_len = args.tb_length or args.horizon
    free = free_spectrum(src.lam, args.dmax)
    tb = normalized_spectrum(src.lam, TerminationKind.TAILBITING, tb_len, args.dmax)
    est_free = union_bound(free, args.p, args.horizon)
    est_tb = union_bound(tb, args.p, args.horizon)
    inputs = {"code": src.label, "p": args.p, "horizon": args.horizon, "dmax": args.dmax, "tailbite_N": tb_len}
    outputs = {"first_return": est_free.to_dict(), "tailbite": est_tb.to_dict()}
    text = "\n".join([
        f"BSC p={args.p}, horizon N={args.horizon}, weights <= {args.dmax} ({est_free.tie_rule})",
        f"  first-return spectrum:        P(E) <= {float(est_free.per_unit_event_bound):.6e}, "
        f"N*P(E) = {float(est_free.horizon_bound):.6e}",
        f"  tail-biting N={tb_len} spectrum:  P(E) <= {float(est_tb.per_unit_event_bound):.6e}, "
        f"N*P(E) = {float(est_tb.horizon_bound):.6e}",
    ])
    return _emit(args, "estimate", inputs, outputs, text)


def cmd_dual(args) -> int:
    spec = parse_code_spec(args.code)
    dual = dual_spec(spec)
    outputs = {"dual": dual.octal(), "generators": dual.describe()}
    return _emit(args, "dual", {"code": spec.octal()}, outputs, f"{dual.octal()}  {dual.describe()}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="convterm",
        description="Weight enumerators of terminated convolutional codes and their MacWilliams identities.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, trellis=True):
        p.add_argument("--code", help="generators, octal '5,7' or 'binary:101,111' (bit/char 0 = D^0)")
        if trellis:
            p.add_argument("--trellis", help="JSON branch-list trellis file instead of --code")
        p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("hwam", help="weight adjacency matrix Lambda^N(x)")
    common(p)
    p.add_argument("--power", type=int, default=1)
    p.add_argument("--mod-degree", type=int, default=None, help="keep weights <= this degree")
    p.set_defaults(func=cmd_hwam)

    p = sub.add_parser("terminate", help="terminated block code: enumerator and generator matrix")
    common(p)
    p.add_argument("--kind", required=True,
                   choices=[k.value for k in TerminationKind])
    p.add_argument("-N", type=int, required=True)
    p.add_argument("--emit", choices=("enumerator", "matrix", "both"), default="both")
    p.add_argument("--check", action="store_true", help="cross-check against brute-force enumeration")
    p.set_defaults(func=cmd_terminate)

    p = sub.add_parser("verify", help="duality relations and MacWilliams identities for N = 1..n-max")
    common(p)
    p.add_argument("--n-max", type=int, default=8)
    p.add_argument("--dual-trellis", help="trellis file of the orthogonal code")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("spectrum", help="free or normalized terminated distance spectrum")
    common(p)
    p.add_argument("--dmax", type=int, required=True)
    p.add_argument("--method", choices=[m.value for m in Method], default="first-return")
    p.add_argument("-N", type=int)
    p.add_argument("--n-list", help="e.g. '4..20' or '8,16,32'")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("estimate", help="BSC union-bound performance estimate")
    common(p)
    p.add_argument("-p", required=True, help="crossover probability")
    p.add_argument("--horizon", type=int, default=100)
    p.add_argument("--dmax", type=int, default=20)
    p.add_argument("--tb-length", type=int, default=None, help="tail-biting length (default: horizon)")
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("dual", help="orthogonal code of a rate-1/2 code")
    p.add_argument("--code", required=True)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_dual)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UnsupportedRateError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (InputError, CodeSpecError, TrellisError, DivergenceError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
