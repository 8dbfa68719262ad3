"""Command-line front end.  Every subcommand prints one JSON document.

Exit codes: 0 success, 1 usage error, 2 construction error, 3 a decode or
verification failure.
"""
from __future__ import annotations

import argparse
import itertools
import json
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from .autgroup import AutError, psi_orbits, sigma_orbits
from .checks import SUITES, run_suite
from .code import CodeError, CodeSpec, build_code, greedy_information_set, hermitian_info_positions, systematic_form
from .curve import Axis, CurveError, CurveSpec, Ordering, parse_curve
from .decoder import PermutationDecoder, permutation_decode
from .field import FieldError
from .pdset import (PDError, PDSet, pd_set_full_group, pd_set_normtrace, pd_set_two_errors, pd_set_x_burst,
                    pd_set_y_burst, normtrace_check_positions, valid_ells)

EXHAUSTIVE_LIMIT = 10**6
CONSTRUCTION_ERRORS = (AutError, CodeError, CurveError, FieldError, PDError)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


# -- building blocks from flags -------------------------------------------------


def _pd_kind(text: str | None) -> tuple[str | None, int | None]:
    if text is None:
        return None, None
    if text.startswith("nt"):
        _, _, ell = text.partition(":")
        return "nt", int(ell) if ell else None
    if text not in ("x-burst", "y-burst", "two", "full"):
        raise UsageError(f"unknown PD family {text!r}")
    return text, None


def build_from_args(args, need_pd: bool = False) -> tuple[CodeSpec, PDSet | None]:
    curve = parse_curve(args.curve)
    if args.gamma is None:
        raise UsageError("--gamma is required")
    kind, ell = _pd_kind(getattr(args, "pd", None))
    if need_pd and kind is None:
        raise UsageError("--pd is required")
    hermitian = curve.s == 2
    ordering = args.ordering or ("orbit" if hermitian else "lex")
    code = build_code(curve, args.gamma, ordering)
    info_arg = args.info or ("orbit-prefix" if hermitian and ordering == "orbit" else "greedy")
    if info_arg == "prop32":  # older name, kept for scripts that use it
        info_arg = "orbit-prefix"
    if kind == "nt":
        ell = valid_ells(curve)[0] if ell is None else ell
        if info_arg in ("orbit-prefix", "greedy"):
            avoid = set(normtrace_check_positions(code, ell))
            info_arg = "points:" + ",".join(
                map(str, greedy_information_set(code, [i for i in range(code.n) if i not in avoid])))
    if info_arg == "orbit-prefix":
        info = hermitian_info_positions(code).info
    elif info_arg == "greedy":
        info = greedy_information_set(code)
    elif info_arg.startswith("points:"):
        try:
            info = [int(v) for v in info_arg[len("points:"):].split(",") if v.strip()]
        except ValueError as exc:
            raise UsageError(f"bad --info list: {exc}") from None
    else:
        raise UsageError(f"unknown --info {info_arg!r}")
    code = systematic_form(code, info)
    if kind is None:
        return code, None
    builders = {"x-burst": pd_set_x_burst, "y-burst": pd_set_y_burst, "two": pd_set_two_errors,
                "full": pd_set_full_group}
    pd = pd_set_normtrace(code, ell) if kind == "nt" else builders[kind](code)
    return code, pd


# -- error models ---------------------------------------------------------------


@dataclass(frozen=True)
class Support:
    label: str
    positions: tuple[int, ...] | None  # None: a fresh random support per trial
    weight: int = 0


@dataclass(frozen=True)
class ErrorModel:
    supports: tuple[Support, ...]
    values: str  # "random", "all" (every nonzero vector) or "full" (no zero entry)


def _kv(parts) -> dict[str, str]:
    out = {}
    for p in parts:
        if "=" in p:
            k, v = p.split("=", 1)
            out[k.strip()] = v.strip()
    return out


def parse_error_model(text: str, code: CodeSpec) -> ErrorModel:
    """``xline:a=z^3;values=random``, ``yline:b=z^2;values=all``, ``pair:i,j``, ``random:w=2``.

    ``a=*`` / ``b=*`` / ``pair:*`` expand to every line or pair.
    """
    head, _, rest = text.partition(":")
    parts = [p for p in rest.split(";") if p]
    kv = _kv(parts)
    values = kv.get("values", "random")
    if values not in ("random", "all", "full"):
        raise UsageError(f"values must be random, all or full, not {values!r}")
    curve, F = code.curve, code.field
    if head in ("xline", "yline"):
        key, axis = ("a", Axis.X_LINE) if head == "xline" else ("b", Axis.Y_LINE)
        spec = kv.get(key, "*")
        if spec == "*":
            vals = [v for v in F.elements() if axis is Axis.X_LINE or F.trace(v) != 0]
        else:
            try:
                vals = [F.parse(spec)]
            except FieldError as exc:
                raise UsageError(str(exc)) from None
        sups = tuple(Support(f"{head}:{key}={F.fmt(v)}", tuple(code.table.indices(curve.line_points(axis, v))))
                     for v in vals)
        return ErrorModel(sups, values)
    if head == "pair":
        spec = parts[0] if parts and "=" not in parts[0] else "*"
        if spec == "*":
            pairs = list(itertools.combinations(range(code.n), 2))
        else:
            try:
                i, j = (int(v) for v in spec.split(","))
            except ValueError:
                raise UsageError(f"bad pair {spec!r}") from None
            if i == j or not (0 <= i < code.n and 0 <= j < code.n):
                raise UsageError(f"bad pair {spec!r}")
            pairs = [(i, j)]
        return ErrorModel(tuple(Support(f"pair:{i},{j}", (i, j)) for i, j in pairs), values)
    if head == "random":
        try:
            w = int(kv["w"])
        except (KeyError, ValueError):
            raise UsageError("random errors need w=<weight>") from None
        if not 0 < w <= code.n:
            raise UsageError(f"weight {w} out of range")
        return ErrorModel((Support(f"random:w={w}", None, w),), "random")
    raise UsageError(f"unknown error model {text!r}")


DEFAULT_MODEL = {"x-burst": "xline:a=*", "y-burst": "yline:b=*", "two": "pair:*", "full": "pair:*",
                 "nt": "yline:b=*"}


@dataclass
class SimulationReport:
    code: dict
    pd_family: str
    error_model: str
    trials: int
    successes: int
    failures: int
    per_support: list[dict] = field(default_factory=list)
    wall_clock: float = 0.0
    seed: int = 0
    workers: int = 1


def _nonzero_vectors(Q: int, w: int) -> np.ndarray:
    return np.array(list(itertools.product(range(Q), repeat=w))[1:], dtype=np.int64)


def _errors_for(code: CodeSpec, sup: Support, values: str, trials: int, rng) -> np.ndarray:
    Q, n = code.field.order, code.n
    if sup.positions is None:
        E = np.zeros((trials, n), dtype=np.int64)
        for row in range(trials):
            pos = rng.choice(n, size=sup.weight, replace=False)
            E[row, pos] = rng.integers(1, Q, size=sup.weight)
        return E
    pos = list(sup.positions)
    if values == "all" and Q ** len(pos) - 1 <= EXHAUSTIVE_LIMIT:
        vals = _nonzero_vectors(Q, len(pos))
    elif values == "full" and (Q - 1) ** len(pos) <= EXHAUSTIVE_LIMIT:
        vals = np.array(list(itertools.product(range(1, Q), repeat=len(pos))), dtype=np.int64)
    elif values == "full":
        vals = rng.integers(1, Q, size=(trials, len(pos)))
    else:
        vals = rng.integers(0, Q, size=(trials, len(pos)))
        while (zero := ~vals.any(axis=1)).any():
            vals[zero] = rng.integers(0, Q, size=(int(zero.sum()), len(pos)))
    E = np.zeros((len(vals), n), dtype=np.int64)
    E[:, pos] = vals
    return E


def simulate(code: CodeSpec, pd: PDSet, model: ErrorModel, trials: int = 100, seed: int = 0,
             workers: int = 1, model_text: str = "") -> SimulationReport:
    t0 = time.perf_counter()
    dec = PermutationDecoder(code, pd)
    F = code.field
    seeds = np.random.SeedSequence(seed).spawn(len(model.supports))

    def run(arg):
        sup, ss = arg
        rng = np.random.default_rng(ss)
        E = _errors_for(code, sup, model.values, trials, rng)
        msgs = rng.integers(0, F.order, size=(len(E), code.k))
        C = code.encode(msgs)
        out, used, _ = dec.decode_batch(F.add(C, E))
        bad = int(np.count_nonzero(np.any(out != C, axis=1)))
        return {"support": sup.label, "trials": len(E), "failures": bad}

    jobs = list(zip(model.supports, seeds))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(run, jobs))
    else:
        rows = [run(j) for j in jobs]
    total = sum(r["trials"] for r in rows)
    fails = sum(r["failures"] for r in rows)
    return SimulationReport(code.to_json(matrices=False), pd.family, model_text, total, total - fails, fails,
                            rows, round(time.perf_counter() - t0, 3), seed, workers)


# -- subcommands ------------------------------------------------------------------


def _field_doc(curve: CurveSpec) -> dict:
    F = curve.field
    ktr, kn = F.kernel_sets()
    return {**F.to_json(), "elements": [F.fmt(x) for x in F.elements()],
            "exp": F.exp.tolist(), "trace": [F.fmt(F.trace(x)) for x in F.elements()],
            "norm": [F.fmt(F.norm(x)) for x in F.elements()],
            "ker_tr": [F.fmt(x) for x in ktr], "ker_n": [F.fmt(x) for x in kn]}


def cmd_field(args) -> tuple[dict, int]:
    return _field_doc(parse_curve(args.curve)), 0


def cmd_curve(args) -> tuple[dict, int]:
    from .curve import enumerate_points
    curve = parse_curve(args.curve)
    table = enumerate_points(curve, args.ordering or "lex")
    F = curve.field
    x_lines = {F.fmt(a): table.indices(curve.line_points(Axis.X_LINE, a)) for a in F.elements()}
    y_lines = {F.fmt(b): table.indices(curve.line_points(Axis.Y_LINE, b)) for b in F.elements()}
    doc = {**curve.to_json(), "genus": curve.genus, "n": curve.n_affine, "l1": curve.l1, "l2": curve.l2,
           **table.to_json(), "x_lines": x_lines, "y_lines": y_lines}
    return doc, 0


def cmd_code(args) -> tuple[dict, int]:
    code, _ = build_from_args(args)
    return code.to_json(), 0


def cmd_orbits(args) -> tuple[dict, int]:
    from .curve import enumerate_points
    curve = parse_curve(args.curve)
    F = curve.field
    betas = [F.parse(b) for b in args.beta_order.split(",")] if args.beta_order else None
    if curve.s == 2:
        table = enumerate_points(curve, Ordering.ORBIT, betas)
        part = sigma_orbits(curve, table)
    else:
        table = enumerate_points(curve)
        part = psi_orbits(curve, table)
    doc = part.to_json(table)
    doc["lines"] = [sorted({F.fmt(table.points[i][1]) for i in o}, key=lambda s: F.order_key(F.parse(s)))
                    for o in part.orbits]
    doc["curve"] = curve.name
    return doc, 0


def cmd_pdset(args) -> tuple[dict, int]:
    _, pd = build_from_args(args, need_pd=True)
    doc = pd.to_json()
    doc["size"] = len(pd)
    return doc, 0


def _parse_word(code: CodeSpec, text: str) -> np.ndarray:
    F = code.field
    vals = [F.parse(v) for v in text.replace(";", ",").split(",") if v.strip()]
    if len(vals) != code.n:
        raise UsageError(f"received word has {len(vals)} symbols, expected {code.n}")
    return np.array(vals, dtype=np.int64)


def cmd_decode(args) -> tuple[dict, int]:
    code, pd = build_from_args(args, need_pd=True)
    if args.word is None:
        raise UsageError("--word is required")
    y = _parse_word(code, args.word)
    res = permutation_decode(code, pd, y)
    F = code.field
    doc = {"status": res.status.value, "member_used": res.member_used, "syndrome_weight": res.syndrome_weight,
           "codeword": None if res.codeword is None else [F.fmt(v) for v in res.codeword]}
    return doc, 0 if res.ok else 3


def cmd_simulate(args) -> tuple[dict, int]:
    code, pd = build_from_args(args, need_pd=True)
    kind, _ = _pd_kind(args.pd)
    text = args.errors or DEFAULT_MODEL[kind]
    if args.exhaustive and args.errors is None:
        text += ";values=full" if text.startswith("pair") else ";values=all"
    model = parse_error_model(text, code)
    rep = simulate(code, pd, model, trials=args.trials, seed=args.seed, workers=args.workers, model_text=text)
    return asdict(rep), 0 if rep.failures == 0 else 3


def cmd_verify(args) -> tuple[dict, int]:
    checks = run_suite(args.suite, args.q)
    doc = {"suite": args.suite, "checks": [c.to_json() for c in checks], "passed": all(c.ok for c in checks)}
    return doc, 0 if doc["passed"] else 3


COMMANDS = {"field": cmd_field, "curve": cmd_curve, "code": cmd_code, "orbits": cmd_orbits, "pdset": cmd_pdset,
            "decode": cmd_decode, "simulate": cmd_simulate, "verify": cmd_verify}


def make_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="agpd", description="One-point AG codes on Hermitian and norm-trace curves, "
                                         "with permutation decoding.")
    p.add_argument("--json", metavar="PATH", help="also write the JSON output to PATH")
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    def with_curve(sp):
        sp.add_argument("--curve", required=True, help="hermitian:q or normtrace:q:s")
        return sp

    def with_code(sp):
        with_curve(sp)
        sp.add_argument("--gamma", type=int)
        sp.add_argument("--ordering", choices=["orbit", "lex"])
        sp.add_argument("--info", help="orbit-prefix (alias prop32) | greedy | points:i,j,...")
        return sp

    with_curve(sub.add_parser("field", help="field tables and kernels"))
    with_curve(sub.add_parser("curve", help="points and lines")).add_argument("--ordering", choices=["orbit", "lex"])
    with_code(sub.add_parser("code", help="build a code and dump its matrices"))
    sp = with_curve(sub.add_parser("orbits", help="orbit partition"))
    sp.add_argument("--beta-order", help="comma list enumerating ker Tr, 0 first")
    helps = {"pdset": "construct and certify a PD set", "decode": "permutation-decode one received word",
             "simulate": "decode batches of burst or random errors"}
    for name, text in helps.items():
        sp = with_code(sub.add_parser(name, help=text))
        sp.add_argument("--pd", help="x-burst | y-burst | two | full | nt:ell")
        if name == "decode":
            sp.add_argument("--word", help="comma-separated symbols (0, 1, z, z^e) in point order")
        if name == "simulate":
            sp.add_argument("--errors", help="error model, e.g. xline:a=z^3;values=random")
            sp.add_argument("--trials", type=int, default=100)
            sp.add_argument("--seed", type=int, default=0)
            sp.add_argument("--workers", type=int, default=1)
            sp.add_argument("--exhaustive", action="store_true")
    sp = sub.add_parser("verify", help="reference comparisons and oracle cross-checks")
    sp.add_argument("--suite", default="all", choices=[*SUITES, "all"])
    sp.add_argument("--q", type=int)
    return p


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        doc, code = COMMANDS[args.cmd](args)
    except UsageError as exc:
        print(f"agpd: {exc}", file=sys.stderr)
        return 1
    except CONSTRUCTION_ERRORS as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}))
        return 2
    text = json.dumps(doc)
    print(text)
    if args.json:
        with open(args.json, "w") as fh:
            fh.write(text + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
