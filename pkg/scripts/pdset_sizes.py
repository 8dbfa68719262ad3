"""Size of every constructible PD set, with the covering lower bound for pairs."""
from __future__ import annotations

import argparse
import json
from dataclasses import asdict, dataclass

from agpd.code import CodeError
from agpd.curve import normtrace
from agpd.pdset import (PDError, gamma_candidates, gordon_lower_bound, pd_set_normtrace, pd_set_two_errors,
                        pd_set_x_burst, pd_set_y_burst, prepare_hermitian, prepare_normtrace)

BUILDERS = {"x-burst": pd_set_x_burst, "y-burst": pd_set_y_burst, "pairs": pd_set_two_errors}


@dataclass
class Config:
    qs: tuple[int, ...] = (2, 3, 4)
    normtrace: tuple[tuple[int, int, int], ...] = ((2, 3, 17), (2, 3, 12), (3, 3, 200))


def row(code, S):
    # the covering bound is about all r-subsets, so it only speaks to the pair family
    bound = gordon_lower_bound(code.n, code.k, S.r) if S.family == "pairs" else None
    return {"curve": code.curve.name, "gamma": code.gamma, "n": code.n, "k": code.k, "t": code.t,
            "family": S.family, "r": S.r, "pre_dedup": S.pre_dedup, "size": len(S), "gordon": bound}


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--q", type=int, nargs="*", default=list(Config.qs))
    cfg = Config(tuple(ap.parse_args(argv).q))
    rows = []
    for q in cfg.qs:
        for cand in gamma_candidates(q):
            try:
                code = prepare_hermitian(q, cand.gamma)
            except (CodeError, PDError):
                continue
            for fam, build in BUILDERS.items():
                try:
                    rows.append(row(code, build(code)))
                except PDError as exc:
                    rows.append({"curve": code.curve.name, "gamma": cand.gamma, "family": fam, "error": str(exc)})
    for q, s, gamma in cfg.normtrace:
        try:
            code, ell = prepare_normtrace(normtrace(q, s), gamma)
            rows.append(row(code, pd_set_normtrace(code, ell)))
        except (CodeError, PDError) as exc:
            rows.append({"curve": f"X_{{{q},{s}}}", "gamma": gamma, "family": "nt-burst", "error": str(exc)})
    for r in rows:
        if "error" in r:
            print(f"{r['curve']:>10} gamma={r['gamma']:>3} {r['family']:>8}  not built: {r['error']}")
        else:
            print(f"{r['curve']:>10} gamma={r['gamma']:>3} {r['family']:>8}  k={r['k']:>3} t={r['t']:>3} "
                  f"size={r['size']:>3} (raw {r['pre_dedup']:>3}) bound={r['gordon']}")
    print(json.dumps({"config": asdict(cfg), "rows": rows}))


if __name__ == "__main__":
    main()
