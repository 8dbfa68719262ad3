"""Regenerate the admissible-gamma rows two ways and compare them.

The closed-form rule in ``gamma_candidates`` is checked against a direct
computation: build the orbit-ordered Hermitian code for every gamma and ask
whether its orbit-prefix information positions leave O_q, O_{q+1}, O_{q+2}
entirely among the checks.
"""
from __future__ import annotations

import argparse
import json
from dataclasses import asdict, dataclass

from agpd.autgroup import sigma_orbits
from agpd.code import CodeError, build_code, hermitian_info_positions
from agpd.curve import Ordering, hermitian
from agpd.pdset import gamma_candidates


@dataclass
class Config:
    qs: tuple[int, ...] = (2, 3, 4, 5)


def direct(q: int) -> set[int]:
    C = hermitian(q)
    out = set()
    for gamma in range(1, q**3):
        code = build_code(C, gamma, Ordering.ORBIT)
        try:
            info = set(hermitian_info_positions(code).info)
        except CodeError:
            continue
        tail = sigma_orbits(C, code.table).orbits[q - 1:]
        if not any(info & set(o) for o in tail):
            out.add(gamma)
    return out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--q", type=int, nargs="*", default=list(Config.qs))
    cfg = Config(tuple(ap.parse_args(argv).q))
    rows = []
    for q in cfg.qs:
        rule = {c.gamma for c in gamma_candidates(q)}
        seen = direct(q)
        rows.append({"q": q, "rule": sorted(rule), "direct": sorted(seen),
                     "only_rule": sorted(rule - seen), "only_direct": sorted(seen - rule)})
        print(f"q={q}: {len(rule)} by rule, {len(seen)} direct, "
              f"rule-only={sorted(rule - seen)} direct-only={sorted(seen - rule)}")
    print(json.dumps({"config": asdict(cfg), "rows": rows}))


if __name__ == "__main__":
    main()
