"""Exact truncated-character moments against their large-n limits.

For each group, k and t = s/n, tabulates |Tr(G_ks W_kn) - poly(t)| over n and
the rescaled error n * err, whose boundedness is the 1/n decay.

    python scripts/convergence_table.py --groups o s --ns 8 12 16 --max-k 4
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from _config import parse_config, write_json

from easywg.categories import parse_category
from easywg.weingarten import char_moment_asymptotic, char_moment_exact


@dataclass
class Config:
    groups: tuple = ("o", "s", "h", "b")
    ns: tuple = (8, 12, 16, 24)
    max_k: int = 5
    ts: tuple = ("1/2", "1")
    out: str = ""


def main(cfg: Config) -> None:
    rows = []
    header = "group  k    t  " + "".join(f"{'n=' + str(n):>12}" for n in cfg.ns) + "    max n*err"
    print(header)
    for g in cfg.groups:
        c = parse_category(g)
        for k in range(1, cfg.max_k + 1):
            poly = char_moment_asymptotic(c, k)
            for t_text in cfg.ts:
                t = Fraction(t_text)
                errs = [abs(char_moment_exact(c, n, int(t * n), k) - poly(t)) for n in cfg.ns]
                scaled = max(n * e for n, e in zip(cfg.ns, errs))
                cells = "".join(f"{float(e):12.3e}" for e in errs)
                print(f"{c.label:>5} {k:2d} {t_text:>4}  {cells}    {float(scaled):9.3f}")
                rows.append({"group": c.label, "k": k, "t": t_text, "errors": [str(e) for e in errs]})
    write_json(cfg.out, rows)


if __name__ == "__main__":
    main(parse_config(Config, __doc__))
