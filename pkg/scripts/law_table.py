"""Character moments of each category next to its limit law, with cumulants.

    python scripts/law_table.py --K 6
"""

from __future__ import annotations

from dataclasses import dataclass

from _config import parse_config

from easywg.categories import ALL_CATEGORIES, CategoryId
from easywg.freeprob import CATEGORY_LAW, Kind, cumulants_from_moments, law_moments, side_of
from easywg.weingarten import char_moment_asymptotic


@dataclass
class Config:
    K: int = 6


def main(cfg: Config) -> None:
    for c in ALL_CATEGORIES:
        law = CATEGORY_LAW[c]
        moments = [char_moment_asymptotic(c, k) for k in range(1, cfg.K + 1)]
        oracle = law_moments(law, cfg.K).entries
        mark = "ok" if tuple(moments) == oracle else "MISMATCH"
        print(f"{c.label:>4}  law {law.symbol:<3} [{mark}]")
        for k, m in enumerate(moments, start=1):
            print(f"      m_{k} = {m}")
        if c is not CategoryId.O_STAR:
            kind = side_of(c)
            kappa = cumulants_from_moments(law_moments(law, cfg.K)).entries
            label = "free" if kind is Kind.FREE else "classical"
            print(f"      {label} cumulants: " + ", ".join(str(x) for x in kappa))


if __name__ == "__main__":
    main(parse_config(Config, __doc__))
