"""Classify every singly generated category at a point bound.

    python scripts/classification_report.py --bound 6 --no-crossing
    python scripts/classification_report.py --bound 4 --out runs/classify4.json

Prints the tally of identified categories and the unidentified generators,
grouped by closure size.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass

from _config import parse_config, write_json

from easywg.closure import verify_classification
from easywg.partition import format_partition


@dataclass
class Config:
    bound: int = 4
    crossing: bool = True
    # without the crossing axiom, also close crossing generators
    all_generators: bool = False
    show: int = 12
    out: str = ""


def main(cfg: Config) -> None:
    report = verify_classification(cfg.bound, cfg.crossing, noncrossing_only=False if cfg.all_generators else None)
    tally = Counter(e.identified_as.label if e.identified_as else "unidentified" for e in report.entries)
    axioms = "with crossing" if cfg.crossing else "without crossing"
    print(f"{len(report.entries)} generators, bound {cfg.bound}, {axioms}")
    for name, count in sorted(tally.items()):
        print(f"  {name:>12}  {count}")

    by_size = defaultdict(list)
    for e in report.unidentified:
        by_size[e.closure_size].append(format_partition(e.generator))
    for size, gens in sorted(by_size.items()):
        print(f"unidentified, closure size {size}: {len(gens)} generators, e.g. {', '.join(gens[: cfg.show])}")
    if report.o_star_flagged:
        print(f"O*-flagged: {len(report.o_star_flagged)}")
    write_json(cfg.out, report.to_json())


if __name__ == "__main__":
    main(parse_config(Config, __doc__))
