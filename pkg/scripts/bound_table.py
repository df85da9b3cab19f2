"""Sweep (n, k, r), write the bound comparison CSV and count strict improvements."""

import argparse
from dataclasses import dataclass
from pathlib import Path

from lrckit.cli import TABLE_HEADER, sweep_triples, table_row


@dataclass
class SweepConfig:
    n_min: int = 4
    n_max: int = 30
    r_min: int = 2
    r_max: int = 6
    only_applicable: bool = True
    out: Path = Path("results/bound_table.csv")


def run(cfg: SweepConfig) -> list[str]:
    rows = [table_row(*t) for t in sweep_triples(cfg.n_min, cfg.n_max, cfg.r_min, cfg.r_max, cfg.only_applicable)]
    cfg.out.parent.mkdir(parents=True, exist_ok=True)
    cfg.out.write_text(TABLE_HEADER + "\n" + "".join(r + "\n" for r in rows))
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-max", type=int, default=SweepConfig.n_max)
    ap.add_argument("--r-max", type=int, default=SweepConfig.r_max)
    ap.add_argument("--all", action="store_true", help="keep triples where the improved bound does not apply")
    ap.add_argument("--out", type=Path, default=SweepConfig.out)
    a = ap.parse_args()
    cfg = SweepConfig(n_max=a.n_max, r_max=a.r_max, only_applicable=not a.all, out=a.out)
    rows = run(cfg)
    cols = TABLE_HEADER.split(",")
    strict = sum(1 for r in rows if r.split(",")[cols.index("strict")] == "1")
    print(f"{len(rows)} triples, {strict} with improved < gopalan -> {cfg.out}")


if __name__ == "__main__":
    main()
