"""Tabulate where the non-vanishing hypothesis holds, by weight and depth, for one q and type."""

import argparse
from dataclasses import dataclass

from qmf.binomial import nvh_check
from qmf.errors import QmfError


@dataclass
class Config:
    q: int = 3
    m: int = 1
    max_k: int = 24
    max_l: int = 4


def table(cfg: Config) -> list[str]:
    rows = ["k\\l " + " ".join(f"{l:>2}" for l in range(1, cfg.max_l + 1))]
    for k in range(2, cfg.max_k + 1):
        cells = []
        if (k - 2 * cfg.m) % (cfg.q - 1):  # no nonzero forms of this bigrade
            rows.append(f"{k:>3} " + " ".join([" ."] * cfg.max_l))
            continue
        for l in range(1, cfg.max_l + 1):
            try:
                rep = nvh_check(k, l, cfg.m, cfg.q)
            except QmfError:  # weight below 2l or bigrade impossible
                cells.append(" .")
                continue
            cells.append(" +" if rep.holds else " x")
        rows.append(f"{k:>3} " + " ".join(cells))
    return rows


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    for f in ("q", "m", "max_k", "max_l"):
        ap.add_argument(f"--{f.replace('_', '-')}", dest=f, type=int, default=getattr(Config, f))
    cfg = Config(**vars(ap.parse_args(argv)))
    print(f"q={cfg.q} m={cfg.m}: + holds, x fails, . not applicable")
    print("\n".join(table(cfg)))


if __name__ == "__main__":
    main()
