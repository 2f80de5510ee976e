"""Check that D_1 g - (q-1) E g is modular of weight q+1, type 1, by solving in rendered u-series."""

import argparse
from dataclasses import dataclass

from qmf.fields import get_field
from qmf.structure import modular_basis, serre_completion


@dataclass
class Config:
    qs: tuple = (2, 3, 5)
    prec: int = 26


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--q", type=int, action="append", default=None)
    ap.add_argument("--prec", type=int, default=Config.prec)
    a = ap.parse_args(argv)
    cfg = Config(tuple(a.q) if a.q else Config.qs, a.prec)
    for q in cfg.qs:
        F = get_field(q)
        co, res = serre_completion(F, cfg.prec)
        basis = modular_basis(F, q + 1, 1)
        if co is None:
            print(f"q={q}: not in span (residual {res})")
            continue
        combo = " + ".join(f"({c})*{b}" for c, b in zip(co, basis))
        print(f"q={q}: D_1 g - {(q - 1) % F.p} E g = {combo}   residual zero: {res.is_zero()}")


if __name__ == "__main__":
    main()
