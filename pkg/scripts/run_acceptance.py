"""Run every acceptance suite and write the JSON report next to a human summary."""

import argparse
import sys
from dataclasses import dataclass

from qmf.suite import SuiteConfig, dumps_report, human, run_suite


@dataclass
class Config:
    seed: int = 42
    cases: int | None = None
    output: str = "acceptance_report.json"


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=Config.seed)
    ap.add_argument("--cases", type=int, default=Config.cases)
    ap.add_argument("--output", default=Config.output)
    cfg = Config(**vars(ap.parse_args(argv)))
    report, results = run_suite(SuiteConfig(seed=cfg.seed, cases=cfg.cases))
    with open(cfg.output, "w") as fh:
        fh.write(dumps_report(report) + "\n")
    print(human(results))
    print(f"report written to {cfg.output}")
    return 0 if report["passed"] else 1


if __name__ == "__main__":
    sys.exit(main())
