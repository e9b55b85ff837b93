"""Count minimal forbidden factors of the beta-shift for growing lengths.

Writes a CSV (length, count, shortest examples) per base to stdout.
"""
from __future__ import annotations

import argparse
import csv
import sys
from dataclasses import dataclass, field

from cantorbase import parse_base
from cantorbase.automaton import build_automaton, forbidden_factors, trim_accessible
from cantorbase.words import format_finite


@dataclass
class SweepConfig:
    bases: list[str] = field(default_factory=lambda: [
        "per:[phi,phi]",
        "per:[3,phi,phi]",
        "per:[(1+sqrt(13))/2,(5+sqrt(13))/6]",
        "per:[phi*phi,3+sqrt(5)]",
    ])
    max_len: int = 8
    examples: int = 4


def sweep(cfg: SweepConfig, out=sys.stdout) -> None:
    writer = csv.writer(out)
    writer.writerow(["base", "length", "count", "examples"])
    for text in cfg.bases:
        a = trim_accessible(build_automaton(parse_base(text)))
        words = forbidden_factors(a, cfg.max_len)
        for n in range(1, cfg.max_len + 1):
            of_len = [w for w in words if len(w) == n]
            writer.writerow([text, n, len(of_len), " ".join(format_finite(w) for w in of_len[:cfg.examples])])


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-len", type=int, default=SweepConfig.max_len)
    sweep(SweepConfig(max_len=ap.parse_args().max_len))
