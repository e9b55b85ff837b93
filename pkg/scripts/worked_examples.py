"""Print greedy and quasi-greedy expansions of 1 for a list of bases.

    python3 scripts/worked_examples.py [--json] [--max-steps N]
"""
from __future__ import annotations

import argparse
import json
from dataclasses import dataclass, field

from cantorbase import parse_base, quasi_greedy_table
from cantorbase.automaton import sofic_verdict, Sofic


@dataclass
class Config:
    bases: list[str] = field(default_factory=lambda: [
        "per:[3,phi,phi]",
        "per:[(1+sqrt(13))/2,(5+sqrt(13))/6]",
        "pre:[sqrt(13)] per:[(1+sqrt(13))/2,(5+sqrt(13))/6]",
        "per:[sqrt(6),3,(2+sqrt(6))/3]",
        "per:[(16+5*sqrt(10))/9,9]",
        "per:[phi*phi,3+sqrt(5)]",
    ])
    max_steps: int = 4096


def run(cfg: Config) -> list[dict]:
    rows = []
    for text in cfg.bases:
        base = parse_base(text)
        table = quasi_greedy_table(base, cfg.max_steps)
        verdict = sofic_verdict(base, cfg.max_steps) if base.is_alternate() else None
        rows.append({
            "base": text,
            "greedy": [str(w) for w in table.expansions],
            "quasi_greedy": [str(w) for w in table.dstar],
            "automaton_states": len(verdict.automaton) if isinstance(verdict, Sofic) else None,
        })
    return rows


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--json", action="store_true")
    ap.add_argument("--max-steps", type=int, default=Config.max_steps)
    args = ap.parse_args()
    rows = run(Config(max_steps=args.max_steps))
    if args.json:
        print(json.dumps(rows, indent=2))
        return
    for r in rows:
        print(r["base"])
        for i, (d, ds) in enumerate(zip(r["greedy"], r["quasi_greedy"])):
            print(f"  class {i}: d = {d:<16} d* = {ds}")
        if r["automaton_states"] is not None:
            print(f"  accessible automaton: {r['automaton_states']} states")


if __name__ == "__main__":
    main()
