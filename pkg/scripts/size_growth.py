#!/usr/bin/env python3
"""Measure how the updated model grows against its analytic cap.

For each variable count m, translate an alternating-quantifier QBF and track
the world count after every update next to the running bound |W0| * e^i.
The final column shows how much of the worst case the instance actually uses.
"""

from __future__ import annotations

import argparse

from dbu import extract_parameters, reduce_tqbf_to_dbu, solve_dbu, world_count_bound
from dbu.reductions import parse_qbf


def alternating_qbf(m: int) -> str:
    prefix = " ".join(f"{'E' if i % 2 else 'A'} x{i}" for i in range(1, m + 1))
    matrix = " | ".join(f"x{i}" for i in range(1, m + 1))
    return f"{prefix} . ({matrix})"


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-m", type=int, default=6)
    args = parser.parse_args()

    print(f"{'m':>2} {'|W0|':>5} {'per-step worlds':<30} {'final':>6} {'bound':>6} {'used':>6}")
    for m in range(1, args.max_m + 1):
        inst = reduce_tqbf_to_dbu(parse_qbf(alternating_qbf(m)))
        params = extract_parameters(inst)
        counts: list[int] = []
        verdict = solve_dbu(inst, on_step=lambda i, s: counts.append(len(s.model.worlds)))
        initial = len(inst.initial.model.worlds)
        bound = world_count_bound(initial, params.e, params.u)
        steps = ",".join(str(c) for c in counts)
        print(
            f"{m:>2} {initial:>5} {steps:<30} {counts[-1]:>6} {bound:>6}"
            f" {counts[-1] / bound:>6.1%}  -> {'TRUE' if verdict else 'FALSE'}"
        )
    return 0


if __name__ == "__main__":
    import sys

    sys.exit(main())
