#!/usr/bin/env python3
"""Regenerate the packaged example modules under src/homflyh/data/.

Run from the repository root:

    python3 demos/generate_data.py

The files are deterministic; regeneration is only needed when the module
schema changes.  Every module is validated (all operator relations checked
symbolically) before it is written.
"""

from __future__ import annotations

import json
from pathlib import Path

from homflyh.tracealg import (A, B, SkewModule, check_module, free_complex,
                              free_module, right_mult, triv_theta, triv_y)

OUT = Path(__file__).resolve().parent.parent / "src" / "homflyh" / "data"


def two_term_a2() -> SkewModule:
    """A fixed two-term complex of free A(2)-modules, differential given by
    right multiplication with theta_1 - theta_2."""
    F = free_module(A(2))
    op = right_mult(F, 1, (0, 0), (1,)) + right_mult(F, -1, (0, 0), (2,))
    return free_complex(A(2), [(2, 0), (0, 0)], {(1, 0): op})


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    named = {
        "free-a1": free_module(A(1)),
        "free-a2": free_module(A(2)),
        "free-b2": free_module(B(2)),
        "triv-theta-2": triv_theta(2),
        "triv-y-2": triv_y(2),
        "two-term-a2": two_term_a2(),
    }
    for name, mod in named.items():
        errs = check_module(mod)
        if errs:
            raise SystemExit(f"{name}: relations fail: {errs}")
        path = OUT / f"{name}.json"
        path.write_text(json.dumps(mod.to_json(), sort_keys=True,
                                   separators=(",", ":")) + "\n")
        print(f"wrote {path.relative_to(OUT.parent.parent.parent)}"
              f" (rank {mod.rank})")


if __name__ == "__main__":
    main()
