"""Regenerate src/cayleyhash/data/correction_cases.json.

Each record holds a residue class mod 4, the correcting matrix as printed,
and a det-1 integer matrix congruent to it mod 4 (null when the printed
matrix has det != 1 mod 4, so that no such lift exists).
"""

import json
from pathlib import Path

from cayleyhash.lifting import small_sl2_matrices

PRINTED = [
    ((1, 0, 1, 1), (1, 0, 1, 1)),
    ((1, 0, 2, 1), (1, 0, 2, 1)),
    ((1, 0, 3, 1), (1, 0, 3, 1)),
    ((2, 1, 1, 1), (1, 3, 3, 2)),
    ((2, 3, 3, 1), (3, 1, 1, 2)),
    ((2, 3, 1, 2), (0, 1, 3, 2)),
    ((2, 1, 1, 3), (1, 3, 3, 2)),
    ((2, 3, 3, 3), (1, 1, 1, 2)),
    ((3, 3, 0, 1), (3, 3, 0, 1)),
    ((3, 0, 0, 3), (-1, 0, 0, -1)),
    ((3, 0, 1, 3), (-1, 0, 1, -1)),
    ((3, 0, 2, 3), (-1, 0, 2, -1)),
    ((3, 0, 3, 3), (-1, 0, 3, -1)),
    ((3, 2, 2, 3), (-1, 2, 2, -5)),
]


def det(m):
    return m[0] * m[3] - m[1] * m[2]


def lift(s):
    if det(s) == 1:
        return s
    target = tuple(x % 4 for x in s)
    for cand in small_sl2_matrices():
        if tuple(x % 4 for x in cand) == target:
            return cand
    return None


def main():
    cases = []
    for i, (residue, printed) in enumerate(PRINTED, 1):
        lifted = lift(printed)
        record = {
            "case": i,
            "residue": list(residue),
            "residue_det_mod4": det(residue) % 4,
            "printed_S": list(printed),
            "printed_det": det(printed),
            "lifted_S": None if lifted is None else list(lifted),
        }
        if det(residue) % 4 != 1:
            record["note"] = "residue has det != 1 mod 4; no det-1 integer matrix lies in this class"
        cases.append(record)
    out = Path(__file__).resolve().parents[1] / "src" / "cayleyhash" / "data" / "correction_cases.json"
    out.write_text(json.dumps({"bound": 5, "cases": cases}, indent=2) + "\n")
    print(f"wrote {len(cases)} cases to {out}")


if __name__ == "__main__":
    main()
