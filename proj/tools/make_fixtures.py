#!/usr/bin/env python3
"""Regenerate the N=8 golden fixtures from their closed forms.

Every value here is written out symbolically (square roots of small integers)
and evaluated in 50-digit arithmetic; nothing is computed by iterating
operators. Output: JSON with a header and row-major {re, im} entries printed to
15 significant digits.

    python3 tools/make_fixtures.py fixtures/
"""

import json
import sys
from pathlib import Path

from mpmath import mp, mpf, sqrt, acos, pi

mp.dps = 50

S5 = sqrt(5)
R = sqrt(5 * S5 - 11)
ALPHA = acos(-5 + 2 * S5)
THETA = pi / 5
# Target amplitude of the exact two-step search on 8 states.
VT = ((2 * (S5 - 1)), (R * (S5 + 1)))
VT = (VT[0] / sqrt(8), VT[1] / sqrt(8))


def c(re, im=0):
    return {"re": float(mp.nstr(re, 15)), "im": float(mp.nstr(im, 15))}


def header(source, k=2):
    return {
        "n": 3,
        "targets": [0],
        "k": k,
        "alpha": float(mp.nstr(ALPHA, 15)),
        "theta": float(mp.nstr(THETA, 15)),
        "source": source,
    }


def final_state():
    entries = [c(*VT)] + [c(0)] * 7
    return {"header": header("exact two-step search final state, N=8"),
            "rows": 8, "cols": 1, "entries": entries}


def shortcut_matrix():
    a = (VT[0] / sqrt(8), VT[1] / sqrt(8))
    rows = [[c(*a)] * 8]
    # Row r >= 1 is the conjugate of the r-th Gram-Schmidt vector about the
    # uniform state, seeded with e_0..e_6: (r-1 zeros, (8-r)/norm, -1/norm ...).
    for r in range(1, 8):
        m = 8 - r  # number of trailing -1 entries
        norm = sqrt(m * (m + 1))
        row = [c(0)] * (r - 1) + [c(mpf(m) / norm)] + [c(-1 / norm)] * m
        rows.append(row)
    return {"header": header("shortcut unitary, N=8, single target, seeds e_0..e_6"),
            "rows": 8, "cols": 8, "entries": [e for row in rows for e in row]}


def iterated_kernel():
    a = (VT[0] / sqrt(8), VT[1] / sqrt(8))
    b = ((2 - 2 * S5) / 8, R * (1 + S5) / 8)
    cc = ((610 - 274 * S5) / 8, R * (137 - 55 * S5) / 8)
    d = ((-102 + 46 * S5) / 8, -R * (23 - 9 * S5) / 8)
    rows = [[c(*a)] * 8]
    for r in range(1, 8):
        row = [c(*b)]
        for j in range(1, 8):
            row.append(c(*cc) if j == r else c(*d))
        rows.append(row)
    return {"header": header("second power of the search kernel, N=8"),
            "rows": 8, "cols": 8, "entries": [e for row in rows for e in row]}


def dump(doc):
    lines = ["{",
             ' "header": ' + json.dumps(doc["header"]) + ",",
             ' "rows": %d,' % doc["rows"],
             ' "cols": %d,' % doc["cols"],
             ' "entries": [']
    body = ["  " + json.dumps(e) for e in doc["entries"]]
    lines.append(",\n".join(body))
    lines += [" ]", "}"]
    return "\n".join(lines) + "\n"


def main():
    out = Path(sys.argv[1] if len(sys.argv) > 1 else "fixtures")
    out.mkdir(parents=True, exist_ok=True)
    for name, doc in [("final_state_n3_k2.json", final_state()),
                      ("shortcut_n3_k2.json", shortcut_matrix()),
                      ("kernel_power_n3_k2.json", iterated_kernel())]:
        (out / name).write_text(dump(doc))


if __name__ == "__main__":
    main()
