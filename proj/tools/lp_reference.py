#!/usr/bin/env python3
"""Reference objective for an instance file, solved as one linear program.

    min z  s.t.  z >= w_i * sum_j p_ij * (u_ij + v_ij),
                 u_ij >= |x - x_ij|,  v_ij >= |y - y_ij|        (L1)
                 d_ij >= |x - x_ij|,  d_ij >= |y - y_ij|        (Linf, d replaces u + v)

Usage: lp_reference.py instance.json [...]
"""
import json
import sys

import numpy as np
from scipy.optimize import linprog
from scipy.sparse import lil_matrix


def solve(doc):
    linf = doc.get("metric", "l1") == "linf"
    locs = []
    for i, pt in enumerate(doc["points"]):
        w = pt.get("weight", 1.0)
        for loc in pt["locations"]:
            locs.append((i, loc["x"], loc["y"], w * loc["p"]))
    n = len(doc["points"])
    k = len(locs)
    per = 1 if linf else 2
    # variables: x, y, z, then per-location auxiliaries
    nv = 3 + per * k
    rows = n + 4 * k
    a = lil_matrix((rows, nv))
    b = np.zeros(rows)
    r = 0
    for i in range(n):
        a[r, 2] = -1.0
        for j, (owner, _, _, wp) in enumerate(locs):
            if owner == i:
                for s in range(per):
                    a[r, 3 + per * j + s] = wp
        r += 1
    for j, (_, lx, ly, _) in enumerate(locs):
        ux = 3 + per * j
        uy = ux if linf else ux + 1
        for coord, val, aux in ((0, lx, ux), (1, ly, uy)):
            a[r, coord] = 1.0
            a[r, aux] = -1.0
            b[r] = val
            r += 1
            a[r, coord] = -1.0
            a[r, aux] = -1.0
            b[r] = -val
            r += 1
    c = np.zeros(nv)
    c[2] = 1.0
    bounds = [(None, None)] * 3 + [(0, None)] * (per * k)
    res = linprog(c, A_ub=a.tocsr(), b_ub=b, bounds=bounds, method="highs",
                  options={"primal_feasibility_tolerance": 1e-10, "dual_feasibility_tolerance": 1e-10})
    if res.status != 0:
        raise RuntimeError(res.message)
    return res.fun, res.x[0], res.x[1]


if __name__ == "__main__":
    for path in sys.argv[1:]:
        with open(path) as f:
            value, x, y = solve(json.load(f))
        print(f"{path}: objective={value!r} center=({x!r}, {y!r})")
