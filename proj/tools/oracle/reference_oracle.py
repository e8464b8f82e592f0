#!/usr/bin/env python3
"""Independent dense-matrix evaluation of the reference bundle.

Reimplements the seven reference properties with numpy only (no code shared
with the C++ library) and prints one row per design variant. Used to freeze
expected values in the C++ test-suite and to cross-check the sweep partition.
"""
import itertools
import json
import sys

import numpy as np

STATES = ["S0", "S1", "S2", "S3", "S4", "S5", "S6", "S7", "S8"]
LABEL = {"IDLE": 0, "SCENE": 1, "SENSOR": 2, "PLANNING": 3, "ARM": 4,
         "REACH": 5, "AVOID": 6, "FAULT": 7, "DONE": 8}

CONSTANT_ROWS = {
    0: {1: 1.0},
    2: {3: 0.68, 1: 0.3, 7: 0.02},
    5: {8: 0.78, 4: 0.1, 7: 0.12},
    6: {4: 0.45, 3: 0.3, 7: 0.25},
    7: {0: 1.0},
    8: {0: 1.0},
}

SP = {"SP1": {1: 0.496, 2: 0.496, 7: 0.008},
      "SP2": {1: 0.2997, 2: 0.6993, 7: 0.001},
      "SP3": {1: 0.04975, 2: 0.94525, 7: 0.005}}
MP = {"MP1": {3: 0.197, 1: 0.197, 4: 0.591, 7: 0.015},
      "MP2": {3: 0.0495, 1: 0.099, 4: 0.8415, 7: 0.01}}
OM = {"OM1": {4: 0.2, 5: 0.3, 6: 0.3, 7: 0.2},
      "OM2": {4: 0.04, 5: 0.45, 6: 0.45, 7: 0.06}}

SC = [("phi1", ">=", 0.40), ("phi4", "<=", 0.10), ("phi7", "<=", 0.30)]


def matrix(sp, mp, om):
    p = np.zeros((9, 9))
    rows = dict(CONSTANT_ROWS)
    rows[1], rows[3], rows[4] = SP[sp], MP[mp], OM[om]
    for s, row in rows.items():
        for t, v in row.items():
            p[s, t] = v
    return p


def until(p, avoid, target, start=0):
    # absorbing avoid/target, then solve on states that can reach target
    n = len(p)
    q = p.copy()
    for s in avoid | target:
        q[s, :] = 0.0
        q[s, s] = 1.0
    can = set(target)
    changed = True
    while changed:
        changed = False
        for s in range(n):
            if s not in can and s not in avoid and any(q[s, t] > 0 for t in can):
                can.add(s)
                changed = True
    maybe = [s for s in range(n) if s in can and s not in target]
    x = np.zeros(n)
    for t in target:
        x[t] = 1.0
    if maybe:
        a = np.eye(len(maybe)) - q[np.ix_(maybe, maybe)]
        b = q[np.ix_(maybe, sorted(target))].sum(axis=1)
        x[maybe] = np.linalg.solve(a, b)
    return x[start]


def hitting_time(p, target, start=0):
    n = len(p)
    rest = [s for s in range(n) if s not in target]
    a = np.eye(len(rest)) - p[np.ix_(rest, rest)]
    h = np.linalg.solve(a, np.ones(len(rest)))
    x = np.zeros(n)
    x[rest] = h
    return x[start]


def stationary(p):
    # reference chain is irreducible
    n = len(p)
    a = (p.T - np.eye(n))
    a[-1, :] = 1.0
    b = np.zeros(n)
    b[-1] = 1.0
    return np.linalg.solve(a, b)


def evaluate(p):
    pi = stationary(p)
    return {
        "phi1": until(p, {LABEL["FAULT"]}, {LABEL["DONE"]}),
        "phi2": hitting_time(p, {LABEL["DONE"]}),
        "phi3": pi[LABEL["DONE"]],
        "phi4": pi[LABEL["FAULT"]],
        "phi5": p[LABEL["AVOID"], LABEL["FAULT"]] * pi[LABEL["AVOID"]],
        "phi6": p[LABEL["ARM"], LABEL["FAULT"]] * pi[LABEL["ARM"]],
        "phi7": pi[LABEL["SCENE"]],
    }


def passes(v):
    ok = True
    for pid, op, thr in SC:
        ok &= (v[pid] >= thr) if op == ">=" else (v[pid] <= thr)
    return ok


def main():
    out = []
    for k, (sp, mp, om) in enumerate(itertools.product(SP, MP, OM), start=1):
        v = evaluate(matrix(sp, mp, om))
        out.append({"theta": k, "variant": f"{sp},{mp},{om}",
                    "values": v, "pass": bool(passes(v))})
    if "--json" in sys.argv:
        json.dump(out, sys.stdout, indent=1)
        print()
        return
    for row in out:
        vals = " ".join(f"{row['values'][f'phi{i}']:.15g}" for i in range(1, 8))
        print(row["theta"], row["variant"], vals, "pass" if row["pass"] else "fail")


if __name__ == "__main__":
    main()
