"""Generate data/actors.csv: a synthetic 300-row covariate table whose
marginals (min, quartiles, median, mean, max) match the reference summary.

Covariates are drawn independently; values at the quartile positions are pinned
so that linear-interpolation quantiles land exactly on the reference numbers.
Run once; the output is checked in.
"""
import csv
import sys
from pathlib import Path

import numpy as np

N = 300
# (min, q1, median, mean, q3, max, step)
REFERENCE = {
    "educ": (6, 10, 12, 12.59, 15, 18, 1),
    "age": (17, 28, 39, 42.18, 53, 88, 1),
    "income": (500, 12500, 20000, 19400, 30000, 30000, 500),
    "pric": (52.80, 58.79, 61.05, 61.10, 62.16, 70.13, 0.01),
}
ADOPTERS = 108
MALES = 174

# Sorted positions pinned to each summary value: with n = 300 the type-7
# quartiles interpolate between (74, 75), (149, 150) and (224, 225).
PINS = {0: "min", 74: "q1", 75: "q1", 149: "med", 150: "med", 224: "q3", 225: "q3", 299: "max"}
SEGMENTS = [(1, 74, "min", "q1"), (76, 149, "q1", "med"),
            (151, 224, "med", "q3"), (226, 299, "q3", "max")]


def column(rng, spec):
    lo, q1, med, mean, q3, hi, step = spec
    named = {"min": lo, "q1": q1, "med": med, "q3": q3, "max": hi}
    units = lambda v: int(round(v / step))
    vals = np.zeros(N, dtype=np.int64)
    bounds = np.zeros((N, 2), dtype=np.int64)
    for pos, key in PINS.items():
        vals[pos] = units(named[key])
        bounds[pos] = vals[pos]
    for start, stop, a, b in SEGMENTS:
        ua, ub = units(named[a]), units(named[b])
        vals[start:stop] = rng.integers(ua, ub + 1, size=stop - start)
        bounds[start:stop] = (ua, ub)
    target = units(mean * N)
    free = [i for i in range(N) if i not in PINS]
    while vals.sum() != target:
        i = free[rng.integers(len(free))]
        d = 1 if vals.sum() < target else -1
        if bounds[i, 0] <= vals[i] + d <= bounds[i, 1]:
            vals[i] += d
    vals.sort()
    out = vals * step
    return np.round(out, 2) if step < 1 else out.astype(np.int64)


def check(name, values, spec):
    lo, q1, med, mean, q3, hi, _ = spec
    got = (values.min(), *np.quantile(values, [0.25, 0.5]), values.mean(),
           np.quantile(values, 0.75), values.max())
    want = (lo, q1, med, mean, q3, hi)
    for g, w in zip(got, want):
        if abs(g - w) > 0.005 + 1e-9:
            sys.exit(f"{name}: summary {got} does not match {want}")


def main():
    rng = np.random.default_rng(20240517)
    cols = {}
    for name, spec in REFERENCE.items():
        v = column(rng, spec)
        check(name, v, spec)
        cols[name] = rng.permutation(v)
    gender = np.array([1] * MALES + [0] * (N - MALES))
    behavior = np.array([1] * ADOPTERS + [0] * (N - ADOPTERS))
    cols["gender"] = rng.permutation(gender)
    cols["behavior"] = rng.permutation(behavior)

    path = Path(__file__).resolve().parent.parent / "data" / "actors.csv"
    order = ["educ", "age", "income", "gender", "pric", "behavior"]
    with path.open("w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(order)
        for i in range(N):
            w.writerow([f"{cols['pric'][i]:.2f}" if c == "pric" else int(cols[c][i]) for c in order])
    print(f"wrote {path}")


if __name__ == "__main__":
    main()
