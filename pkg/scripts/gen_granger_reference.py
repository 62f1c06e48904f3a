#!/usr/bin/env python3
"""Freeze Granger-causality reference values into tests/fixtures/.

Run once (requires statsmodels, which is NOT a runtime dependency):

    python scripts/gen_granger_reference.py

For 50 seeded synthetic datasets this records the ssr-based F-test p-value
and F statistic from statsmodels.tsa.stattools.grangercausalitytests. The
test suite replays the same datasets through the in-tree implementation and
asserts agreement, without importing statsmodels at test time.
"""

import json
from pathlib import Path

import numpy as np
from statsmodels.tsa.stattools import grangercausalitytests

from stonklab.simgen import VarSpec, gen_pair

OUT = Path(__file__).resolve().parent.parent / "tests" / "fixtures" / "granger_reference.json"


def case_params(i: int) -> dict:
    ns = (80, 120, 160, 200, 240)
    couplings = (0.0, 0.2, 0.4, 0.8)
    return {
        "n": ns[i % len(ns)],
        "coupling": couplings[i % len(couplings)],
        "lag": 1 + (i % 3),
        "ar_x": (0.0, 0.3, 0.6)[i % 3],
        "ar_y": (0.0, 0.2, 0.5)[(i + 1) % 3],
        "noise_std": (0.5, 1.0, 2.0)[i % 3],
        "seed": 1000 + 17 * i,
        "test_lag": 1 + (i % 4),
    }


def main() -> None:
    cases = []
    for i in range(50):
        params = case_params(i)
        spec = VarSpec(
            n=params["n"],
            coupling=params["coupling"],
            lag=params["lag"],
            ar_x=params["ar_x"],
            ar_y=params["ar_y"],
            noise_std=params["noise_std"],
            seed=params["seed"],
        )
        xs, ys = gen_pair(spec)
        data = np.column_stack([np.array(ys.values), np.array(xs.values)])
        res = grangercausalitytests(data, maxlag=[params["test_lag"]], verbose=False)
        f_ref, p_ref, _, _ = res[params["test_lag"]][0]["ssr_ftest"]
        cases.append({**params, "p_ref": float(p_ref), "f_ref": float(f_ref)})
    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_text(json.dumps({"cases": cases}, indent=2) + "\n", encoding="utf-8")
    print(f"wrote {OUT} with {len(cases)} cases")


if __name__ == "__main__":
    main()
