#!/usr/bin/env python3
"""Run the full verification batch and print the criterion scoreboard.

Writes the four stock model files, runs every subcommand over them into
a results directory, then aggregates the outputs into the ten-line
verdict.  Exit status is 0 only if every criterion passes; the two
expected failures for positive-mass models (see README) leave it at 1.
"""

import argparse
import json
import sys
from pathlib import Path

from ahiso.cli import emit_summary, run
from ahiso.profiles import hyperbolic_profile

MODELS = {
    "hyperbolic": {"type": "hyperbolic"},
    "ads_m05": {"type": "ads_schwarzschild", "mass": 0.5},
    "ads_m1": {"type": "ads_schwarzschild", "mass": 1.0},
    "ads_m2": {"type": "ads_schwarzschild", "mass": 2.0},
}


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out-dir", default="results", help="output directory")
    args = parser.parse_args()

    out = Path(args.out_dir)
    model_dir = out / "models"
    res = out / "runs"
    model_dir.mkdir(parents=True, exist_ok=True)
    res.mkdir(parents=True, exist_ok=True)

    paths = {}
    for name, cfg in MODELS.items():
        p = model_dir / f"{name}.json"
        p.write_text(json.dumps(cfg, indent=2) + "\n")
        paths[name] = str(p)

    jobs = []
    for name in MODELS:
        jobs += [
            (f"{name}_spheres.csv", ["spheres", "--model", paths[name], "--n", "50"]),
            (f"{name}_stability.csv", ["stability", "--model", paths[name], "--n", "30"]),
            (f"{name}_imcf.csv", ["imcf", "--model", paths[name], "--s0", "2", "--t-max", "10", "--dt", "1e-2"]),
            (f"{name}_profile.csv", ["profile", "--model", paths[name], "--v-min", "1", "--v-max", "1e6", "--n", "60"]),
            (f"{name}_renorm.json", ["renorm-vol", "--model", paths[name]]),
            (f"{name}_validate.json", ["validate", "--model", paths[name]]),
        ]
    for name in ("ads_m05", "ads_m1"):
        jobs.append(
            (f"{name}_expansion.csv", ["expansion", "--model", paths[name], "--n", "8"])
        )
    jobs.append(
        (
            "compare_ode.csv",
            [
                "compare-ode",
                "--b0",
                repr(hyperbolic_profile(1.0)),
                "--v0",
                "1",
                "--v-end",
                "1e4",
            ],
        )
    )

    for filename, argv in jobs:
        rc = run(argv + ["--out", str(res / filename)])
        if rc != 0:
            print(f"run failed (exit {rc}): {' '.join(argv)}", file=sys.stderr)
            return rc
        print(f"wrote {res / filename}")

    verdict = emit_summary(str(res))
    (out / "summary.json").write_text(json.dumps(verdict, indent=2) + "\n")

    print()
    n_pass = 0
    for name, record in verdict["criteria"].items():
        status = record["status"]
        n_pass += status == "pass"
        measured = record["measured"]
        if isinstance(measured, dict):
            detail = ", ".join(
                f"{k} {v:.3g}"
                for k, v in measured.items()
                if isinstance(v, (int, float))
            )
            print(f"{name:24s} {status:4s}  [{detail}]")
        else:
            print(
                f"{name:24s} {status:4s}  measured {measured:.6g}  "
                f"tolerance {record['tolerance']:.6g}"
            )
    total = len(verdict["criteria"])
    print(f"\n{n_pass}/{total} criteria passed over {verdict['n_runs']} runs")
    return 0 if n_pass == total else 1


if __name__ == "__main__":
    sys.exit(main())
