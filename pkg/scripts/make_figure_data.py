#!/usr/bin/env python3
"""Generate the CSV datasets behind every named sweep preset.

Writes one file per scenario (plus the no-diamagnetic variant of the
resonant coupling sweep) into the output directory.  Any plotting tool
can consume the CSVs; the column schema is the sweep CLI's.
"""

import argparse
from pathlib import Path

from hopfield_gaussian.scenarios import SCENARIOS, SweepSpec
from hopfield_gaussian.states import Environment
from hopfield_gaussian.sweep import sweep_csv


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="figure_data", help="output directory")
    parser.add_argument("--workers", type=int, default=1)
    args = parser.parse_args()

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    jobs = {name: spec for name, spec in SCENARIOS.items()}
    fig5 = SCENARIOS["fig5"]
    jobs["fig5_no_diamag"] = SweepSpec(
        scenario="fig5",
        axes=fig5.axes,
        fixed=fig5.fixed,
        diamag_mode="zero",
        state=fig5.state,
        coupling=fig5.coupling,
        description=fig5.description,
    )

    for name, spec in sorted(jobs.items()):
        env = Environment(float(spec.fixed.get("T", 0.0)) or 0.0)
        path = out / f"{name}.csv"
        path.write_text(sweep_csv(spec, env, workers=args.workers), newline="\n")
        print(f"wrote {path} ({len(spec.axes)} axis sweep)")


if __name__ == "__main__":
    main()
