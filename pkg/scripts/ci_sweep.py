"""Run verify-algebra, spectrum and classify-pt over the CI sample grid.

Writes one JSON report per (command, gamma, c) into --out-dir and prints a
one-line summary per run.  Exit status is the worst CLI exit code seen.
"""
import argparse
import itertools
from pathlib import Path

from higgs_spectra.cli import RunConfig, run

GAMMAS = (0.0, 0.3, 0.6, 0.8)
CS = (-1.0, 0.5, 2.0, 3.0, 10.0)


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out-dir", default="ci_reports")
    ap.add_argument("--n", type=int, nargs="+", default=[2, 3])
    args = ap.parse_args()
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    worst = 0
    for gamma, c in itertools.product(GAMMAS, CS):
        jobs = [RunConfig(command="verify-algebra", gamma=gamma, c=c)]
        for n in args.n:
            jobs.append(RunConfig(command="spectrum", gamma=gamma, c=c, n=n, check_paper=True))
            jobs.append(RunConfig(command="classify-pt", gamma=gamma, c=c, n=n, check_paper=True))
        for cfg in jobs:
            code, blob = run(cfg)
            worst = max(worst, code)
            name = f"{cfg.command}_n{cfg.n}_g{gamma:g}_c{c:g}.json"
            (out_dir / name).write_bytes(blob)
            print(f"{code}  {name}")
    return worst


if __name__ == "__main__":
    raise SystemExit(main())
