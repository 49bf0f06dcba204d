"""Compare multiplicities at the stated special points: computed operator vs table formulas."""
import argparse

from higgs_spectra.bargmann import degeneracy_scan, multiplicity_at, scan_grid
from higgs_spectra.operator_zoo import DeformationParams
from higgs_spectra.published_tables import special_points, table_eigenvalues


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--gamma", type=float, default=0.6)
    ap.add_argument("--c-min", type=float, default=-2.0)
    ap.add_argument("--c-max", type=float, default=5.0)
    ap.add_argument("--c-step", type=float, default=0.25)
    args = ap.parse_args()

    params = DeformationParams.from_gamma(args.gamma)
    grid = scan_grid(args.c_min, args.c_max, args.c_step)
    print(f"{'n':>2} {'lambda':>8} {'c':>6} {'stated':>7} {'operator':>9} {'table':>6}")
    for n in (2, 3):
        op_rows = degeneracy_scan(n, params, grid)
        tab_rows = degeneracy_scan(n, params, grid, eigenvalue_source=table_eigenvalues)
        for pt in special_points(n):
            if not any(abs(pt.c - c) < 1e-9 for c in grid):
                continue
            got_op = multiplicity_at(op_rows, pt.c, pt.eigenvalue) or 0
            got_tab = multiplicity_at(tab_rows, pt.c, pt.eigenvalue) or 0
            print(f"{n:>2} {pt.eigenvalue:>8.4f} {pt.c:>6g} {pt.multiplicity:>7} {got_op:>9} {got_tab:>6}")


if __name__ == "__main__":
    main()
