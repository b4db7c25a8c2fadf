#!/usr/bin/env python3
"""Sweep the weight frequency and record separation + observed stability.

Solves the reference problem (a = 0, g = projected parabola) for a geometric
ladder of omega values and writes sweep.csv; equivalent to
`specwave sweep --omega ... --a zero --g parabola` but convenient to edit.
"""

import argparse
import math
from pathlib import Path

import numpy as np

from specwave import (
    DirichletLaplacian1D,
    NonlocalProblem,
    ProblemClock,
    SpectralVector,
    project,
    solve_nonlocal,
    stability_report,
    z_diagnostic,
)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--T", type=float, default=5.0)
    parser.add_argument("--N", type=int, default=200)
    parser.add_argument("--decades", type=int, default=3, help="omega from 1 down 10^-decades")
    parser.add_argument("--per-decade", type=int, default=3)
    parser.add_argument("--out", type=Path, default=Path("sweep.csv"))
    args = parser.parse_args()

    spectrum = DirichletLaplacian1D()
    gamma = project(lambda x: x * (math.pi - x), spectrum, args.N)
    alpha = SpectralVector(np.zeros(args.N), spectrum)
    omegas = np.logspace(0, -args.decades, args.decades * args.per_decade + 1)

    lines = ["omega,z_N,c_obs,sup_u_h1"]
    print(f"{'omega':>10}  {'z(N)':>12}  {'c_obs':>10}")
    for omega in omegas:
        clock = ProblemClock(args.T, float(omega))
        z = z_diagnostic(args.N, spectrum, clock).z
        if not clock.admissible:
            print(f"{omega:>10.4f}  {z:>12.4e}  inadmissible")
            continue
        problem = NonlocalProblem(spectrum, clock, alpha, gamma)
        report = stability_report(problem, solve_nonlocal(problem))
        lines.append(f"{omega:.12e},{z:.12e},{report.c_obs:.12e},{report.sup_u_h1:.12e}")
        print(f"{omega:>10.4f}  {z:>12.4e}  {report.c_obs:>10.4f}")
    args.out.write_text("\n".join(lines) + "\n")
    print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
