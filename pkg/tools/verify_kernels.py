"""Check the g1/g2 kernels against mpmath at 50 digits.

Run this to print the worst relative error of each kernel over a log grid of u,
including the band around u = 1 where the series branch takes over.

Usage:
  python -m tools.verify_kernels
"""
import mpmath
import numpy as np
from rich.console import Console
from rich.table import Table

from geoconvex.numerics.kernels import KernelFunction, kernel_g

mpmath.mp.dps = 50


def exact(kind: KernelFunction, u: float):
    u = mpmath.mpf(u)
    if u == 1:
        return mpmath.mpf(1) / 2 if kind is KernelFunction.G1 else mpmath.mpf(1)
    ln_u = mpmath.log(u)
    if kind is KernelFunction.G1:
        return (u * ln_u - u + 1) / ln_u ** 2
    return (u - 1) / ln_u


def sample_us():
    wide = np.geomspace(1e-6, 1e6, 400)
    near = 1.0 + np.concatenate([-np.geomspace(1e-3, 1e-14, 120), np.geomspace(1e-14, 1e-3, 120)])
    return np.concatenate([wide, near, [1.0]])


def worst_errors(us):
    rows = {}
    for kind in KernelFunction:
        worst, at = 0.0, 1.0
        for u in us:
            ref = exact(kind, float(u))
            rel = float(abs(mpmath.mpf(kernel_g(kind, float(u))) - ref) / abs(ref))
            if rel > worst:
                worst, at = rel, float(u)
        rows[kind] = (worst, at)
    return rows


def main():
    us = sample_us()
    table = Table(title=f"kernel relative error vs mpmath ({len(us)} points)")
    table.add_column("kernel")
    table.add_column("worst rel. error", justify="right")
    table.add_column("at u", justify="right")
    for kind, (worst, at) in worst_errors(us).items():
        style = "green" if worst <= 1e-13 else "bold red"
        table.add_row(kind.value, f"[{style}]{worst:.3e}[/{style}]", f"{at:.17g}")
    Console().print(table)

if __name__ == '__main__':
    main()
