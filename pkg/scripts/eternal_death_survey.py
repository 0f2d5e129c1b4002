"""Eternal-death time as a function of initial energy and memory time.

Prints one row per (Gamma/gamma, U0) with the number of sudden changes,
the eternal-death time and its ratio to the Markovian value ln(1 + U0).

    python3 scripts/eternal_death_survey.py --ratios 0.001 0.01 0.1
"""
import argparse
import math

import numpy as np

from qergo.channels import ChannelSpec
from qergo.events import eternal_death_time, sudden_change_times
from qergo.scan import comparison_horizon


def survey(ratios, energies):
    print(f"{'Gamma/gamma':>12} {'U0':>6} {'changes':>8} {'t_sd':>14} {'t_sd/ln(1+U0)':>14}")
    for g in ratios:
        spec = ChannelSpec("ad", "nm", g)
        horizon = comparison_horizon(g)
        for U0 in energies:
            roots = sudden_change_times(spec, U0, horizon)
            t_sd = eternal_death_time(spec, U0, horizon)
            ratio = t_sd / math.log1p(U0) if t_sd is not None else math.nan
            shown = f"{t_sd:14.6f}" if t_sd is not None else f"{'none':>14}"
            print(f"{g:12g} {U0:6.2f} {len(roots):8d} {shown} {ratio:14.3f}")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--ratios", type=float, nargs="+", default=[0.001, 0.01, 0.1])
    p.add_argument("--energies", type=float, nargs="+", default=list(np.round(np.linspace(0.1, 1.0, 10), 2)))
    args = p.parse_args()
    survey(args.ratios, args.energies)
