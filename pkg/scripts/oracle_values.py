"""Print the reference values frozen into the test-suite, recomputed from scratch.

The equator numbers come from bisection on the closed-form heat
antiderivative; the production pipeline's values are shown next to them.
"""
import math

from qergo import oracle
from qergo.channels import ChannelSpec
from qergo.scan import adiabatic_point

if __name__ == "__main__":
    ref = oracle.equator_adiabatic_point()
    pipe = adiabatic_point(ChannelSpec("ad"), 1.0, math.pi / 2)
    print(f"F(1)                 {oracle.equator_antiderivative(1.0)!r}")
    print(f"-1 + pi sqrt(3)/12   {-1 + math.pi * math.sqrt(3) / 12!r}")
    print(f"u_c                  {ref['u']!r}")
    rows = (("gamma t_c", "tau_c", pipe.tau_c), ("W*", "Wstar", pipe.Wstar),
            ("dU_pi", "dUpi", pipe.dUpi), ("dE", "dE", pipe.dE))
    for label, key, value in rows:
        print(f"{label:<20} oracle {ref[key]!r:<22} pipeline {value!r:<22} diff {abs(ref[key] - value):.1e}")
