"""Pure dephasing as a knob on a detuned one-atom laser.

Strong dephasing on resonance spoils lasing. With the atom detuned by 2g,
moderate dephasing broadens the emitter enough to couple back into the
cavity. The output shows how close g2(0) gets to 1 in each case.
"""
from cqed_sim import effective_coupling, poissonian_plateau, run_sweep
from cqed_sim.figures import LASER_BASE, pump_sweep_spec

b = LASER_BASE
for gs, delta in ((0.0, 0.0), (40.0, 0.0), (0.0, 2.0), (2.0, 2.0)):
    res = run_sweep(pump_sweep_spec(gs, delta))
    g2 = [v for v in res.column("g2_0") if v is not None]
    closest = min(g2, key=lambda v: abs(v - 1))
    plateau = poissonian_plateau(res.column("pump"), res.column("g2_0"))
    R = effective_coupling(b.g, b.kappa, b.gamma, gs, delta)
    print(f"gamma*={gs:4g} delta={delta:g}  R={R:.3f}  max n_a={max(res.column('n_a')):7.3f}  "
          f"g2 closest to 1: {closest:.3f}  plateau: {plateau}")
