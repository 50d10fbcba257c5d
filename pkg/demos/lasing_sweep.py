"""Full quantum pump sweep of a one-atom laser in a good cavity.

Photon statistics go from antibunched at weak pump, through a Poissonian
plateau, to thermal once strong pumping broadens the emitter and the cavity
is effectively bad. Set CQED_SIM_THREADS to control the worker count.
"""
from cqed_sim import bad_cavity_crossing_pump, poissonian_plateau, run_sweep
from cqed_sim.figures import LASER_BASE, pump_sweep_spec

result = run_sweep(pump_sweep_spec(gamma_star=0.0, delta=0.0))

print("     pump       n_a      n_x    g2(0)")
for row in result.records[::4]:
    print(f"{row['pump']:9.3g}  {row['n_a']:8.3f}  {row['n_x']:6.3f}  {row['g2_0']:6.3f}")

print("\nPoissonian plateau:", poissonian_plateau(result.column("pump"), result.column("g2_0")))
print(f"pump where R~ falls below kappa: {bad_cavity_crossing_pump(LASER_BASE):.2f}")
print(f"largest steady-state residual: {result.provenance['max_residual']:.1e}")
