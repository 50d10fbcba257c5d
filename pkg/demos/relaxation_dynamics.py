"""Watch an excited emitter relax into a lossy cavity.

Starting from |e,0>, the excited population decays close to exponentially at
gamma + R. The decay rate is fitted and compared with the closed form, with
and without dephasing, on and off resonance.
"""
from cqed_sim import effective_coupling
from cqed_sim.figures import PURCELL_BASE, relaxation_traces
from cqed_sim.observables import decay_rate

p = PURCELL_BASE

for delta, t_max in ((0.0, 3.0), (10.0, 60.0)):
    t, traces = relaxation_traces(delta, t_max, gamma_stars=(0.0, 20.0))
    print(f"\ndelta = {delta:g}")
    for gs, n_x in traces.items():
        fitted = decay_rate(t, n_x, floor=0.05)
        expected = p.gamma + effective_coupling(p.g, p.kappa, p.gamma, gs, delta)
        print(f"  gamma*={gs:4.0f}  fitted {fitted:.4f}  gamma+R {expected:.4f}  n_x(end) {n_x[-1]:.3g}")
