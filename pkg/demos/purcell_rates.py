"""How the emitter linewidth changes the cavity-enhanced emission rate.

On resonance, broadening the emitter only dilutes the coupling. Off
resonance, extra pure dephasing lets the emitter reach the cavity line, and
the rate peaks once the total width matches twice the detuning.
"""
import numpy as np

from cqed_sim import SystemParams, classify_regime, effective_coupling, efficiency_beta, optimal_dephasing

g, kappa, gamma = 1.0, 5.0, 0.01

print("regime at these rates:", classify_regime(SystemParams(g=g, kappa=kappa, gamma=gamma)).flags())

print("\n gamma*   R(delta=0)   R(delta=10)")
for gs in (0.0, 5.0, 10.0, 14.99, 20.0, 50.0):
    r0 = effective_coupling(g, kappa, gamma, gs, 0.0)
    r10 = effective_coupling(g, kappa, gamma, gs, 10.0)
    print(f"{gs:7.2f}  {r0:10.4f}  {r10:11.4f}")

opt = optimal_dephasing(g, kappa, gamma, 10.0)
print(f"\nbest dephasing at delta=10: {opt.gamma_star_opt:.2f}, R there {opt.R_max:.4f}")

# fraction of photons leaving through the cavity
for gs in (0.0, opt.gamma_star_opt):
    R = effective_coupling(g, kappa, gamma, gs, 10.0)
    print(f"gamma*={gs:5.2f}: beta={efficiency_beta(R, kappa, gamma):.4f}, Purcell F*={R / gamma:.2f}")

gs = np.linspace(0, 60, 601)
R = effective_coupling(g, kappa, gamma, gs, 10.0)
print(f"grid check: argmax at gamma*={gs[R.argmax()]:.2f}")
