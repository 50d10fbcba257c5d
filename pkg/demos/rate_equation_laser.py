"""Semiclassical picture of a one-atom laser.

Photon number as a function of inversion diverges where gain equals loss.
Solving the pumped rate equations shows the inversion pinned just below that
point once the pump is strong.
"""
import numpy as np

from cqed_sim import laser_steady_state, na_of_inversion

R, kappa, gamma = 1.0, 0.2, 0.01

print("inversion  n_a")
for I in np.linspace(-1, 0.18, 7):
    print(f"{I:9.3f}  {na_of_inversion(I, R, kappa):.4g}")

print("\n   pump   inversion      n_a")
for P in (0.01, 0.1, 1.0, 10.0, 100.0):
    s = laser_steady_state(R, gamma, kappa, P)
    print(f"{P:7.2f}  {s.inversion:9.4f}  {s.n_a:8.3f}")
