"""Drive sweep through the bistable window, printing where branches appear.

    python scripts/kerr_sweep.py
"""

from dataclasses import replace

import numpy as np

from magnon_ep3.kerr_drive import DriveConfig, occupation_discriminant, steady_state
from magnon_ep3.params import PseudoHermitianConfig, derive_pseudo_hermitian

params = derive_pseudo_hermitian(PseudoHermitianConfig(eta=1.0, g1=1.5))
drive = DriveConfig(delta_cd=0.0, delta_1d=-6.0, delta_2d=0.0, omega_d=0.0, kerr_k1=0.01)

prev = None
for w in np.linspace(0, 60, 601):
    d = replace(drive, omega_d=w)
    n = len(steady_state(params, d))
    if n != prev:
        print(f"omega_d={w:6.2f}: {n} branch(es), discriminant {occupation_discriminant(params, d):+.3e}")
        prev = n
