"""How far the |S|^2 minima sit from the real parts of the eigenvalues.

For each xi the refined dip positions (probe frequency) are compared with
Re(Omega_minus) and Re(Omega_plus) of the exact spectrum, in units of the
dip spacing, together with the imaginary parts that pull the minima inward.
"""

import numpy as np

from magnon_ep3 import scattering, spectral
from magnon_ep3.params import ep3_params

base = ep3_params(1.0)
print(f"{'xi':>8} {'dw_p':>9} {'ReO-':>9} {'dip1':>9} {'ReO+':>9} {'dip2':>9} {'off1':>6} {'off2':>6} {'ImO-':>8} {'ImO+':>8}")
for xi in np.geomspace(1e-4, 0.3, 12):
    rep = scattering.find_dips(scattering.scan(base, xi))
    tri = spectral.eigenvalues(spectral.build_heff(base.with_shift(xi)))
    d1, d2 = rep.probe_frequencies
    off1 = abs(d1 - tri.omega_minus.real) / rep.delta_omega
    off2 = abs(d2 - tri.omega_plus.real) / rep.delta_omega
    print(
        f"{xi:8.1e} {rep.delta_omega:9.5f} {tri.omega_minus.real:9.5f} {d1:9.5f} {tri.omega_plus.real:9.5f}"
        f" {d2:9.5f} {off1:6.3f} {off2:6.3f} {tri.omega_minus.imag:8.4f} {tri.omega_plus.imag:8.4f}"
    )
