"""Regenerate every figure table (and SVG) into one directory.

    python scripts/reproduce_figures.py [out_dir]
"""

import sys
import time

from magnon_ep3 import cli

out = sys.argv[1] if len(sys.argv) > 1 else "out/figures"
for fig in ("fig2", "fig3", "fig4"):
    t0 = time.perf_counter()
    code = cli.main(["reproduce", fig, "--out", out, "--plot"])
    print(f"{fig}: exit {code} in {time.perf_counter() - t0:.2f}s")
