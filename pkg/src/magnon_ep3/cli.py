"""Command-line front end.

Every subcommand writes CSV into the output directory (``--out``, or
``$MAGNON_EP3_OUT``, or ``./out``).  ``--plot`` additionally renders each CSV
to SVG by reading the CSV back, so the plot never holds numbers the table
does not.

Exit status: 0 on success, 1 for invalid input, 2 when a numerical
procedure fails.  Failures print a JSON record to stderr.
"""

import argparse
import csv
from dataclasses import replace
import json
import os
from pathlib import Path
import sys

import numpy as np

from . import config as cfgmod
from . import kerr_drive, puiseux, scattering, spectral
from .errors import ModelError, ValidationError
from .params import ep3_params, g_ep3, g_min, omega_ep3

OUT_ENV = "MAGNON_EP3_OUT"
FIG2_XI = np.linspace(0.001, 0.3, 300)
FIG4_XI = np.geomspace(1e-3, 0.3, 25)


def fmt(v):
    """Deterministic text for one CSV cell (shortest round-trip repr)."""
    if isinstance(v, (bool, np.bool_)):
        return "1" if v else "0"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    return str(v)


def write_table(path, header, rows):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for r in rows:
            w.writerow([fmt(v) for v in r])
    return path


def write_record(path, record):
    return write_table(path, ("key", "value"), list(record.items()))


def _split(z):
    z = complex(z)
    return z.real, z.imag


# --- plotting -------------------------------------------------------------

def render_svg(csv_path, x, ys, group=None, logx=False, logy=False, title=""):
    """Line plot of columns ``ys`` against ``x`` read from ``csv_path``."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    matplotlib.rcParams["svg.hashsalt"] = "magnon-ep3"
    with open(csv_path, encoding="utf-8") as fh:
        rows = list(csv.DictReader(fh))
    keys = (group,) if isinstance(group, str) else tuple(group or ())
    groups = {}
    for r in rows:
        groups.setdefault(" ".join(f"{k}={r[k]}" for k in keys), []).append(r)
    fig, ax = plt.subplots(figsize=(5, 3.5))
    for g, rs in groups.items():
        xv = [float(r[x]) for r in rs]
        for y in ys:
            label = f"{g} {y}" if g else y
            ax.plot(xv, [float(r[y]) for r in rs], label=label, lw=1)
    if logx:
        ax.set_xscale("log")
    if logy:
        ax.set_yscale("log")
    ax.set_xlabel(x)
    ax.set_title(title)
    ax.legend(fontsize=6)
    fig.tight_layout()
    svg = Path(csv_path).with_suffix(".svg")
    fig.savefig(svg, format="svg", metadata={"Date": None})
    plt.close(fig)
    return svg


# --- subcommands ----------------------------------------------------------

def cmd_ep3(rc, out, plot):
    lo, hi = rc.bracket()
    g = spectral.find_ep3(rc.eta, (lo, hi))
    params = replace(rc, g1=g, delta_k=0.0).physical_params()
    triple = spectral.eigenvalues(spectral.build_heff(params, rc.delta_cp))
    vals = triple.as_array()
    rec = {
        "eta": rc.eta,
        "g_min": g_min(rc.eta),
        "g1_ep3": g,
        "g1_ep3_closed_form": g_ep3(rc.eta),
        "omega_ep3": omega_ep3(rc.eta, rc.delta_cp),
        "max_eigenvalue_spread": float(max(abs(a - b) for a in vals for b in vals)),
        "class": triple.cls.value,
    }
    return [write_record(out / "ep3.csv", rec)]


def cmd_eigen(rc, out, plot):
    h = spectral.build_heff(rc.physical_params(), rc.delta_cp)
    triple = spectral.eigenvalues(h)
    rec = {}
    for name, z in (("minus", triple.omega_minus), ("zero", triple.omega_zero), ("plus", triple.omega_plus)):
        rec[f"omega_{name}_re"], rec[f"omega_{name}_im"] = _split(z)
    rec["discriminant_re"], rec["discriminant_im"] = _split(spectral.discriminant(h))
    rec["class"] = triple.cls.value
    rec["labeling"] = triple.labeling
    return [write_record(out / "eigen.csv", rec)]


def _branch_rows(eta, xi_values, factor, delta_cp=0.0):
    sol = puiseux.puiseux_coefficients(eta, factor)
    exact = puiseux.exact_branches(eta, xi_values, delta_cp, factor)
    base = omega_ep3(eta, delta_cp)
    rows = []
    for xi, ex in zip(xi_values, exact):
        ser = puiseux.series(eta, delta_cp, xi, sol)
        for label, s, e in zip(puiseux.BRANCHES, ser, ex):
            rows.append((eta, float(xi), label, s.real - base, s.imag, e.real - base, e.imag))
    return rows


_BRANCH_HEADER = ("eta", "xi", "branch", "series_re_minus_ep3", "series_im", "exact_re_minus_ep3", "exact_im")


def cmd_puiseux(rc, out, plot):
    sol = puiseux.puiseux_coefficients(rc.eta, rc.probe_shift_factor)
    coef = []
    for label, l1, l2 in zip(puiseux.BRANCHES, sol.lam1, sol.lam2):
        f1, f43 = puiseux.residuals(rc.eta, l1, l2, rc.probe_shift_factor)
        coef.append((label, *_split(l1), *_split(l2), abs(f1), abs(f43)))
    files = [
        write_table(
            out / "puiseux_coefficients.csv",
            ("branch", "lam1_re", "lam1_im", "lam2_re", "lam2_im", "abs_f1", "abs_f43"),
            coef,
        )
    ]
    rows = _branch_rows(rc.eta, np.asarray(rc.xi_values), rc.probe_shift_factor, rc.delta_cp)
    files.append(write_table(out / "puiseux.csv", _BRANCH_HEADER, rows))
    return files


def _trace_rows(trace, gamma2_mhz=None):
    if gamma2_mhz is None:
        return ("delta_cp_over_gamma2", "s_abs2"), zip(trace.delta_cp, trace.s_abs2)
    mhz = trace.delta_cp * gamma2_mhz
    return ("delta_cp_over_gamma2", "s_abs2", "delta_cp_mhz"), zip(trace.delta_cp, trace.s_abs2, mhz)


def _write_trace(path, trace, gamma2_mhz=None, plot=False, title=""):
    header, rows = _trace_rows(trace, gamma2_mhz)
    files = [write_table(path, header, rows)]
    if plot:
        files.append(render_svg(path, "delta_cp_over_gamma2", ["s_abs2"], title=title))
    return files


def cmd_spectrum(rc, out, plot):
    trace = scattering.scan(rc.physical_params(), rc.delta_k, rc.window(), rc.n_points)
    return _write_trace(out / "spectrum.csv", trace, rc.gamma2_mhz, plot, "|S|^2")


def cmd_dips(rc, out, plot):
    trace = scattering.scan(rc.physical_params(), rc.delta_k, rc.window(), rc.n_points)
    rep = scattering.find_dips(trace)
    return [write_record(out / "dips.csv", rep.as_record())]


def _enhance_table(path, rows, plot):
    files = [
        write_table(
            path,
            ("eta", "xi", "delta_omega", "enhancement"),
            [(r.eta, r.xi, r.delta_omega, r.enhancement) for r in rows],
        )
    ]
    if plot:
        files.append(render_svg(path, "xi", ["enhancement"], group="eta", logx=True, title="dip spacing / shift"))
    return files


def cmd_enhance(rc, out, plot):
    rows = scattering.enhancement_curve(
        rc.eta_values, rc.xi_values, rc.kappa_int, rc.port_split, rc.probe_shift_factor, rc.n_points
    )
    return _enhance_table(out / "enhance.csv", rows, plot)


def cmd_kerr(rc, out, plot):
    rows = kerr_drive.sweep(rc.physical_params(), rc.drive(), rc.omega_d_grid())
    path = write_table(out / "kerr_sweep.csv", ("omega_d", "branch_index", "m", "delta_k", "multistable"), rows)
    files = [path]
    if plot:
        files.append(render_svg(path, "omega_d", ["delta_k"], group="branch_index", title="Kerr shift"))
    return files


def reproduce_fig2(out, plot):
    rows = []
    for eta in (1.0, 2.0):
        rows += _branch_rows(eta, FIG2_XI, ep3_params(eta).probe_shift_factor)
    path = write_table(out / "fig2.csv", _BRANCH_HEADER, rows)
    files = [path]
    if plot:
        files.append(render_svg(path, "xi", ["series_re_minus_ep3", "series_im"], group=("eta", "branch"), title="fig2"))
    return files


def reproduce_fig3(out, plot):
    # gamma1 = kappa_int = 1, kappa1 = kappa2 = 1.5
    base = ep3_params(1.0, kappa_int=1.0, port_split=0.5)
    files = []
    for tag, dk in (("a", 0.0), ("b", 0.01)):
        trace = scattering.scan(base, dk)
        files += _write_trace(out / f"fig3{tag}.csv", trace, plot=plot, title=f"delta_k={dk:g}")
    rep = scattering.find_dips(scattering.scan(base, 0.01))
    files.append(write_record(out / "fig3b_dips.csv", rep.as_record()))
    return files


def reproduce_fig4(out, plot):
    # kappa_int = 1 and kappa1 = kappa2 = 1 + eta/2 is the ep3_params default
    rows = scattering.enhancement_curve((1.0, 2.0, 3.0), FIG4_XI)
    return _enhance_table(out / "fig4.csv", rows, plot)


HELP = {
    "ep3": "locate the EP3 coupling numerically and check the coalescence",
    "eigen": "exact eigenvalues and spectrum class for one parameter set",
    "puiseux": "series coefficients and series vs exact eigenvalues over xi_values",
    "spectrum": "|S|^2 trace over the probe detuning window",
    "dips": "refined dip positions, spacing and enhancement",
    "enhance": "enhancement table over eta_values x xi_values",
    "kerr-steady": "steady-state branches along a drive sweep",
}

COMMANDS = {
    "ep3": cmd_ep3,
    "eigen": cmd_eigen,
    "puiseux": cmd_puiseux,
    "spectrum": cmd_spectrum,
    "dips": cmd_dips,
    "enhance": cmd_enhance,
    "kerr-steady": cmd_kerr,
}
FIGURES = {"fig2": reproduce_fig2, "fig3": reproduce_fig3, "fig4": reproduce_fig4}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ValidationError(message, module="cli", operation="parse_args")


def build_parser():
    p = _Parser(prog="magnon-ep3", description="EP3 spectra, probe dips and Kerr steady states written as CSV.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp):
        sp.add_argument("--out", help=f"output directory (default ${OUT_ENV} or ./out)")
        sp.add_argument("--plot", action="store_true", help="also render SVG from the CSV")

    for name in COMMANDS:
        sp = sub.add_parser(name, help=HELP[name])
        sp.add_argument("--config", required=True, help="flat key = value run file")
        sp.add_argument("--set", action="append", default=[], metavar="KEY=VALUE", help="override a config key")
        common(sp)
    rp = sub.add_parser("reproduce", help="regenerate the data for one of the standard figures")
    rp.add_argument("figure", choices=sorted(FIGURES))
    common(rp)
    return p


def _overrides(items):
    pairs = []
    for item in items:
        key, sep, val = item.partition("=")
        if not sep:
            raise ValidationError(f"override '{item}' is not KEY=VALUE", module="cli", operation="parse_args")
        pairs.append((key.strip(), val.strip()))
    return pairs


def _out_dir(arg):
    out = Path(arg or os.environ.get(OUT_ENV) or "out")
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise ValidationError(f"cannot create output directory {out}: {exc}", module="cli", operation="run")
    if not os.access(out, os.W_OK):
        raise ValidationError(f"output directory {out} is not writable", module="cli", operation="run")
    return out


def run(argv=None):
    """Parse ``argv``, dispatch, and return the list of written files."""
    args = build_parser().parse_args(argv)
    if args.command == "reproduce":
        return FIGURES[args.figure](_out_dir(args.out), args.plot)
    try:
        rc = cfgmod.load(args.config, _overrides(args.set))
    except OSError as exc:
        raise ValidationError(f"cannot read config: {exc}", module="config", operation="load")
    return COMMANDS[args.command](rc, _out_dir(args.out), args.plot)


def main(argv=None):
    try:
        files = run(argv)
    except ModelError as exc:
        print(json.dumps(exc.record(), sort_keys=True), file=sys.stderr)
        return 2 if exc.numerical else 1
    for f in files:
        print(f)
    return 0


if __name__ == "__main__":
    sys.exit(main())
