"""Command-line front end: parameter queries, dGGE solves, sweeps, oracles.

Subcommands
-----------
params          (gamma, x) map, regime, threshold
dgge            stationary root densities (gapped or root-of-unity gapless)
ysystem-check   T-/Y-system residual diagnostics
stagmag         late-time staggered magnetization at one (Delta, tau)
stagmag-sweep   staggered magnetization over a tau window
ed              dense finite-size oracles (diagonal ensemble, evolution,
                charges, transfer matrices, one-magnon sector)
free            free-line closed forms (evolution, asymptotics, current)
reproduce       figure datasets (fig1, fig2, fig3, figS4) at desk scale

Conventions: outputs are deterministic (fixed column order, 15 significant
digits); CSV carries array data, JSON scalar results.  Every numeric knob
resolves as explicit flag > TROTTERXXZ_<NAME> environment variable > JSON
config file (``--config``) > documented default.  Exit codes: 0 success,
1 usage error, 2 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass, field

from .errors import TrotterXXZError, UnsupportedRoot

ENV_PREFIX = "TROTTERXXZ_"


# ---------------------------------------------------------------------------
# deterministic serialization


def _fmt(x) -> str:
    """15-significant-digit rendering; integers and strings pass through."""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, (int,)):
        return str(x)
    if isinstance(x, float):
        if math.isnan(x):
            return "nan"
        return f"{x:.15g}"
    return str(x)


def _json_dump(obj, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [
            f'{pad}  "{k}": {_json_dump(v, indent + 1)}' for k, v in obj.items()
        ]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [f"{pad}  {_json_dump(v, indent + 1)}" for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, float):
        if math.isnan(obj):
            return "null"
        return f"{obj:.15g}"
    if isinstance(obj, int):
        return str(obj)
    return json.dumps(obj)


def _csv_text(header: list[str], rows, comments: list[str] | None = None) -> str:
    lines = [f"# {c}" for c in (comments or [])]
    lines.append(",".join(header))
    for row in rows:
        lines.append(",".join(_fmt(v) for v in row))
    return "\n".join(lines) + "\n"


def _write(text: str, out: str) -> None:
    if out in ("-", ""):
        sys.stdout.write(text)
    else:
        with open(out, "w") as fh:
            fh.write(text)


# ---------------------------------------------------------------------------
# configuration plumbing


@dataclass
class RunConfig:
    """A fully resolved invocation: command, options, output destination."""

    command: str
    options: dict = field(default_factory=dict)
    out: str = "-"
    fmt: str = "json"


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse default exits 2; usage errors are 1
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(1)


# knob tables: name -> (type, default, help).  Defaults equal the module
# defaults of the corresponding solver functions.
_SOLVER_KNOBS = {
    "n-max": (int, 20, "number of string species kept (gapped regime)"),
    "grid-n": (int, 512, "quadrature nodes per string"),
    "cutoff": (float, 22.0, "rapidity cutoff Lambda of the gapless line grid"),
    "tol": (float, 1e-10, "density-equation residual tolerance"),
    "eta-tol": (float, 1e-7, "beta -> 0 extrapolation tolerance (gapless)"),
}
_KNOBS = {
    "params": {},
    "dgge": dict(_SOLVER_KNOBS),
    "ysystem-check": {
        "beta": (float, 1e-6, "QTM regulator"),
        "n-points": (int, 5, "number of rapidity sample points"),
        "eta-tol": (float, 1e-7, "beta -> 0 extrapolation tolerance"),
    },
    "stagmag": dict(_SOLVER_KNOBS),
    "stagmag-sweep": dict(
        _SOLVER_KNOBS,
        **{
            "tau-min": (float, 0.2, "lower edge of the tau window"),
            "tau-max": (float, 2.4, "upper edge of the tau window"),
            "num": (int, 12, "number of tau points"),
        },
    ),
    "ed": {
        "steps": (int, 200, "Floquet periods for --mode evolve"),
        "site": (int, 1, "1-based site index for --mode dgge"),
        "u-re": (float, 0.23, "Re u of the transfer-matrix test point"),
        "u2-re": (float, 0.61, "Re u' of the second test point"),
    },
    "free": {
        "L": (int, 2000, "chain length of the mode sum"),
        "steps": (int, 10000, "number of Floquet periods"),
    },
    "reproduce": {
        "l-max": (int, 10, "largest chain length for the ED datasets"),
        "out-dir": (str, ".", "directory receiving the dataset files"),
    },
}
_DEFAULT_FMT = {
    "params": "json",
    "dgge": "csv",
    "ysystem-check": "json",
    "stagmag": "json",
    "stagmag-sweep": "csv",
    "ed": "json",
    "free": "json",
    "reproduce": "csv",
}


def _build_parser() -> _Parser:
    p = _Parser(prog="trotterxxz", description=__doc__.splitlines()[0])
    p.add_argument("--threads", type=int, default=None, help="BLAS/worker thread budget")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, **required):
        sp = sub.add_parser(name)
        for rname, rtyp in required.items():
            if rname == "mode":
                sp.add_argument("--mode", required=True, choices=rtyp)
            else:
                sp.add_argument(f"--{rname}", type=rtyp, required=True)
        for kname, (typ, _default, khelp) in _KNOBS[name].items():
            sp.add_argument(f"--{kname}", type=typ, default=None, help=khelp)
        sp.add_argument("--config", type=str, default=None, help="JSON config file")
        sp.add_argument("--out", type=str, default=None, help="output path (default stdout)")
        sp.add_argument("--format", choices=("csv", "json"), default=None)
        return sp

    add("params", delta=float, tau=float)
    add("dgge", delta=float, tau=float)
    add("ysystem-check", delta=float, tau=float)
    add("stagmag", delta=float, tau=float)
    add("stagmag-sweep", delta=float)
    add("ed", L=int, delta=float, tau=float,
        mode=("dgge", "evolve", "charges", "transfer", "one-magnon"))
    add("free", delta=float, tau=float, mode=("evolve", "asymptotic", "current"))
    sp = sub.add_parser("reproduce")
    sp.add_argument("figure", choices=("fig1", "fig2", "fig3", "figS4"))
    for kname, (typ, _d, khelp) in _KNOBS["reproduce"].items():
        sp.add_argument(f"--{kname}", type=typ, default=None, help=khelp)
    sp.add_argument("--config", type=str, default=None)
    sp.add_argument("--out", type=str, default=None)
    sp.add_argument("--format", choices=("csv", "json"), default=None)
    return p


def _resolve_config(args: argparse.Namespace) -> RunConfig:
    command = args.command
    file_cfg = {}
    if getattr(args, "config", None):
        with open(args.config) as fh:
            file_cfg = json.load(fh)

    def lookup(name, typ, default):
        attr = name.replace("-", "_")
        val = getattr(args, attr, None)
        if val is not None:
            return val
        env = os.environ.get(ENV_PREFIX + attr.upper())
        if env is not None:
            return typ(env)
        if name in file_cfg:
            return typ(file_cfg[name])
        return default

    options = {}
    for name, (typ, default, _h) in _KNOBS[command].items():
        options[name.replace("-", "_")] = lookup(name, typ, default)
    # required model arguments pass straight through
    for rname in ("delta", "tau", "L", "mode", "figure"):
        if hasattr(args, rname):
            options[rname] = getattr(args, rname)
    out = lookup("out", str, "-") or "-"
    fmt = lookup("format", str, _DEFAULT_FMT[command])
    return RunConfig(command=command, options=options, out=out, fmt=fmt)


# ---------------------------------------------------------------------------
# shared solver plumbing


def _derived(delta: float, tau: float):
    from .params import ModelParams, derive_params

    return derive_params(ModelParams(delta, tau))


def _gapped_state(params, n_max: int, grid_n: int, tol: float):
    from .tba_gapped import EtaFamilyGapped, default_grid, solve_rho_gapped

    return solve_rho_gapped(EtaFamilyGapped(params, n_max), default_grid(grid_n), tol=tol)


def _gapless_state(params, grid_n: int, cutoff: float, tol: float, eta_tol: float):
    from .params import detect_root_of_unity
    from .tba_gapless import default_grid, sample_eta_gapless, solve_rho_gapless

    root = detect_root_of_unity(params.gamma.real)
    if root is None:
        raise UnsupportedRoot(
            f"gamma/pi = {params.gamma.real / math.pi:.6f} is not a supported root of unity"
        )
    grid = default_grid(grid_n, cutoff)
    fam = sample_eta_gapless(root, params, grid, tol=eta_tol)
    return solve_rho_gapless(fam, tol=tol)


def _stagmag_point(delta: float, tau: float, o: dict) -> dict:
    """One magnetization evaluation, dispatched on the regime."""
    from .params import Regime

    p = _derived(delta, tau)
    rec = {
        "delta": delta,
        "tau": tau,
        "regime": p.regime.value,
        "gamma_over_pi": p.gamma.real / math.pi if abs(p.gamma.imag) < 1e-12 else float("nan"),
    }
    if p.regime is Regime.GAPPED:
        from .observables import stag_mag_gapped

        state = _gapped_state(p, o["n_max"], o["grid_n"], o["tol"])
        res = stag_mag_gapped(state)
        rec.update(staggered=res.staggered, uniform=res.uniform,
                   filling_residual=state.filling_residual())
    elif p.regime is Regime.FREE_POINT:
        from .free_fermion import FreePointSpec, magnetization_asymptotic

        spec = FreePointSpec.from_params(delta, tau)
        rec.update(staggered=magnetization_asymptotic(spec), uniform=0.0,
                   filling_residual=0.0)
    else:
        from .observables import site_mag_gapless

        state = _gapless_state(p, o["grid_n"], o["cutoff"], o["tol"], o["eta_tol"])
        res = site_mag_gapless(state)
        rec.update(staggered=res.staggered, uniform=res.uniform,
                   filling_residual=state.filling_residual())
    return rec


# ---------------------------------------------------------------------------
# command handlers


def _cmd_params(cfg: RunConfig) -> str:
    from .params import detect_root_of_unity

    o = cfg.options
    p = _derived(o["delta"], o["tau"])
    root = None
    if abs(p.gamma.imag) < 1e-12 and 0.0 < p.gamma.real < math.pi:
        root = detect_root_of_unity(p.gamma.real)
    return _json_dump(
        {
            "delta": p.delta,
            "tau": p.tau,
            "gamma_re": p.gamma.real,
            "gamma_im": p.gamma.imag,
            "eta": p.eta,
            "x_re": p.x.real,
            "x_im": p.x.imag,
            "shift": p.shift,
            "regime": p.regime.value,
            "tau_th": p.tau_th,
            "root_of_unity": None if root is None else {"nu1": root.nu1, "nu2": root.nu2},
        }
    ) + "\n"


def _cmd_dgge(cfg: RunConfig) -> str:
    from .params import Regime

    o = cfg.options
    p = _derived(o["delta"], o["tau"])
    if p.regime is Regime.GAPPED:
        state = _gapped_state(p, o["n_max"], o["grid_n"], o["tol"])
        labels = [str(n) for n in range(1, state.n_max + 1)]
    else:
        state = _gapless_state(p, o["grid_n"], o["cutoff"], o["tol"], o["eta_tol"])
        labels = [str(j) for j in range(1, state.Nb + 1)]
    if cfg.fmt == "json":
        return _json_dump(
            {
                "delta": o["delta"],
                "tau": o["tau"],
                "regime": p.regime.value,
                "strings": len(labels),
                "grid_n": state.grid.n,
                "filling_residual": state.filling_residual(),
            }
        ) + "\n"
    header = (
        ["lam"]
        + [f"rho_{s}" for s in labels]
        + [f"rho_h_{s}" for s in labels]
    )
    rows = [
        [state.grid.nodes[i]]
        + [state.rho[j, i] for j in range(len(labels))]
        + [state.rho_h[j, i] for j in range(len(labels))]
        for i in range(state.grid.n)
    ]
    return _csv_text(header, rows, comments=[f"dGGE densities, regime={p.regime.value}"])


def _cmd_ysystem_check(cfg: RunConfig) -> str:
    import numpy as np

    from .params import Regime, detect_root_of_unity
    from . import ysystem as ys

    o = cfg.options
    p = _derived(o["delta"], o["tau"])
    beta = o["beta"]
    lam = np.linspace(0.2, 1.4, o["n_points"])
    out: dict = {"delta": o["delta"], "tau": o["tau"], "regime": p.regime.value, "beta": beta}
    if p.regime is Regime.GAPPED:
        from .tba_gapped import eta1, EtaFamilyGapped

        tf = ys.TFunctions(ys.qtm_from_params(p, beta))
        out["t_recursion"] = ys.t_recursion_residual(tf, 3, lam)
        out["t_system"] = ys.t_system_residual(tf, 2, 1, lam)
        out["y_system"] = float(
            max(ys.y_system_residual(tf, j, lam) for j in (1, 2, 3))
        )
        out["y1_consistency"] = ys.y1_consistency_residual(tf, lam)
        fam = EtaFamilyGapped(p, 2)
        for n in (1, 2):
            qtm_eta = ys.eta_gapped_from_qtm(n, lam, p, tol=o["eta_tol"])
            closed = fam.eta(n, lam.astype(complex))
            out[f"eta{n}_closed_form"] = float(
                np.max(np.abs(qtm_eta - closed) / (1.0 + np.abs(closed)))
            )
    else:
        root = detect_root_of_unity(p.gamma.real)
        if root is None:
            raise UnsupportedRoot("no supported root of unity at this gamma")
        fam = ys.build_y_gapless(root, p, beta)
        u = 1j * lam + 1e-9
        res = []
        # Y_0 = 0 is a boundary convention, so the first-branch relations
        # start at j = 1 (empty set for nu1 = 2)
        for j in range(1, root.nu1 - 1):
            res.append(("first_branch", fam.first_branch_residual(j, u)))
        res.append(("junction", fam.junction_residual(u)))
        for j in range(root.nu1, root.Nb - 1):
            res.append(("second_branch", fam.second_branch_residual(j, u)))
        res.append(("closure", fam.closure_residual(u)))
        res.append(("k_relation", fam.k_residual(u)))
        agg: dict[str, float] = {}
        for name, val in res:
            agg[name] = max(agg.get(name, 0.0), val)
        out["nu1"], out["nu2"] = root.nu1, root.nu2
        out.update(agg)
    return _json_dump(out) + "\n"


def _cmd_stagmag(cfg: RunConfig) -> str:
    rec = _stagmag_point(cfg.options["delta"], cfg.options["tau"], cfg.options)
    return _json_dump(rec) + "\n"


def _cmd_stagmag_sweep(cfg: RunConfig, threads: int) -> str:
    from .params import Regime

    o = cfg.options
    taus = [
        o["tau_min"] + (o["tau_max"] - o["tau_min"]) * i / (o["num"] - 1)
        for i in range(o["num"])
    ]

    def point(tau: float) -> list:
        try:
            rec = _stagmag_point(o["delta"], tau, o)
        except UnsupportedRoot:
            p = _derived(o["delta"], tau)
            rec = {
                "delta": o["delta"],
                "tau": tau,
                "regime": p.regime.value,
                "gamma_over_pi": p.gamma.real / math.pi,
                "staggered": float("nan"),
                "uniform": float("nan"),
                "filling_residual": float("nan"),
            }
        return [rec["tau"], rec["regime"], rec["gamma_over_pi"],
                rec["staggered"], rec["uniform"]]

    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=threads) as ex:
            rows = list(ex.map(point, taus))
    else:
        rows = [point(t) for t in taus]
    return _csv_text(
        ["tau", "regime", "gamma_over_pi", "staggered", "uniform"],
        rows,
        comments=[f"delta={_fmt(o['delta'])}; gapless non-root-of-unity points carry nan"],
    )


def _cmd_ed(cfg: RunConfig) -> str:
    import numpy as np

    from . import exact_small as es

    o = cfg.options
    L, mode = o["L"], o["mode"]
    p = _derived(o["delta"], o["tau"])
    base = {"delta": o["delta"], "tau": o["tau"], "L": L}
    if mode == "dgge":
        s1 = es.diagonal_ensemble_sz(p, L, site=o["site"])
        s2 = es.diagonal_ensemble_sz(p, L, site=o["site"] + 1)
        return _json_dump(dict(base, site=o["site"], sz_site=s1, sz_next=s2,
                               staggered=0.5 * (s1 - s2))) + "\n"
    if mode == "evolve":
        r = es.evolve_and_average(p, L, o["steps"])
        if cfg.fmt == "json":
            return _json_dump(dict(
                base,
                steps=o["steps"],
                window=list(r.window),
                tail_average=[float(v) for v in r.tail_average],
                tail_staggered=float(np.mean(r.tail_average * (-1.0) ** np.arange(L))),
            )) + "\n"
        header = ["t"] + [f"sz_{j + 1}" for j in range(L)]
        rows = [[int(t)] + list(r.sz[int(t)]) for t in r.times]
        return _csv_text(header, rows, comments=["per-site sigma^z under the brickwork circuit"])
    if mode == "charges":
        U = es.build_floquet(p, L)
        out = dict(base)
        for branch, tag in ((+1, "plus"), (-1, "minus")):
            Q = es.build_charge_q1(p, L, branch)
            out[f"q1_{tag}_comm"] = float(np.max(np.abs(Q @ U - U @ Q)))
            out[f"q1_{tag}_herm"] = float(np.max(np.abs(Q - Q.conj().T)))
        return _json_dump(out) + "\n"
    if mode == "transfer":
        U = es.build_floquet(p, L)
        u1, u2 = complex(o["u_re"]), complex(o["u2_re"])
        T1 = es.build_transfer_matrix(u1, p, L)
        T2 = es.build_transfer_matrix(u2, p, L)
        R = es.floquet_transfer_product(p, L)
        c = np.trace(R.conj().T @ U) / np.trace(R.conj().T @ R)
        D0 = es.double_row_transfer(0.0, p, L)
        return _json_dump(dict(
            base,
            tt_comm=float(np.max(np.abs(T1 @ T2 - T2 @ T1))),
            u_vs_tt=float(np.max(np.abs(U - c * R))),
            scalar_modulus=float(abs(c)),
            double_row_at_zero=float(np.max(np.abs(D0 - np.eye(2 ** L)))),
        )) + "\n"
    # one-magnon
    from .observables import FiniteVolumeInput, finite_volume_sz

    modes = es.one_magnon_sector(p, L)
    rows = []
    for m in modes:
        sz_ed = float(es.sz_expectations(m.vector, L)[0])
        sz_fv = finite_volume_sz(
            FiniteVolumeInput(np.array([m.rapidity]), L, p, m.site_parity)
        )
        rows.append([m.root.real, m.root.imag, m.eigenphase, m.residual,
                     sz_ed, sz_fv, abs(sz_ed - sz_fv)])
    return _csv_text(
        ["root_re", "root_im", "eigenphase", "eigres", "sz_ed", "sz_fv", "abs_diff"],
        rows,
        comments=["one-magnon Bethe roots vs dense Floquet eigenstates, site 1"],
    )


def _cmd_free(cfg: RunConfig) -> str:
    import numpy as np

    from .free_fermion import (
        FreePointSpec,
        current_asymptotic,
        magnetization_asymptotic,
        magnetization_time,
    )

    o = cfg.options
    spec = FreePointSpec.from_params(o["delta"], o["tau"])
    base = {"delta": o["delta"], "tau": o["tau"]}
    if o["mode"] == "asymptotic":
        return _json_dump(dict(
            base,
            even_site=magnetization_asymptotic(spec, 0),
            odd_site=magnetization_asymptotic(spec, 1),
            magnitude=abs(magnetization_asymptotic(spec, 0)),
        )) + "\n"
    if o["mode"] == "current":
        return _json_dump(dict(base, current=current_asymptotic(spec))) + "\n"
    t = np.arange(o["steps"] + 1)
    m = magnetization_time(spec, o["L"], t)
    rows = [[int(tt), m[i, 0], m[i, 1]] for i, tt in enumerate(t)]
    return _csv_text(
        ["t", "sz_even", "sz_odd"],
        rows,
        comments=[f"free-line mode sum, L={o['L']}"],
    )


_FIG_TAUS_GAPPED = (0.4, 0.8, 1.2, 1.5, 1.7)
_FIG_ROOTS = ((1, 3), (1, 4), (1, 5), (2, 5))  # gamma/pi as (num, den)


def _root_taus(delta: float) -> list[tuple[float, float]]:
    """(gamma/pi, tau) for the supported roots of unity above threshold."""
    from .params import tau_for_gamma, threshold_tau

    out = []
    for num, den in _FIG_ROOTS:
        g = math.pi * num / den
        try:
            tau = tau_for_gamma(delta, g, (threshold_tau(delta) + 1e-6, 2.5))
        except TrotterXXZError:
            continue
        out.append((num / den, tau))
    return out


def _cmd_reproduce(cfg: RunConfig) -> str:
    import numpy as np

    o = cfg.options
    fig = o["figure"]
    outdir = o["out_dir"]
    os.makedirs(outdir, exist_ok=True)
    delta = 2.5
    solver = {"n_max": 20, "grid_n": 512, "cutoff": 22.0, "tol": 1e-10, "eta_tol": 1e-7}
    path = os.path.join(outdir, f"{fig}.csv")

    if fig == "fig1":
        rows = []
        for tau in _FIG_TAUS_GAPPED:
            rec = _stagmag_point(delta, tau, solver)
            rows.append([rec["tau"], rec["gamma_over_pi"], rec["regime"], rec["staggered"]])
        for gpi, tau in _root_taus(delta):
            rec = _stagmag_point(delta, tau, solver)
            rows.append([rec["tau"], gpi, rec["regime"], rec["staggered"]])
        from .free_fermion import FreePointSpec, magnetization_asymptotic

        tau_free = 2.0 * math.pi / delta
        rows.append([tau_free, 0.5, "free_point",
                     magnetization_asymptotic(FreePointSpec.from_params(delta, tau_free))])
        rows.sort(key=lambda r: r[0])
        text = _csv_text(
            ["tau", "gamma_over_pi", "regime", "staggered"],
            rows,
            comments=[f"late-time staggered magnetization across the transition, delta={delta}",
                      f"threshold tau_th={_fmt(2 * math.pi / (delta + 1))}"],
        )
    elif fig == "fig2":
        taus = (0.5, 1.0, 1.5)
        states = []
        for tau in taus:
            p = _derived(delta, tau)
            states.append(_gapped_state(p, 12, 256, 1e-10))
        header = ["lam"]
        for tau in taus:
            header += [f"rho1_tau{_fmt(tau)}", f"rho2_tau{_fmt(tau)}"]
        grid = states[0].grid
        rows = []
        for i in range(grid.n):
            row = [grid.nodes[i]]
            for st in states:
                row += [st.rho[0, i], st.rho[1, i]]
            rows.append(row)
        text = _csv_text(header, rows,
                         comments=[f"gapped dGGE root densities rho_1, rho_2, delta={delta}"])
    elif fig == "fig3":
        L = min(o["l_max"], 12)
        taus = [1.2, 1.5, 2.0029, 2.1491]
        steps = 60
        cols = []
        for tau in taus:
            from .params import ModelParams
            from .exact_small import evolve_and_average

            r = evolve_and_average(ModelParams(delta, tau, L), L, steps)
            stag = (r.sz * (-1.0) ** np.arange(L)).mean(axis=1)
            cols.append(stag)
        header = ["t"] + [f"stag_tau{_fmt(t)}" for t in taus]
        rows = [[t] + [c[t] for c in cols] for t in range(steps + 1)]
        text = _csv_text(
            header, rows,
            comments=[
                f"staggered magnetization under the circuit, delta={delta}, L={L}",
                "finite-size exact-diagonalization evolution in place of "
                "thermodynamic-limit tensor-network data",
            ],
        )
    else:  # figS4
        from .exact_small import diagonal_ensemble_sz
        from .params import tau_for_gamma, threshold_tau

        rows = []
        for den in (3, 4, 5):
            g = math.pi / den
            tau = tau_for_gamma(delta, g, (threshold_tau(delta) + 1e-6, 2.5))
            for L in range(6, o["l_max"] + 1, 2):
                s1 = diagonal_ensemble_sz(_derived(delta, tau), L, site=1)
                s2 = diagonal_ensemble_sz(_derived(delta, tau), L, site=2)
                rows.append([1.0 / den, L, 1.0 / L, 0.5 * (s1 - s2)])
        text = _csv_text(
            ["gamma_over_pi", "L", "one_over_L", "staggered"],
            rows,
            comments=[f"finite-size diagonal-ensemble staggered magnetization, delta={delta}"],
        )
    _write(text, path)
    return f"wrote {path}\n"


# ---------------------------------------------------------------------------
# entry point


def run(cfg: RunConfig, threads: int = 1) -> int:
    """Execute a resolved configuration; returns the exit status."""
    if cfg.command == "params":
        text = _cmd_params(cfg)
    elif cfg.command == "dgge":
        text = _cmd_dgge(cfg)
    elif cfg.command == "ysystem-check":
        text = _cmd_ysystem_check(cfg)
    elif cfg.command == "stagmag":
        text = _cmd_stagmag(cfg)
    elif cfg.command == "stagmag-sweep":
        text = _cmd_stagmag_sweep(cfg, threads)
    elif cfg.command == "ed":
        text = _cmd_ed(cfg)
    elif cfg.command == "free":
        text = _cmd_free(cfg)
    elif cfg.command == "reproduce":
        text = _cmd_reproduce(cfg)
    else:  # pragma: no cover - argparse guards this
        raise ValueError(f"unknown command {cfg.command!r}")
    if cfg.command != "reproduce":
        _write(text, cfg.out)
    else:
        sys.stdout.write(text)
    return 0


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    # resolve the thread budget before any numpy-backed module is imported
    threads = None
    for i, a in enumerate(argv):
        if a == "--threads" and i + 1 < len(argv):
            threads = argv[i + 1]
        elif a.startswith("--threads="):
            threads = a.split("=", 1)[1]
    if threads is None:
        threads = os.environ.get(ENV_PREFIX + "THREADS", "1")
    try:
        threads = max(1, int(threads))
    except ValueError:
        sys.stderr.write("trotterxxz: error: --threads expects an integer\n")
        return 1
    for var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS"):
        os.environ.setdefault(var, str(threads))

    try:
        args = _build_parser().parse_args(argv)
        cfg = _resolve_config(args)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return run(cfg, threads=threads)
    except TrotterXXZError as exc:
        sys.stderr.write(f"trotterxxz: {type(exc).__module__}.{type(exc).__name__}: {exc}\n")
        return 2
    except OSError as exc:
        sys.stderr.write(f"trotterxxz: i/o error: {exc}\n")
        return 1


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
