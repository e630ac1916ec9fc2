"""Command-line front end.

Exit codes: 0 success, 2 config error, 3 physics error, 4 infeasible
design, 5 statistical verification failure.
"""

from __future__ import annotations

import functools
import sys
from dataclasses import replace
from pathlib import Path

import click

from . import config as config_mod
from .design import max_length_under_cooling, run_sweep, solve_antenna_width
from .errors import EtaOutOfRange, Infeasible, QlinkError, VerificationFailure
from .langevin_mc import (
    Integrator,
    McConfig,
    convergence_report,
    oracle_grid,
)
from .link import propagate
from .output import result_record, to_csv, to_json
from .receiver import detect

LINK_COLUMNS = (
    "Ms", "Mn", "snr_db", "eta", "Ns", "Nn", "Gamma", "t", "n_th", "alpha", "v_g",
    "Gamma_t", "inductance", "status",
)
SWEEP_COLUMNS = ("var", "Ms", "Mn", "snr_db", "eta", "Ns", "Nn", "status")
DESIGN_COLUMNS = (
    "status", "width", "height", "eta", "Ns", "Nn", "required_input_photons", "Gamma_t",
    "binding", "cooling_temperature", "max_length", "conductivity_at_cooling", "reason",
)
MC_COLUMNS = (
    "gamma_t", "n_th", "initial_photons", "integrator", "n_steps", "n_trajectories",
    "mean_photons", "analytic", "abs_error", "std_error", "z", "z_mutual",
)
CONVERGENCE_COLUMNS = ("n_trajectories", "mean_photons", "analytic", "abs_error", "std_error", "z")
Z_THRESHOLD = 3.0


def _guard(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except QlinkError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(exc.exit_code)

    return wrapper


def _load(path, overrides, fmt, output) -> config_mod.Config:
    cfg = config_mod.load(path, overrides) if path else config_mod.load_dict({}, overrides)
    out = cfg.output
    if fmt:
        out = replace(out, format=fmt)
    if output:
        out = replace(out, path=str(output))
    return replace(cfg, output=out)


def _emit(cfg: config_mod.Config, text: str) -> None:
    if cfg.output.path:
        Path(cfg.output.path).write_bytes(text.encode())
        click.echo(f"wrote {cfg.output.path}", err=True)
    else:
        sys.stdout.write(text)
        sys.stdout.flush()


def _provenance(cfg: config_mod.Config, seed=None) -> dict:
    sc = cfg.scenario
    return {
        "attenuation_model": cfg.sections["attenuation_model"],
        "conductivity_model": sc.waveguide.wall.describe() if sc else None,
        "seed": seed,
    }


def _write(cfg, command, columns, rows, outputs, seed=None) -> None:
    if cfg.output.format == "csv":
        _emit(cfg, to_csv(columns, rows))
    else:
        _emit(cfg, to_json(result_record(command, cfg.echo(), outputs, _provenance(cfg, seed))))


def common_options(fn):
    fn = click.option("--output", "-o", type=click.Path(dir_okay=False),
                      help="Write here instead of output.path / stdout.")(fn)
    fn = click.option("--format", "fmt", type=click.Choice(["csv", "json"]),
                      help="Override output.format.")(fn)
    fn = click.option("--set", "overrides", multiple=True, metavar="KEY=VALUE",
                      help="Override a config value, e.g. waveguide.length=10.")(fn)
    return fn


@click.group()
def main() -> None:
    """Room-temperature quantum microwave link simulator."""


@main.command("link-budget")
@click.argument("config", type=click.Path(exists=True, dir_okay=False))
@common_options
@_guard
def link_budget(config, overrides, fmt, output):
    """Photon-number budget of one scenario."""
    cfg = _load(config, overrides, fmt, output)
    sc = cfg.require_scenario()
    ant = sc.require_antenna()
    transport = propagate(sc.signal, sc.waveguide, sc.attenuation_model)
    row = {
        "Ms": transport.Ms, "Mn": transport.Mn, "snr_db": transport.snr_db,
        "Gamma": transport.Gamma, "t": transport.propagation_time, "n_th": transport.n_th,
        "alpha": transport.alpha, "v_g": transport.v_g, "Gamma_t": transport.Gamma_t,
        "eta": None, "Ns": None, "Nn": None, "inductance": None, "status": "ok",
    }
    failure = None
    try:
        det = detect(transport, ant, sc.waveguide, sc.signal.omega)
        row.update(eta=det.eta, Ns=det.Ns, Nn=det.Nn, inductance=det.inductance)
    except EtaOutOfRange as exc:
        row["status"] = "eta_out_of_range"
        failure = exc
    _write(cfg, "link-budget", LINK_COLUMNS, [row], row)
    if failure is not None:
        raise failure
    if cfg.output.path:
        click.echo(f"Ns={row['Ns']:.6g} Nn={row['Nn']:.6g} SNR={row['snr_db']:.4g} dB "
                   f"eta={row['eta']:.6g}")


@main.command("sweep")
@click.argument("config", type=click.Path(exists=True, dir_okay=False))
@common_options
@_guard
def sweep(config, overrides, fmt, output):
    """Sweep one parameter; table columns var,Ms,Mn,snr_db,eta,Ns,Nn,status."""
    cfg = _load(config, overrides, fmt, output)
    spec = cfg.sweep_spec()
    rows = [vars(r) for r in run_sweep(spec)]
    _write(cfg, "sweep", SWEEP_COLUMNS, rows, {"variable": spec.variable.value, "rows": rows})


@main.command("design-antenna")
@click.argument("config", type=click.Path(exists=True, dir_okay=False))
@click.option("--cooling", type=float, default=None,
              help="Also report the longest feasible guide at this temperature (K).")
@common_options
@_guard
def design_antenna(config, cooling, overrides, fmt, output):
    """Largest loop meeting [constraint]; optionally the longest guide when cooled."""
    cfg = _load(config, overrides, fmt, output)
    sc = cfg.require_scenario()
    constraint = cfg.constraint()
    design = cfg.sections.get("design") or config_mod.defaults("design")
    if cooling is None:
        cooling = design["cooling_temperature"]
    h_ratio = design["h_ratio"]
    row = {c: None for c in DESIGN_COLUMNS}
    try:
        d = solve_antenna_width(constraint, sc, h_ratio)
        row.update(status="ok", width=d.width, height=d.height, eta=d.eta, Ns=d.Ns, Nn=d.Nn,
                   required_input_photons=d.required_input_photons, Gamma_t=d.Gamma_t,
                   binding=d.binding)
        if cooling is not None:
            row.update(
                cooling_temperature=cooling,
                max_length=max_length_under_cooling(sc, constraint, cooling, h_ratio),
                conductivity_at_cooling=sc.waveguide.wall.conductivity(cooling),
            )
    except Infeasible as exc:
        row.update(status="infeasible", reason=str(exc))
        _write(cfg, "design-antenna", DESIGN_COLUMNS, [row], row)
        raise
    _write(cfg, "design-antenna", DESIGN_COLUMNS, [row], row)
    if cfg.output.path:
        click.echo(f"width={row['width']:.6g} m eta={row['eta']:.6g} Ns={row['Ns']:.6g} "
                   f"Nn={row['Nn']:.6g} binding={row['binding']}")
        if cooling is not None:
            click.echo(f"max length at {cooling:g} K: {row['max_length']:.6g} m "
                       f"({sc.waveguide.wall.describe()})")


def _mc_rows(checks) -> list[dict]:
    rows = []
    for c in checks:
        for integrator, stats, steps, z in (
            (Integrator.EULER_MARUYAMA, c.euler, c.euler_steps, c.z_euler),
            (Integrator.EXACT, c.exact, c.exact_steps, c.z_exact),
        ):
            rows.append({
                "gamma_t": c.gamma_t, "n_th": c.n_th, "initial_photons": c.initial_photons,
                "integrator": integrator.value, "n_steps": steps,
                "n_trajectories": stats.n_effective, "mean_photons": stats.mean_photons,
                "analytic": c.analytic, "abs_error": abs(stats.mean_photons - c.analytic),
                "std_error": stats.std_error, "z": z, "z_mutual": c.z_mutual,
            })
    return rows


@main.command("mc-verify")
@click.argument("config", required=False, type=click.Path(exists=True, dir_okay=False))
@click.option("--convergence", type=click.Path(dir_okay=False), default=None,
              help="Also write a convergence table for [mc.convergence] to this CSV.")
@common_options
@_guard
def mc_verify(config, convergence, overrides, fmt, output):
    """Check the closed-form photon numbers against the Langevin Monte Carlo."""
    cfg = _load(config, overrides, fmt, output)
    if "mc" not in cfg.sections:
        defaults = {name: config_mod.defaults(name) for name in ("mc", "mc.convergence")}
        cfg = replace(cfg, sections={**cfg.sections, **defaults})
    mc = cfg.sections["mc"]
    checks = oracle_grid(
        gamma_ts=mc["gamma_t"], n_ths=mc["n_th"], initial_photons=mc["initial_photons"],
        n_trajectories=mc["n_trajectories"], seed=mc["seed"],
        euler_step_decay=mc["euler_step_decay"], n_steps=mc["n_steps"],
    )
    rows = _mc_rows(checks)
    worst = max(c.worst_z for c in checks)
    passed = worst <= Z_THRESHOLD
    _write(cfg, "mc-verify", MC_COLUMNS, rows,
           {"rows": rows, "worst_z": worst, "threshold": Z_THRESHOLD, "passed": passed},
           seed=mc["seed"])
    if convergence:
        conv = cfg.sections["mc.convergence"]
        case = McConfig.from_photons(conv["gamma_t"], conv["n_th"], conv["initial_photons"],
                                     seed=mc["seed"])
        table = convergence_report(case, conv["schedule"])
        Path(convergence).write_bytes(to_csv(
            CONVERGENCE_COLUMNS,
            [dict(vars(r), z=r.z) for r in table],
        ).encode())
    verdict = "PASS" if passed else "FAIL"
    click.echo(f"worst |mc - analytic|/std_error = {worst:.4g} (threshold {Z_THRESHOLD:g}): "
               f"{verdict}", err=True)
    if not passed:
        raise VerificationFailure(f"worst z-score {worst:.4g} exceeds {Z_THRESHOLD:g}")


if __name__ == "__main__":
    main()
