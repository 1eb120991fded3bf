"""Command-line interface for photonenv."""

import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict, Optional, Tuple

import click
import pandas as pd
from click.core import ParameterSource

from ..__version__ import __version__
from ..channel import PURE_STATE_NAMES, STATE_NAMES, environment_for, initial_ket
from ..core.config import load_config, load_default_config
from ..core.registry import registry
from ..core.exceptions import NetlistError, NetlistValidationError
from ..photonics import (
    TEMPLATE_DEFAULTS,
    compile_circuit,
    internal_from_computational,
    load_bundled,
    parse_netlist,
    propagate,
    render_netlist,
    repeat_experiment,
    run_experiment,
)
from .reports import SweepSpec, circuit_table, curve_table, experiment_row, kraus_report

# Configure logging
logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)

EXIT_IO = 3
EXIT_SELF_CHECK = 4
EXIT_VALIDATION = 5

DEFAULTS = load_default_config()
FORMATS = click.Choice(["csv", "json"])


def setup_logging(verbose: bool, quiet: bool):
    """Setup logging based on verbosity flags."""
    if quiet:
        logging.getLogger().setLevel(logging.ERROR)
    elif verbose:
        logging.getLogger().setLevel(logging.DEBUG)
    else:
        logging.getLogger().setLevel(logging.INFO)


def _default(command: str, key: str) -> Any:
    return DEFAULTS.get(command, {}).get(key)


def _verbose() -> bool:
    ctx = click.get_current_context(silent=True)
    return bool(ctx and ctx.find_root().obj and ctx.find_root().obj.get("verbose"))


def _render(frame: pd.DataFrame, fmt: str, extra: Optional[Dict[str, Any]] = None) -> str:
    if fmt == "csv":
        return frame.to_csv(index=False, float_format="%.17g")
    records = frame.astype(object).where(frame.notna(), None).to_dict(orient="records")
    payload: Any = records if extra is None else {**extra, "rows": records}
    return json.dumps(payload, indent=2) + "\n"


def _emit(frame: pd.DataFrame, out: Optional[str], fmt: str, extra: Optional[Dict[str, Any]] = None) -> None:
    """Write the table to ``out`` or stdout; exit 3 if the file cannot be written."""
    text = _render(frame, fmt, extra)
    if out is None:
        click.echo(text, nl=False)
        return
    try:
        Path(out).write_text(text)
    except OSError as e:
        logger.error(f"Cannot write {out}: {e}")
        sys.exit(EXIT_IO)
    logger.info(f"Wrote {len(frame)} rows to {out}")


def _default_map(config: Dict[str, Dict[str, Any]]) -> Dict[str, Dict[str, Any]]:
    """Config sections keyed by click parameter names (``format`` is stored as ``fmt``)."""
    return {
        section: {("fmt" if key == "format" else key): value for key, value in values.items()}
        for section, values in config.items()
    }


def _fail(message: str, code: int = 1) -> None:
    logger.error(message)
    sys.exit(code)


@click.group()
@click.version_option(__version__, '--version', prog_name="photonenv", message="%(prog)s %(version)s")
@click.option('--config', 'config_path', type=click.Path(dir_okay=False),
              help='YAML file overriding command defaults')
@click.option('-v', '--verbose', is_flag=True, help='Enable verbose logging')
@click.option('-q', '--quiet', is_flag=True, help='Suppress logging output')
@click.pass_context
def cli(ctx, config_path, verbose, quiet):
    """photonenv: collective decay of two qubits and its photonic simulation.

    Emits concurrence curves, checks the Kraus presentations of the channel,
    runs linear-optics netlists and simulates the witness measurement.
    """
    setup_logging(verbose, quiet)

    # Ensure context object exists
    if ctx.obj is None:
        ctx.obj = {}
    ctx.obj["verbose"] = verbose

    if config_path:
        try:
            ctx.default_map = _default_map(load_config(config_path))
        except OSError as e:
            _fail(f"Cannot read config {config_path}: {e}", EXIT_IO)
        except ValueError as e:
            raise click.BadParameter(str(e), param_hint="--config")


@cli.command()
@click.option('--param', type=click.Choice(registry.list_components("environment")), default=_default("curve", "param"),
              show_default=True, help='Time parameter: Gamma*t (free space) or g*t (cavity)')
@click.option('--start', type=float, default=_default("curve", "start"), show_default=True)
@click.option('--stop', type=float, default=_default("curve", "stop"), show_default=True)
@click.option('--points', type=int, default=_default("curve", "points"), show_default=True)
@click.option('--initial', type=click.Choice(STATE_NAMES), default=_default("curve", "initial"),
              show_default=True, help='Initial two-qubit state')
@click.option('--alpha', type=float, default=_default("curve", "alpha"), show_default=True,
              help='Angle in degrees for the psi and phi states')
@click.option('--workers', type=click.IntRange(min=1), default=_default("curve", "workers"),
              show_default=True, help='Threads evaluating sweep points')
@click.option('--out', type=click.Path(dir_okay=False), help='Output file (default: stdout)')
@click.option('--format', 'fmt', type=FORMATS, default=_default("curve", "format"), show_default=True)
def curve(param, start, stop, points, initial, alpha, workers, out, fmt):
    """Concurrence, witness and emission rate along a time sweep."""
    try:
        spec = SweepSpec(param, start, stop, points)
    except ValueError as e:
        raise click.UsageError(f"invalid sweep: {e}")

    try:
        frame = curve_table(spec, initial=initial, alpha=alpha, workers=workers)
    except Exception as e:
        logger.error(f"Curve failed: {e}")
        if _verbose():
            raise
        sys.exit(1)

    _emit(frame, out, fmt)


@cli.command()
@click.option('--gamma-t', type=click.FloatRange(min=0.0), default=_default("kraus", "gamma_t"),
              show_default=True, help='Gamma*t at which to build the Kraus sets')
@click.option('--seed', type=int, default=_default("kraus", "seed"), show_default=True,
              help='Seed for the random test states')
@click.option('--samples', type=click.IntRange(min=1), default=_default("kraus", "samples"), show_default=True)
@click.option('--out', type=click.Path(dir_okay=False), help='Output file (default: stdout)')
@click.option('--format', 'fmt', type=FORMATS, default=_default("kraus", "format"), show_default=True)
def kraus(gamma_t, seed, samples, out, fmt):
    """Closed-form and Choi-extracted Kraus operators with self-checks."""
    try:
        report = kraus_report(gamma_t, seed, samples)
    except Exception as e:
        logger.error(f"Kraus construction failed: {e}")
        if _verbose():
            raise
        sys.exit(EXIT_SELF_CHECK)

    summary = report.summary()
    click.echo(
        "closed-form residual {closed_form_residual:.3e}, Choi residual {choi_residual:.3e}, "
        "Choi rank {choi_rank}, max action discrepancy {max_action_discrepancy:.3e}".format(**summary),
        err=True,
    )
    _emit(report.operator_table(), out, fmt, extra=summary)

    if not report.passed:
        _fail(f"Kraus self-check failed at gammaT={gamma_t}", EXIT_SELF_CHECK)


def _parse_assignments(assignments: Tuple[str, ...]) -> Dict[str, Any]:
    values: Dict[str, Any] = {}
    for item in assignments:
        key, eq, raw = item.partition("=")
        if not eq or not key:
            raise click.BadParameter(f"expected name=value, got '{item}'", param_hint="--set")
        try:
            values[key] = float(raw)
        except ValueError:
            values[key] = raw
    return values


def _read_netlist(netlist: str) -> str:
    if netlist.startswith("@"):
        try:
            return load_bundled(netlist[1:])
        except KeyError as e:
            raise click.BadParameter(str(e.args[0]), param_hint="NETLIST")
    try:
        return Path(netlist).read_text(encoding="utf-8")
    except OSError as e:
        _fail(f"Cannot read netlist {netlist}: {e}", EXIT_IO)


@cli.command()
@click.argument('netlist')
@click.option('--set', 'assignments', multiple=True, metavar='NAME=VALUE',
              help='Template parameter, e.g. theta1=20.7')
@click.option('--input', 'input_state', type=click.Choice(PURE_STATE_NAMES),
              help='Two-qubit state injected at the source path (default: the source preparation)')
@click.option('--out', type=click.Path(dir_okay=False), help='Output file (default: stdout)')
@click.option('--format', 'fmt', type=FORMATS, default=_default("circuit", "format"), show_default=True)
def circuit(netlist, assignments, input_state, out, fmt):
    """Propagate a photon through a netlist (a file or @name of a bundled one)."""
    text = _read_netlist(netlist)
    params = {**TEMPLATE_DEFAULTS, **_parse_assignments(assignments)}

    try:
        if "$" in text:
            text = render_netlist(text, **params)
        ir = parse_netlist(text)
    except NetlistValidationError as e:
        _fail(f"Invalid netlist {netlist}: {e}", EXIT_VALIDATION)
    except (NetlistError, ValueError) as e:
        _fail(f"Cannot parse netlist {netlist}: {e}", 2)

    try:
        compiled = compile_circuit(ir)
        if input_state is not None:
            state = compiled.state_on(internal_from_computational(initial_ket(input_state)))
        elif ir.preparation is not None:
            state = compiled.prepared_state()
        else:
            raise click.UsageError("netlist has no polarized source; pass --input")
        final = propagate(compiled, state)
    except click.UsageError:
        raise
    except Exception as e:
        logger.error(f"Circuit run failed: {e}")
        if _verbose():
            raise
        sys.exit(1)

    logger.info(f"Propagated through {len(ir)} elements; output norm {final.norm():.12f}")
    _emit(circuit_table(compiled, final), out, fmt)


@cli.command()
@click.option('--gamma-t', type=click.FloatRange(min=0.0), default=None,
              show_default=str(_default("experiment", "gamma_t")), help='Gamma*t (free-space decay)')
@click.option('--gt', type=click.FloatRange(min=0.0), default=None, help='g*t (single-mode cavity)')
@click.option('--shots', type=click.IntRange(min=1), default=_default("experiment", "shots"), show_default=True)
@click.option('--seed', type=int, default=_default("experiment", "seed"), show_default=True)
@click.option('--repeats', type=click.IntRange(min=1), default=_default("experiment", "repeats"), show_default=True,
              help='Independent repetitions, each with its own generator spawned from --seed')
@click.option('--workers', type=click.IntRange(min=1), default=_default("experiment", "workers"),
              show_default=True, help='Threads sampling the repetitions')
@click.option('--exact', is_flag=True, help='Report estimates from exact probabilities')
@click.option('--out', type=click.Path(dir_okay=False), help='Output file (default: stdout)')
@click.option('--format', 'fmt', type=FORMATS, default=_default("experiment", "format"), show_default=True)
def experiment(gamma_t, gt, shots, seed, repeats, workers, exact, out, fmt):
    """Simulate the witness measurement and estimate the concurrence."""
    ctx = click.get_current_context()
    gamma_t_given = ctx.get_parameter_source("gamma_t") is ParameterSource.COMMANDLINE
    if gamma_t_given and gt is not None:
        raise click.UsageError("--gamma-t and --gt are mutually exclusive")
    if repeats > 1 and exact:
        raise click.UsageError("--exact and --repeats are mutually exclusive")

    model = environment_for("gt" if gt is not None else None)
    parameter = model.parameter
    if gt is not None:
        value = gt
    else:
        value = gamma_t if gamma_t is not None else _default("experiment", "gamma_t")
    try:
        if repeats == 1:
            results = [run_experiment(value, shots, seed, model, exact=exact)]
        else:
            results = repeat_experiment(value, shots, seed, repeats, model, workers=workers)
    except Exception as e:
        logger.error(f"Experiment failed: {e}")
        if _verbose():
            raise
        sys.exit(1)

    rows = [experiment_row(result, parameter, seed, repeat=n) for n, result in enumerate(results)]
    _emit(pd.DataFrame(rows), out, fmt)


if __name__ == '__main__':
    cli()
