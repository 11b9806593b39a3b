"""``pgc``: analyse, reconstruct, verify and plot curves from JSON specification files.

Exit codes: 0 success, 1 curve not admissible, 2 bad specification or flag,
3 numeric failure. No other codes are produced.
"""
from __future__ import annotations

import sys

import click
import numpy as np

from . import __version__
from .classify import FrameDegenerateError, ResidualRow, classify, search_origin
from .config import DEFAULT, Tolerances
from .expr import EvalDomainError, ExprError
from .frenet import (CausalVerdict, GraphCurve, InadmissibleError, SampledCurve,
                     curvatures_from_frames, frenet_ode_residuals, frenet_series, uniform_grid)
from .geometry import GVector, det_rows, lorentz_rows
from .output import atomic_write, csv_text, dumps
from .plot import PROJECTIONS, project, range_text, render_svg
from .reconstruct import (IntrinsicSpec, NumericOverflowError, ZeroTorsionError,
                          integrate_m_system, m_closed_form, reconstruct_curve)
from .specfile import SpecError, load_spec

EXIT_OK, EXIT_INADMISSIBLE, EXIT_SPEC, EXIT_NUMERIC = 0, 1, 2, 3


class Failure(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


# --- shared helpers -------------------------------------------------------------------

def _parse_origin(ctx, param, value):
    if value is None:
        return None
    try:
        parts = [float(p) for p in value.split(",")]
    except ValueError:
        raise click.BadParameter("expected three comma-separated numbers x,y,z") from None
    if len(parts) != 3 or not all(np.isfinite(parts)):
        raise click.BadParameter("expected three comma-separated numbers x,y,z")
    return GVector(*parts)


def _load(spec_path, config_path):
    tol = DEFAULT
    if config_path:
        try:
            tol = Tolerances.load(config_path)
        except (OSError, ValueError, KeyError, TypeError) as exc:
            msg = exc.args[0] if isinstance(exc, KeyError) else exc
            raise Failure(EXIT_SPEC, f"config {config_path}: {msg}") from None
    return load_spec(spec_path), tol


def _curve_and_grid(spec, samples, tol):
    """Curve object ready for the frenet module, plus the grid to use (or None)."""
    n = spec.grid_size(samples, tol.grid_n)
    if isinstance(spec.curve, GraphCurve):
        return spec.curve, uniform_grid(spec.domain, n)
    if isinstance(spec.curve, IntrinsicSpec):
        return reconstruct_curve(spec.curve, n), None
    return spec.curve, None


def _emit(text, path):
    if path:
        atomic_write(path, text)
    else:
        click.echo(text, nl=False)


def _header(command, spec, tol, origin=None):
    out = {"tool": "pgc", "version": __version__, "command": command, "input": spec.echo()}
    if origin is not None:
        out["origin"] = list(origin)
    out["config"] = tol.as_dict()
    return out


def _frenet_summary(fs, verdict):
    return {
        "source": fs.source,
        "samples": int(len(fs.s)),
        "epsilon": int(fs.eps[0]),
        "causal": verdict.kind,
        "kappa_min": float(fs.kappa.min()),
        "kappa_max": float(fs.kappa.max()),
        "tau_min": float(fs.tau.min()),
        "tau_max": float(fs.tau.max()),
    }


def _analyse(spec, tol, samples, origin, search=False):
    curve, grid = _curve_and_grid(spec, samples, tol)
    fs = frenet_series(curve, grid, adm_eps=tol.adm_eps)
    # frenet_series already refused sign changes, so epsilon decides the causal type
    verdict = CausalVerdict("spacelike" if fs.eps[0] == -1 else "timelike")
    origin = origin if origin is not None else spec.origin
    if verdict.kind == "timelike":
        return curve, fs, verdict, origin, None
    if search:
        origin = search_origin(fs, origin, tol=tol)
    report = classify(curve, origin, grid, tol)
    return curve, fs, verdict, origin, report


TIMELIKE_WARNING = "curve is timelike (y''^2 > z''^2); classification covers spacelike curves only"


def _run(body):
    """Map exceptions to the exit-code contract."""
    try:
        body()
        return EXIT_OK
    except Failure as exc:
        click.echo(f"pgc: error: {exc}", err=True)
        return exc.code
    except (SpecError, ExprError) as exc:
        click.echo(f"pgc: error: {exc}", err=True)
        return EXIT_SPEC
    except (InadmissibleError, FrameDegenerateError) as exc:
        click.echo(f"pgc: error: {exc}", err=True)
        return EXIT_INADMISSIBLE
    except (EvalDomainError, NumericOverflowError, ZeroTorsionError, ArithmeticError,
            FloatingPointError) as exc:
        click.echo(f"pgc: numeric failure: {exc}", err=True)
        return EXIT_NUMERIC
    except Exception as exc:  # anything else is still a numeric/runtime failure
        click.echo(f"pgc: numeric failure: {type(exc).__name__}: {exc}", err=True)
        return EXIT_NUMERIC


# --- commands -----------------------------------------------------------------------------

spec_argument = click.argument("spec", type=click.Path(dir_okay=False))
config_option = click.option("--config", "config_path", type=click.Path(dir_okay=False),
                             help="JSON file overriding tolerances and grid defaults.")
samples_option = click.option("--samples", type=click.IntRange(min=9),
                              help="Grid size (forced odd).")
origin_option = click.option("--origin", callback=_parse_origin,
                             help="Origin for the decomposition, as x,y,z.")


@click.group()
@click.version_option(__version__, prog_name="pgc")
def cli():
    """Curves in the pseudo-Galilean space G_3^1."""


@cli.command()
@spec_argument
@click.option("--out", type=click.Path(dir_okay=False), help="Report path (default stdout).")
@click.option("--csv", "csv_path", type=click.Path(dir_okay=False),
              help="Per-sample series s, kappa, tau, m0, m1, m2, q, rho.")
@config_option
@origin_option
@samples_option
@click.option("--origin-search", is_flag=True,
              help="Pick the origin on a coarse grid that minimises the variance of q.")
def analyze(spec, out, csv_path, config_path, origin, samples, origin_search):
    """Frenet apparatus, decomposition and classification."""

    def body():
        cs, tol = _load(spec, config_path)
        curve, fs, verdict, used_origin, report = _analyse(cs, tol, samples, origin, origin_search)
        doc = _header("analyze", cs, tol, used_origin)
        doc["frenet"] = _frenet_summary(fs, verdict)
        if report is None:
            doc["warnings"] = [TIMELIKE_WARNING]
            click.echo(f"pgc: warning: {TIMELIKE_WARNING}", err=True)
            text = dumps(doc)
            if csv_path:
                atomic_write(csv_path, csv_text(["s", "kappa", "tau"], [fs.s, fs.kappa, fs.tau]))
            _emit(text, out)
            return
        d = report.decomposition
        doc["decomposition"] = {
            "reconstruction_error": d.reconstruction_error,
            "m0_range": [float(d.m0.min()), float(d.m0.max())],
            "q_range": [float(d.q.min()), float(d.q.max())],
        }
        doc["classification"] = {
            "constant_ratio": report.constant_ratio,
            "t_constant": report.t_constant,
            "n_constant": report.n_constant,
            "spherical": report.spherical,
            "circle": report.circle,
        }
        doc["residuals"] = report.residuals
        doc["warnings"] = report.warnings
        text = dumps(doc)
        if csv_path:
            with np.errstate(divide="ignore", invalid="ignore"):
                rho = np.where(d.q != 0, d.m0 ** 2 / d.q, np.nan)
            atomic_write(csv_path, csv_text(
                ["s", "kappa", "tau", "m0", "m1", "m2", "q", "rho"],
                [fs.s, fs.kappa, fs.tau, d.m0, d.m1, d.m2, d.q, rho]))
        _emit(text, out)

    return _run(body)


@cli.command()
@spec_argument
@click.option("--csv", "csv_path", type=click.Path(dir_okay=False),
              help="Curve samples s, x, y, z (default stdout).")
@click.option("--out", type=click.Path(dir_okay=False), help="Round-trip report path.")
@config_option
@samples_option
@click.option("--mcoeffs", is_flag=True,
              help="Also compute the frame coefficients m1, m2 by quadrature and by RK4.")
def reconstruct(spec, csv_path, out, config_path, samples, mcoeffs):
    """Curve from curvature and torsion (intrinsic specifications only)."""

    def body():
        cs, tol = _load(spec, config_path)
        if cs.form != "intrinsic":
            raise Failure(EXIT_SPEC, f"field 'form': reconstruct needs an intrinsic "
                                     f"specification, got {cs.form!r}")
        n = cs.grid_size(samples, tol.grid_n)
        rc = reconstruct_curve(cs.curve, n)
        kappa, tau = curvatures_from_frames(rc.s, rc.T, rc.N, rc.B)
        doc = _header("reconstruct", cs, tol)
        doc["samples"] = int(len(rc.s))
        doc["round_trip"] = {
            "method": "frame differences",
            "kappa_error": float(np.abs(kappa - rc.kappa).max()),
            "tau_error": float(np.abs(tau - rc.tau).max()),
        }
        doc["frame_identities"] = {
            "g(N,N)+1": float(np.abs(lorentz_rows(rc.N, rc.N) + 1.0).max()),
            "g(B,B)-1": float(np.abs(lorentz_rows(rc.B, rc.B) - 1.0).max()),
            "det(T,N,B)-1": float(np.abs(det_rows(rc.T, rc.N, rc.B) - 1.0).max()),
        }
        if mcoeffs:
            cf = m_closed_form(cs.curve, n, tol.tau_eps)
            _, _, m1, m2 = integrate_m_system(cs.curve, n, float(cf.m1[0]), float(cf.m2[0]))
            doc["coefficients"] = {
                "closed_form_vs_rk4": float(max(np.abs(m1 - cf.m1).max(),
                                                np.abs(m2 - cf.m2).max())),
                "variant_residuals": {k: list(v) for k, v in cf.variants.items()},
                "m1_start": float(cf.m1[0]),
                "m2_start": float(cf.m2[0]),
            }
        csv_out = csv_text(["s", "x", "y", "z"], [rc.s, *rc.alpha.T])
        report = dumps(doc)
        if out:
            atomic_write(out, report)
        _emit(csv_out, csv_path)

    return _run(body)


@cli.command()
@spec_argument
@config_option
@origin_option
@samples_option
@click.option("--out", type=click.Path(dir_okay=False), help="Also write the table as JSON.")
def verify(spec, config_path, origin, samples, out):
    """Residual table of every identity that applies to the curve."""

    def body():
        cs, tol = _load(spec, config_path)
        curve, fs, verdict, used_origin, report = _analyse(cs, tol, samples, origin)
        if report is None:
            thr = tol.frenet_ode_sampled if fs.source == "sampled" else tol.frenet_ode
            rows = [ResidualRow(f"Frenet equation {k}", v, thr, "pass" if v <= thr else "fail")
                    for k, v in frenet_ode_residuals(fs).items()]
            click.echo(f"pgc: warning: {TIMELIKE_WARNING}", err=True)
        else:
            rows = report.residuals
        click.echo(_table(rows), nl=False)
        if out:
            doc = _header("verify", cs, tol, used_origin)
            doc["residuals"] = rows
            atomic_write(out, dumps(doc))

    return _run(body)


def _table(rows):
    head = ("identity", "sup-residual", "threshold", "status")
    cells = [(r.identity, "-" if r.residual is None else f"{r.residual:.3e}",
              f"{r.threshold:.0e}", r.status + (f" ({r.note})" if r.note else "")) for r in rows]
    widths = [max(len(c[i]) for c in [head, *cells]) for i in range(4)]
    fmt = "  ".join(f"{{:<{w}}}" for w in widths)
    lines = [fmt.format(*head).rstrip(), fmt.format(*("-" * w for w in widths))]
    lines += [fmt.format(*c).rstrip() for c in cells]
    return "\n".join(lines) + "\n"


@cli.command()
@spec_argument
@click.option("--svg", "svg_path", type=click.Path(dir_okay=False), help="Output path (default stdout).")
@click.option("--projection", type=click.Choice(sorted(PROJECTIONS)), default="yz",
              show_default=True)
@config_option
@samples_option
def plot(spec, svg_path, projection, config_path, samples):
    """SVG polyline of a coordinate projection."""

    def body():
        cs, tol = _load(spec, config_path)
        curve, grid = _curve_and_grid(cs, samples, tol)
        if isinstance(curve, GraphCurve):
            points = curve.jet(grid, order=0).d[0]
        elif isinstance(curve, SampledCurve):
            points = curve.points
        else:
            points = curve.alpha
        try:
            fs = frenet_series(curve, grid, adm_eps=tol.adm_eps, allow_flip=True)
            footer = f"{range_text('kappa', fs.kappa)}; {range_text('tau', fs.tau)}"
        except InadmissibleError:
            footer = "curvature undefined (y''^2 - z''^2 vanishes)"
        u, v = project(points, projection)
        title = cs.name or spec
        _emit(render_svg(u, v, title, footer, labels=tuple(projection)), svg_path)

    return _run(body)


def run(argv=None) -> int:
    """Invoke the CLI and return its exit code (never raises SystemExit)."""
    try:
        rv = cli.main(args=argv, prog_name="pgc", standalone_mode=False)
    except click.exceptions.Exit as exc:
        return EXIT_OK if exc.exit_code == 0 else EXIT_SPEC
    except click.ClickException as exc:
        exc.show()
        return EXIT_SPEC
    except click.exceptions.Abort:
        return EXIT_NUMERIC
    if isinstance(rv, int):
        return rv
    return EXIT_OK


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
