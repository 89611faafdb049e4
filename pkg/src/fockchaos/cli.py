"""Command-line entry point: ``fockchaos <subcommand> ...``.

Exit codes: 0 success, 1 domain error (invalid input values), 2 usage error.
``--config path.json`` supplies defaults for any flag (same keys as the flag
names); flags given on the command line win.
"""
from __future__ import annotations

import json
import sys

import click
import numpy as np

from . import algebra, chaos, indexset, io, martingale, selftest, transform
from . import __version__
from .chaos import CoefficientMap

FORMATS = ("json", "csv", "table")


def _floats(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise click.BadParameter(f"expected comma-separated numbers, got {text!r}") from None


def _ints(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise click.BadParameter(f"expected comma-separated integers, got {text!r}") from None


def _fmt(value):
    if isinstance(value, complex):
        return f"{value.real!r}{value.imag:+}j" if value.imag else repr(value.real)
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _jsonable(value):
    if isinstance(value, complex):
        return {"re": value.real, "im": value.imag}
    if isinstance(value, np.generic):
        return value.item()
    return value


def emit(rows: list[dict], fmt: str | None, stream=None) -> None:
    """Write records as JSON, CSV or an aligned table (a lone value prints bare)."""
    stream = stream or sys.stdout
    fmt = fmt or "table"
    if fmt == "json":
        doc = rows[0] if len(rows) == 1 else rows
        if isinstance(doc, dict):
            doc = {k: _jsonable(v) for k, v in doc.items()}
        else:
            doc = [{k: _jsonable(v) for k, v in r.items()} for r in doc]
        stream.write(json.dumps(doc) + "\n")
    elif fmt == "csv":
        keys = list(rows[0])
        stream.write(",".join(keys) + "\n")
        for r in rows:
            stream.write(",".join(_fmt(r[k]) for k in keys) + "\n")
    elif len(rows) == 1 and len(rows[0]) == 1:
        stream.write(_fmt(next(iter(rows[0].values()))) + "\n")
    elif len(rows) == 1:
        width = max(map(len, rows[0]))
        for k, v in rows[0].items():
            stream.write(f"{k:<{width}}  {_fmt(v)}\n")
    else:
        keys = list(rows[0])
        cells = [keys] + [[_fmt(r[k]) for k in keys] for r in rows]
        widths = [max(len(c[i]) for c in cells) for i in range(len(keys))]
        for c in cells:
            stream.write("  ".join(s.rjust(w) for s, w in zip(c, widths)) + "\n")


def emit_map(F: CoefficientMap, fmt: str | None, output: str | None, report: list[dict]) -> None:
    """Map to ``output`` (report on stdout) or to stdout (report on stderr)."""
    if output:
        io.write_coefficients(F, output)
        emit(report, "table")
        return
    if fmt == "csv":
        sys.stdout.write(io.coefficients_to_csv(F))
    elif fmt == "table":
        emit([{"sigma": s.to_list(), "value": v} for s, v in F.items()] or [{"sigma": "(empty)"}], "table")
    else:
        sys.stdout.write(json.dumps(io.coefficients_to_json(F)) + "\n")
    emit(report, "table", sys.stderr)


def _load_config(ctx: click.Context, _param, path):
    if not path:
        return path
    try:
        with open(path) as fh:
            config = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise click.BadParameter(f"cannot read config: {exc}") from None
    if not isinstance(config, dict):
        raise click.BadParameter("config must be a JSON object")
    config = {k.replace("-", "_"): v for k, v in config.items()}
    ctx.default_map = {name: dict(config) for name in cli.commands}
    return path


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.option("--format", "fmt", type=click.Choice(FORMATS), default=None, help="Output encoding.")
@click.option("--config", type=click.Path(dir_okay=False), callback=_load_config, is_eager=True,
              expose_value=False, help="JSON file of default flag values.")
@click.version_option(version=__version__)
@click.pass_context
def cli(ctx, fmt):
    """Generalized functionals of discrete-time normal martingales on truncations."""
    ctx.obj = {"fmt": fmt}


def _fmt_of(ctx) -> str | None:
    return ctx.find_root().obj["fmt"]


input_option = click.option("--input", "input_path", type=click.Path(exists=True, dir_okay=False), required=True,
                            help="Coefficient map (.json or .csv).")


@cli.command()
@click.option("--sigma", required=True, help="Comma-separated elements, e.g. 1,2 (empty string for the empty set).")
@click.pass_context
def weight(ctx, sigma):
    """Weight of an index set."""
    emit([{"weight": indexset.weight(_ints(sigma))}], _fmt_of(ctx))


@cli.command()
@click.option("--p", type=float, required=True)
@click.option("--n", type=int, required=True)
@click.pass_context
def series(ctx, p, n):
    """Truncated sum of weight**-p with tail interval and closed-form bound."""
    s = indexset.weight_series(p, n)
    emit([{"p": p, "n": n, "partial": s.partial, "lower": s.partial, "upper": s.upper, "bound": s.bound}],
         _fmt_of(ctx))


@cli.command()
@input_option
@click.option("--p", type=float, required=True)
@click.pass_context
def norm(ctx, input_path, p):
    """Weighted p-norm of a coefficient map."""
    emit([{"p_norm": chaos.p_norm(io.read_coefficients(input_path), p)}], _fmt_of(ctx))


@cli.command()
@input_option
@click.option("--p", type=float, required=True)
@click.pass_context
def dualnorm(ctx, input_path, p):
    """Dual p-norm of a generalized functional."""
    emit([{"dual_norm": chaos.dual_norm(io.read_coefficients(input_path), p)}], _fmt_of(ctx))


@cli.command()
@input_option
@click.option("--test", "test_path", type=click.Path(exists=True, dir_okay=False), required=True,
              help="Chaos coefficients of the testing functional.")
@click.pass_context
def pair(ctx, input_path, test_path):
    """Canonical pairing of a generalized and a testing functional."""
    value = chaos.pairing(io.read_coefficients(input_path), io.read_coefficients(test_path))
    emit([{"pairing": value}], _fmt_of(ctx))


@cli.command()
@input_option
@click.option("--p", "p_grid", required=True, help="Comma-separated exponents.")
@click.option("--decay", is_flag=True, help="Decay (testing) certificates instead of growth.")
@click.pass_context
def classify(ctx, input_path, p_grid, decay):
    """Growth (or decay) certificate constants per exponent."""
    F = io.read_coefficients(input_path)
    fn = chaos.classify_decay if decay else chaos.classify_growth
    certs = fn(F, _floats(p_grid))
    emit([{"p": c.p, "C": c.C, "n": c.truncation_level, "kind": c.kind} for c in certs], _fmt_of(ctx))


@cli.command()
@click.argument("a", type=click.Path(exists=True, dir_okay=False))
@click.argument("b", type=click.Path(exists=True, dir_okay=False))
@click.option("--output", type=click.Path(dir_okay=False), default=None)
@click.pass_context
def conv(ctx, a, b, output):
    """Convolution (pointwise product of Fock transforms)."""
    F, G = io.read_coefficients(a), io.read_coefficients(b)
    H = algebra.convolve(F, G)
    emit_map(H, _fmt_of(ctx) or "json", output, [{"product": "convolution", "n": H.n, "entries": len(H)}])


@cli.command(name="wick")
@click.argument("a", type=click.Path(exists=True, dir_okay=False))
@click.argument("b", type=click.Path(exists=True, dir_okay=False))
@click.option("--n", type=int, default=None, help="Truncation level (default: the inputs').")
@click.option("--naive", is_flag=True, help="Use direct summation instead of the ranked zeta transform.")
@click.option("--output", type=click.Path(dir_okay=False), default=None)
@click.pass_context
def wick_cmd(ctx, a, b, n, naive, output):
    """Wick product (subset convolution of Fock transforms)."""
    F, G = io.read_coefficients(a), io.read_coefficients(b)
    H = (algebra.wick_naive if naive else algebra.wick_fast)(F, G, n)
    report = [{"product": "wick", "method": "naive" if naive else "fast", "n": H.n, "entries": len(H)}]
    emit_map(H, _fmt_of(ctx) or "json", output, report)


@cli.command()
@click.option("--p", type=float, required=True)
@click.option("--q", type=float, required=True)
@click.option("--C", "C", type=float, default=1.0, show_default=True)
@click.option("--n", type=int, default=30, show_default=True, help="Truncation level of the series.")
@click.option("--input", "input_path", type=click.Path(exists=True, dir_okay=False), default=None,
              help="Check the estimate for this functional (its own truncation level is used).")
@click.pass_context
def bound(ctx, p, q, C, n, input_path):
    """Norm bound C * sqrt(sum weight**-2(q-p)), optionally verified on a functional."""
    if input_path:
        r = algebra.verify_norm_estimate(io.read_coefficients(input_path), C, p, q)
        emit([{"p": p, "q": q, "C": C, "n": r.n, "dual_norm": r.norm, "bound": r.bound,
               "bound_upper": r.bound_upper, "passed": r.passed}], _fmt_of(ctx))
        if not r.passed:
            ctx.exit(1)
        return
    if not q > p + 0.5:
        raise ValueError(f"norm estimate needs q > p + 1/2, got p={p}, q={q}")
    s = indexset.hs_series(p, q, n)
    emit([{"p": p, "q": q, "C": C, "n": n, "bound": C * s.partial ** 0.5, "bound_upper": C * s.upper ** 0.5}],
         _fmt_of(ctx))


@cli.command()
@click.option("--n", type=int, required=True)
@click.option("--trials", type=int, required=True)
@click.option("--seed", type=int, required=True)
@click.pass_context
def laws(ctx, n, trials, seed):
    """Algebra laws of both products on random triples."""
    r = algebra.algebra_laws_check(n, trials, seed)
    emit([{"law": k, "max_error": v, "passed": v < r.tol} for k, v in r.errors.items()], _fmt_of(ctx))
    if not r.passed:
        ctx.exit(1)


probs_option = click.option("--probs-file", type=click.Path(exists=True, dir_okay=False), default=None,
                            help='Noise model JSON {"probs": [...]}; symmetric if omitted.')


def _model(probs_file, n) -> martingale.NoiseModel:
    if probs_file is None:
        return martingale.NoiseModel.symmetric(n)
    return io.read_noise_model(probs_file)


@cli.command()
@probs_option
@click.option("--n", type=int, required=True)
@click.option("--count", type=int, required=True)
@click.option("--seed", type=int, required=True)
@click.option("--output", type=click.Path(dir_okay=False), default=None)
def simulate(probs_file, n, count, seed, output):
    """Monte Carlo paths as CSV rows path_id,step,value."""
    paths = martingale.simulate_paths(_model(probs_file, n), n, count, seed)
    if output:
        with open(output, "w", newline="") as fh:
            io.write_paths(paths, fh)
    else:
        io.write_paths(paths, sys.stdout)


@cli.command()
@probs_option
@click.option("--n", type=int, required=True)
@click.pass_context
def verify(ctx, probs_file, n):
    """Exact checks of orthonormality and the martingale identities."""
    model = _model(probs_file, n)
    o = martingale.verify_orthonormality(model, n)
    m = martingale.verify_martingale(model, n)
    emit([
        {"check": "orthonormality", "checked": o.pairs_checked, "max_error": o.max_error, "passed": o.passed},
        {"check": "martingale", "checked": m.atoms_checked,
         "max_error": max(m.max_mean_error, m.max_square_error), "passed": m.passed},
    ], _fmt_of(ctx))
    if not (o.passed and m.passed):
        ctx.exit(1)


@cli.command()
@click.option("--values-file", type=click.Path(exists=True, dir_okay=False), required=True,
              help="Atom values (.csv index,re,im or raw .bin).")
@probs_option
@click.option("--n", type=int, required=True)
@click.option("--output", type=click.Path(dir_okay=False), default=None)
@click.pass_context
def expand(ctx, values_file, probs_file, n, output):
    """Chaos coefficients of a functional given on atoms."""
    model = _model(probs_file, n)
    F = transform.analyze(io.read_dense(values_file), model, n)
    emit_map(F, _fmt_of(ctx) or "json", output, [{"n": n, "entries": len(F), "symmetric": model.truncate(n).is_symmetric}])


@cli.command()
@click.option("--coeffs-file", type=click.Path(exists=True, dir_okay=False), required=True)
@probs_option
@click.option("--n", type=int, required=True)
@click.option("--output", type=click.Path(dir_okay=False), default=None)
def synth(coeffs_file, probs_file, n, output):
    """Atom values from chaos coefficients (CSV index,re,im or raw .bin)."""
    values = transform.synthesize(io.read_coefficients(coeffs_file), _model(probs_file, n), n)
    if output:
        io.write_dense(values, output)
    else:
        sys.stdout.write(io.dense_to_csv(values))


@cli.command(name="selftest")
@click.pass_context
def selftest_cmd(ctx):
    """Run the quick invariant suite and print a pass/fail table."""
    results = selftest.run()
    emit([{"check": name, "result": "PASS" if ok else "FAIL", "detail": detail} for name, ok, detail in results],
         _fmt_of(ctx))
    if not all(ok for _, ok, _ in results):
        ctx.exit(1)


def main(argv=None) -> int:
    try:
        rc = cli.main(args=argv, prog_name="fockchaos", standalone_mode=False)
    except click.ClickException as exc:
        exc.show()
        return exc.exit_code
    except click.Abort:
        click.echo("Aborted!", err=True)
        return 1
    except (ValueError, MemoryError) as exc:
        click.echo(f"error: {exc}", err=True)
        return 1
    return rc if isinstance(rc, int) else 0


if __name__ == "__main__":
    sys.exit(main())
