"""Command-line front end.

File-based I/O for the workbench types, demo commands that regenerate the
headline identities as CSV tables with matplotlib figures rendered
alongside, and a certificate verifier.  All numeric flags have documented
defaults; randomized commands take a seed (default 0) and outputs are
byte-identical across runs with identical flags and seed.

Exit codes: 2 parse/usage errors, 3 precondition violations, 4 certificate
verification failure, 5 numerical non-convergence.
"""

from __future__ import annotations

import csv
import functools
import json
import math
import sys
from pathlib import Path

import click
import numpy as np

from . import algebra, hulls, line, measures, serialization as ser, torus
from .errors import CertificateError, ConvergenceError, PreconditionError


def _exit_codes(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except PreconditionError as exc:
            click.echo(f"precondition violation: {exc}", err=True)
            sys.exit(3)
        except CertificateError as exc:
            click.echo(f"certificate failure: {exc}", err=True)
            sys.exit(4)
        except ConvergenceError as exc:
            click.echo(f"non-convergence: {exc}", err=True)
            sys.exit(5)
        except (json.JSONDecodeError, KeyError, OSError) as exc:
            click.echo(f"parse error: {exc}", err=True)
            sys.exit(2)

    return wrapper


def _load(path):
    return json.loads(Path(path).read_text())


def _emit(obj, output):
    text = ser.dumps(obj)
    if output:
        Path(output).write_text(text + "\n")
    else:
        click.echo(text)


def _write_csv(path, header, rows):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)


def _figure(path, draw):
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(6, 4))
    draw(ax)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


@click.group()
def main():
    """Desk-scale harmonic analysis and hull geometry workbench."""


# -- torus ------------------------------------------------------------------


@main.group("torus")
def torus_group():
    """Fourier analysis on the torus."""


@torus_group.command("analyze")
@click.argument("input_path")
@click.option("--band", type=int, default=None, help="coefficient band (default Nyquist)")
@click.option("-o", "--output", default=None)
@_exit_codes
def torus_analyze(input_path, band, output):
    f = ser.torus_function_from_json(_load(input_path))
    _emit(ser.coeff_table_to_json(torus.analyze(f, band)), output)


@torus_group.command("synth")
@click.argument("input_path")
@click.option("--at", "point", required=True, help="comma-separated re:im per axis")
@_exit_codes
def torus_synth(input_path, point):
    c = ser.coeff_table_from_json(_load(input_path))
    z = [complex(*map(float, p.split(":"))) for p in point.split(",")]
    v = torus.synthesize(c, z)
    click.echo(f"{v.real!r},{v.imag!r}")


@torus_group.command("conv")
@click.argument("f_path")
@click.argument("g_path")
@click.option("-o", "--output", default=None)
@_exit_codes
def torus_conv(f_path, g_path, output):
    f = ser.torus_function_from_json(_load(f_path))
    g = ser.torus_function_from_json(_load(g_path))
    _emit(ser.torus_function_to_json(torus.convolve_torus(f, g)), output)


@torus_group.command("poisson")
@click.argument("input_path")
@click.option("--at", "point", required=True, help="comma-separated re:im per axis")
@_exit_codes
def torus_poisson(input_path, point):
    f = ser.torus_function_from_json(_load(input_path))
    z = [complex(*map(float, p.split(":"))) for p in point.split(",")]
    v = torus.poisson_extend(f, z)
    click.echo(f"{v.real!r},{v.imag!r}")


@torus_group.command("parseval")
@click.argument("input_path")
@_exit_codes
def torus_parseval(input_path):
    f = ser.torus_function_from_json(_load(input_path))
    s, e = torus.parseval(f)
    click.echo(f"{s!r},{e!r}")


@torus_group.command("laurent")
@click.argument("input_path")
@click.option("--radius", type=float, required=True)
@click.option("--index", "j", type=int, required=True)
@_exit_codes
def torus_laurent(input_path, radius, j):
    samples = ser.vector_from_json(_load(input_path))
    v = torus.laurent_coeff(samples, radius, j)
    click.echo(f"{v.real!r},{v.imag!r}")


# -- line -------------------------------------------------------------------


@main.group("line")
def line_group():
    """Fourier transform on the line."""


@line_group.command("ft")
@click.argument("input_path")
@click.option("--xi", required=True, help="comma-separated frequencies")
@_exit_codes
def line_ft(input_path, xi):
    f = ser.line_function_from_json(_load(input_path))
    for x in (float(s) for s in xi.split(",")):
        v = line.ft_quadrature(f, x)
        click.echo(f"{x!r},{v.real!r},{v.imag!r}")


@line_group.command("conv")
@click.argument("f_path")
@click.argument("g_path")
@click.option("-o", "--output", default=None)
@_exit_codes
def line_conv(f_path, g_path, output):
    f = ser.line_function_from_json(_load(f_path))
    g = ser.line_function_from_json(_load(g_path))
    _emit(ser.line_function_to_json(line.convolve_line(f, g)), output)


@line_group.command("poisson")
@click.argument("input_path")
@click.option("--scale", "a", type=float, required=True)
@click.option("--at", "points", required=True, help="comma-separated evaluation points")
@_exit_codes
def line_poisson(input_path, a, points):
    f = ser.line_function_from_json(_load(input_path))
    pts = [float(s) for s in points.split(",")]
    for x, v in zip(pts, line.poisson_convolve(f, a, pts)):
        click.echo(f"{x!r},{v.real!r},{v.imag!r}")


@line_group.command("invert")
@click.argument("input_path")
@click.option("--scale", "a", type=float, default=0.05)
@click.option("--at", "w", type=float, required=True)
@_exit_codes
def line_invert(input_path, a, w):
    f = ser.line_function_from_json(_load(input_path))
    lhs, rhs = line.inversion_check(f, a, w)
    click.echo(f"{lhs.real!r},{lhs.imag!r},{rhs.real!r},{rhs.imag!r}")


@line_group.command("rl-profile")
@click.argument("input_path")
@click.option("--radii", required=True, help="comma-separated R values")
@_exit_codes
def line_rl_profile(input_path, radii):
    obj = _load(input_path)
    g = (
        ser.line_measure_from_json(obj)
        if "atoms" in obj
        else ser.line_function_from_json(obj)
    )
    profile, decaying = line.riemann_lebesgue_profile(g, [float(s) for s in radii.split(",")])
    for R, v in profile:
        click.echo(f"{R!r},{v!r}")
    click.echo(f"decaying,{decaying}")


@line_group.command("measure")
@click.argument("mu_path")
@click.option("--xi", required=True, help="comma-separated frequencies (one axis: scalars)")
@_exit_codes
def line_measure(mu_path, xi):
    mu = ser.line_measure_from_json(_load(mu_path))
    for x in (float(s) for s in xi.split(",")):
        v = measures.measure_ft(mu, [x] * mu.dim)
        click.echo(f"{x!r},{v.real!r},{v.imag!r}")


# -- algebra ----------------------------------------------------------------


@main.group("alg")
def alg_group():
    """Normed-algebra numerics on the matrix carrier."""


def _load_matrix(path):
    return algebra.MatrixElement(ser.matrix_from_json(_load(path)))


@alg_group.command("norm")
@click.argument("input_path")
@_exit_codes
def alg_norm_cmd(input_path):
    report = _load_matrix(input_path).norm_report()
    click.echo(f"{report.value!r},{report.method}")


@alg_group.command("invert")
@click.argument("input_path")
@click.option("--tol", type=float, default=1e-10)
@click.option("-o", "--output", default=None)
@_exit_codes
def alg_invert(input_path, tol, output):
    a = _load_matrix(input_path)
    inv, bound, terms = algebra.neumann_inverse(a, tol)
    _emit(
        {
            "inverse": ser.matrix_to_json(inv.data),
            "bound": bound,
            "terms": terms,
        },
        output,
    )


@alg_group.command("specrad")
@click.argument("input_path")
@click.option("--max-power", type=int, default=256)
@_exit_codes
def alg_specrad(input_path, max_power):
    estimate, seq = algebra.spectral_radius(_load_matrix(input_path), max_power)
    for n, v in seq:
        click.echo(f"{n},{v!r}")
    click.echo(f"estimate,{estimate!r}")


@alg_group.command("volterra")
@click.option("--n", "n_max", type=int, default=6)
@click.option("--grid", "grid_m", type=int, default=2000)
@_exit_codes
def alg_volterra(n_max, grid_m):
    for n in range(1, n_max + 1):
        norm, sigma = algebra.volterra_power_norm(n, grid_m)
        click.echo(f"{n},{sigma!r},{1.0 / math.factorial(n)!r}")


@alg_group.command("cstar")
@click.argument("input_path")
@_exit_codes
def alg_cstar(input_path):
    report = algebra.cstar_checks(_load_matrix(input_path))
    click.echo(ser.dumps({k: v for k, v in report.items() if k != "power_norms"}))
    for l, got, expect in report["power_norms"]:
        click.echo(f"power,{l},{got!r},{expect!r}")


# -- hulls ------------------------------------------------------------------


@main.group("hull")
def hull_group():
    """Convex and polynomial hull membership with certificates."""


@hull_group.command("convex")
@click.argument("sample_path")
@click.option("--at", "point", required=True, help="comma-separated coordinates")
@click.option("--tol", type=float, default=1e-9)
@click.option("-o", "--output", default=None)
@_exit_codes
def hull_convex(sample_path, point, tol, output):
    S = ser.sample_from_json(_load(sample_path))
    if not isinstance(S, hulls.PointCloud):
        raise PreconditionError("convex membership expects a real point cloud")
    x = [float(s) for s in point.split(",")]
    cert = hulls.convex_membership(x, S, tol)
    _emit(ser.certificate_to_json(cert), output)


@hull_group.command("pol")
@click.argument("sample_path")
@click.option("--at", "point", required=True, help="comma-separated re:im coordinates")
@click.option("--tol", type=float, default=1e-7)
@click.option("-o", "--output", default=None)
@_exit_codes
def hull_pol(sample_path, point, tol, output):
    E = ser.sample_from_json(_load(sample_path))
    z = [complex(*map(float, p.split(":"))) for p in point.split(",")]
    cert = hulls.poly_hull_membership(z, E, tol)
    _emit(ser.certificate_to_json(cert), output)


@hull_group.command("eb")
@click.option("--b", type=str, required=True, help="exponent, e.g. 1/2 or 1.4142135623730951")
@click.option("--degree-cap", type=int, default=20)
@click.option("-o", "--output", default=None)
@_exit_codes
def hull_eb(b, degree_cap, output):
    value = (
        float(b.split("/")[0]) / float(b.split("/")[1]) if "/" in b else float(b)
    )
    report = hulls.eb_dichotomy(value, degree_cap)
    if not report["rational"]:
        report = dict(report)
        report["witnesses"] = [
            {k: v for k, v in w.items()} for w in report["witnesses"]
        ]
    _emit(report, output)


@hull_group.command("check-cert")
@click.argument("cert_path")
@click.argument("sample_path")
@click.option("--at", "point", default=None, help="query point (re:im pairs)")
@_exit_codes
def hull_check_cert(cert_path, sample_path, point):
    cert = ser.certificate_from_json(_load(cert_path))
    sample = ser.sample_from_json(_load(sample_path))
    if isinstance(cert, hulls.InsideConvexCombination):
        ok = cert.verify()
    elif isinstance(cert, hulls.SeparatingFunctional):
        if not isinstance(sample, hulls.PointCloud):
            raise PreconditionError("separating functional needs a real point cloud")
        ok = cert.verify(sample.points)
    elif isinstance(cert, hulls.MonomialWitness):
        if point is None:
            raise PreconditionError("monomial witness check needs --at")
        z = [complex(*map(float, p.split(":"))) for p in point.split(",")]
        ok = cert.verify(sample, z)
    elif isinstance(cert, hulls.ExponentialWitness):
        if point is None:
            raise PreconditionError("exponential witness check needs --at")
        z = [complex(*map(float, p.split(":"))) for p in point.split(",")]
        ok = cert.verify(sample.points, z)
    else:
        raise PreconditionError("certificate is not applicable")
    if not ok:
        raise CertificateError("certificate failed verification")
    click.echo("ok")


# -- demos ------------------------------------------------------------------


@main.group("demo")
def demo_group():
    """Regenerate the headline identities as CSV tables plus figures."""


@demo_group.command("volterra")
@click.option("--n", "n_max", type=int, default=6)
@click.option("--grid", "grid_m", type=int, default=2000)
@click.option("-o", "--output", default="volterra")
@_exit_codes
def demo_volterra(n_max, grid_m, output):
    rows = []
    for n in range(1, n_max + 1):
        _, sigma = algebra.volterra_power_norm(n, grid_m)
        exact = 1.0 / math.factorial(n)
        rows.append([n, repr(sigma), repr(exact), repr(abs(sigma * math.factorial(n) - 1.0))])
    _write_csv(f"{output}.csv", ["n", "sigma", "inv_factorial", "rel_error"], rows)

    def draw(ax):
        ns = [r[0] for r in rows]
        ax.semilogy(ns, [float(r[1]) for r in rows], "o-", label="computed")
        ax.semilogy(ns, [float(r[2]) for r in rows], "x--", label="1/n!")
        ax.set_xlabel("n")
        ax.set_ylabel("iterated-integral norm")
        ax.legend()

    _figure(f"{output}.png", draw)
    click.echo(f"wrote {output}.csv and {output}.png")


@demo_group.command("phat")
@click.option("--scales", default="0.5,1,2", help="comma-separated kernel scales")
@click.option("-o", "--output", default="phat")
@_exit_codes
def demo_phat(scales, output):
    rows = []
    for a in (float(s) for s in scales.split(",")):
        xi = np.linspace(-100.0, 100.0, 20001)
        body = float(np.trapezoid(2.0 * a / (a * a + xi * xi), xi))
        tail = 4.0 * math.atan(a / 100.0)
        total = body + tail
        rows.append([repr(a), repr(total), repr(2.0 * math.pi), repr(abs(total - 2 * math.pi))])
    _write_csv(f"{output}.csv", ["a", "integral", "two_pi", "abs_error"], rows)

    def draw(ax):
        a_vals = [float(r[0]) for r in rows]
        ax.plot(a_vals, [float(r[3]) for r in rows], "o-")
        ax.set_xlabel("a")
        ax.set_ylabel("|integral of p_a transform - 2 pi|")
        ax.set_yscale("log")

    _figure(f"{output}.png", draw)
    click.echo(f"wrote {output}.csv and {output}.png")


@demo_group.command("pol-torus")
@click.option("--grid-points", type=int, default=21)
@click.option("--max-modulus", type=float, default=2.0)
@click.option("-o", "--output", default="pol_torus")
@_exit_codes
def demo_pol_torus(grid_points, max_modulus, output):
    E = hulls.CircularSample(
        torus.TorusGrid(2, 16).points(), completely_circular=True
    )
    radii = np.linspace(0.0, max_modulus, grid_points)
    rows = []
    for r1 in radii:
        for r2 in radii:
            cert = hulls.poly_hull_membership([r1, r2], E)
            inside = not isinstance(cert, hulls.MonomialWitness)
            witness = "" if inside else ":".join(map(str, cert.alpha))
            rows.append([repr(float(r1)), repr(float(r2)), int(inside), witness])
    _write_csv(f"{output}.csv", ["r1", "r2", "inside", "witness"], rows)

    def draw(ax):
        xs = [float(r[0]) for r in rows]
        ys = [float(r[1]) for r in rows]
        cs = ["tab:blue" if r[2] else "tab:red" for r in rows]
        ax.scatter(xs, ys, c=cs, s=12)
        ax.set_xlabel("|z1|")
        ax.set_ylabel("|z2|")
        ax.set_title("Pol(T^2) classification (blue inside)")

    _figure(f"{output}.png", draw)
    click.echo(f"wrote {output}.csv and {output}.png")


@demo_group.command("eb")
@click.option("--b", default="1/2")
@click.option("--degree-cap", type=int, default=20)
@click.option("-o", "--output", default="eb")
@_exit_codes
def demo_eb(b, degree_cap, output):
    value = float(b.split("/")[0]) / float(b.split("/")[1]) if "/" in b else float(b)
    report = hulls.eb_dichotomy(value, degree_cap)
    if report["rational"]:
        rows = [[repr(report["b"]), f"{report['beta'][0]}:{report['beta'][1]}", repr(report["monomial_sup"])]]
        _write_csv(f"{output}.csv", ["b", "bounded_monomial", "monomial_sup"], rows)
    else:
        rows = [
            [f"{w['alpha'][0]}:{w['alpha'][1]}", repr(w["s"]), repr(w.get("log_value", 0.0)), int(w["achieved"])]
            for w in report["witnesses"]
        ]
        _write_csv(f"{output}.csv", ["alpha", "s", "log_value", "achieved"], rows)

    def draw(ax):
        if report["rational"]:
            ax.text(0.1, 0.5, f"b = {report['b']}: bounded monomial {report['beta']}")
            ax.set_axis_off()
        else:
            ax.plot([float(r[2]) for r in rows], "o")
            ax.set_xlabel("monomial index")
            ax.set_ylabel("achieved log |w^alpha|")

    _figure(f"{output}.png", draw)
    click.echo(f"wrote {output}.csv and {output}.png")


@demo_group.command("poisson")
@click.option("--grid", "grid_n", type=int, default=1024)
@click.option("-o", "--output", default="poisson")
@_exit_codes
def demo_poisson(grid_n, output):
    grid = torus.TorusGrid(1, grid_n)
    f = torus.TorusFunction(grid, grid.axis_points())  # boundary data f(w) = w
    z0 = complex(np.exp(1j * 0.7))
    rows = []
    # kernel quadrature degrades like r^N, so stop at 0.95 for the default grid
    for r in np.linspace(0.0, 0.95, 39):
        phi = torus.poisson_extend(f, [r * z0])
        # the Poisson extension of w -> w is z -> z, so r z0 is the target
        rows.append([repr(float(r)), repr(float(abs(phi - r * z0))), repr(float(abs(phi - z0)))])
    _write_csv(f"{output}.csv", ["r", "abs_error_vs_rz0", "abs_gap_to_boundary"], rows)

    def draw(ax):
        rs = [float(r[0]) for r in rows]
        ax.semilogy(rs, [max(float(r[2]), 1e-17) for r in rows], "o-")
        ax.set_xlabel("r")
        ax.set_ylabel("|extension at r z0 - boundary value|")

    _figure(f"{output}.png", draw)
    click.echo(f"wrote {output}.csv and {output}.png")


@demo_group.command("gelfand")
@click.option("--seed", type=int, default=0)
@click.option("--dim", type=int, default=4)
@click.option("--max-power", type=int, default=256)
@click.option("-o", "--output", default="gelfand")
@_exit_codes
def demo_gelfand(seed, dim, max_power, output):
    rng = np.random.default_rng(seed)
    A = algebra.MatrixElement(
        rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    )
    estimate, seq = algebra.spectral_radius(A, max_power)
    oracle = algebra.spectral_radius_eig(A)
    rows = [[n, repr(v), repr(oracle)] for n, v in seq]
    _write_csv(f"{output}.csv", ["n", "power_norm_root", "eig_oracle"], rows)

    def draw(ax):
        ax.semilogx([r[0] for r in rows], [float(r[1]) for r in rows], "o-", label="||x^n||^(1/n)")
        ax.axhline(oracle, color="k", ls="--", label="max |eig|")
        ax.set_xlabel("n")
        ax.legend()

    _figure(f"{output}.png", draw)
    click.echo(f"wrote {output}.csv and {output}.png")


if __name__ == "__main__":
    main()
