"""sidelcorr command-line front end.

Exit codes: 0 success, 1 usage error, 2 domain error, 3 verification failure.
Domain errors print one line, ``error: <Code>: <message>``, to stderr.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import click

from . import charsums, correlation, cyclotomy, distribution, sequences
from .cycint import CycInt
from .errors import BadTau, InvalidArgument, SidelcorrError, TrivialCharacter
from .gf import FieldTable, build_field, field_from_json

THREADS_ENV = "SIDELCORR_THREADS"


class VerificationFailed(Exception):
    pass


def _threads() -> int:
    raw = os.environ.get(THREADS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise InvalidArgument(f"{THREADS_ENV} must be an integer, got {raw!r}") from None


def _int_list(text: str | None) -> list[int] | None:
    if text is None:
        return None
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise click.BadParameter(f"expected comma-separated integers, got {text!r}") from None


# -- shared options -----------------------------------------------------------


def field_options(f):
    f = click.option("--field-file", type=click.Path(exists=True, dir_okay=False), help="JSON FieldSpec to use instead of --p/--m.")(f)
    f = click.option("--m", "m", type=int, help="Extension degree.")(f)
    f = click.option("--p", "p", type=int, help="Odd prime characteristic.")(f)
    return f


def output_options(f):
    f = click.option("--output", "-o", type=click.Path(dir_okay=False), help="Write to this file instead of stdout.")(f)
    f = click.option("--format", "fmt", type=click.Choice(["json", "csv", "text"]), default="json", show_default=True)(f)
    return f


def _field(p: int | None, m: int | None, field_file: str | None) -> FieldTable:
    if field_file:
        return field_from_json(Path(field_file).read_text(encoding="utf-8"))
    if p is None or m is None:
        raise click.UsageError("--p and --m are required unless --field-file is given")
    return build_field(p, m)


def _emit(text: str, output: str | None) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        click.echo(text, nl=False)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False)


def _value_rows(rows: list[tuple[int, CycInt]], header: str) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([header, "level", "coeffs", "re", "im"])
    for key, v in rows:
        d = v.to_json()
        w.writerow([key, d["level"], " ".join(map(str, d["coeffs"])), f"{d['re']:.6f}", f"{d['im']:.6f}"])
    return buf.getvalue()


def _fmt_value(v: CycInt) -> str:
    d = v.to_json()
    return f"{v}  ({d['re']:.6f}{d['im']:+.6f}i)"


# -- commands -----------------------------------------------------------------


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.version_option(package_name="artifact")
def main() -> None:
    """Exact correlation analysis of M-ary Sidelnikov sequences."""


@main.command()
@click.option("--p", "p", type=int, required=True)
@click.option("--m", "m", type=int, required=True)
@click.option("--modulus", help="Monic modulus coefficients, constant term first, e.g. 1,0,1,1,1.")
@click.option("--alpha", help="Primitive element coefficients, constant term first.")
@output_options
def field(p, m, modulus, alpha, fmt, output):
    """Construct GF(p^m) and print its description."""
    F = build_field(p, m, _int_list(modulus), _int_list(alpha))
    data = {**F.spec.to_json(), "q": F.q}
    if fmt == "json":
        _emit(_dump(data), output)
    elif fmt == "csv":
        _emit("p,m,q,modulus,alpha\n" + f"{F.p},{F.m},{F.q},{' '.join(map(str, F.spec.modulus))},{' '.join(map(str, F.spec.alpha))}", output)
    else:
        _emit(f"GF({F.p}^{F.m}) q={F.q} modulus={list(F.spec.modulus)} alpha={list(F.spec.alpha)}", output)


@main.command()
@field_options
@click.option("--M", "M", type=int, required=True, help="Alphabet size; must divide q-1.")
@click.option("--multiplier", "c", type=int, default=1, show_default=True)
@output_options
def sequence(p, m, field_file, M, c, fmt, output):
    """Emit one period of c times the M-ary Sidelnikov sequence."""
    F = _field(p, m, field_file)
    s = sequences.sidelnikov(F, M)
    if c % M == 0:
        click.echo(f"warning: multiplier {c} = 0 (mod {M}) gives the all-zero sequence", err=True)
    s = sequences.constant_multiple(s, c)
    if fmt == "json":
        _emit(_dump({"field": F.spec.to_json(), "multiplier": c % M, **s.to_json()}), output)
    elif fmt == "csv":
        _emit("j,digit\n" + "\n".join(f"{j},{d}" for j, d in enumerate(s.digits)), output)
    else:
        _emit(sequences.to_text(s, F), output)


@main.command()
@field_options
@click.option("--M", "M", type=int, required=True)
@click.option("--c1", type=int, required=True)
@click.option("--c2", type=int, required=True)
@click.option("--tau", type=int, help="Single shift; all shifts 0..q-2 when omitted.")
@click.option(
    "--method",
    type=click.Choice(["brute", "closed", "product", "pure"]),
    default="brute",
    show_default=True,
    help="brute: direct summation; closed: A*B*J + A + B - 1; product: A*B*(J+2) - 1; pure: product with the semiprimitive Jacobi value.",
)
@output_options
def correlate(p, m, field_file, M, c1, c2, tau, method, fmt, output):
    """Cross-correlation of c1*s and c2*s."""
    F = _field(p, m, field_file)
    taus = list(range(F.q - 1)) if tau is None else [tau]
    if method == "brute":
        s = sequences.sidelnikov(F, M)
        a, b = sequences.constant_multiple(s, c1), sequences.constant_multiple(s, c2)
        if tau is None:
            values = correlation.full_correlation(a, b).values
        else:
            if not 0 <= tau <= F.q - 2:
                raise BadTau(f"tau={tau} outside [0, {F.q - 2}]")
            values = [correlation.correlate(a, b, tau)]
        jac = None
    else:
        spec = distribution.CrossCorrSpec(F, M, c1, c2)
        if method == "pure":
            values = [distribution.pure_case_correlation(spec, t) for t in taus]
            jac = None
        else:
            form = "exact" if method == "closed" else "product"
            jac = distribution.cross_jacobi(spec) if form == "exact" else distribution.product_form_jacobi(spec)
            fn = distribution.exact_closed_form_correlation if form == "exact" else distribution.closed_form_correlation
            if tau is None:
                values = distribution.closed_form_values(spec, form, jac)
            else:
                values = [fn(spec, tau, jac)]
    rows = list(zip(taus, values))
    if fmt == "json":
        data = {
            "field": F.spec.to_json(),
            "M": M,
            "c1": c1,
            "c2": c2,
            "method": method,
            "jacobi": jac.to_json() if jac else None,
            "values": [{"tau": t, "value": v.to_json()} for t, v in rows],
        }
        _emit(_dump(data), output)
    elif fmt == "csv":
        _emit(_value_rows(rows, "tau"), output)
    else:
        _emit("\n".join(f"C({t}) = {_fmt_value(v)}" for t, v in rows), output)


@main.command("distribution")
@field_options
@click.option("--M", "M", type=int, required=True)
@click.option("--c1", type=int, required=True)
@click.option("--c2", type=int, required=True)
@click.option("--method", type=click.Choice(["per-tau", "counting", "brute"]), default="per-tau", show_default=True)
@click.option("--form", type=click.Choice(["exact", "product"]), default="exact", show_default=True, help="Closed form used by per-tau and counting.")
@output_options
def distribution_cmd(p, m, field_file, M, c1, c2, method, form, fmt, output):
    """Value distribution of C(tau) over tau in [1, q-2]."""
    F = _field(p, m, field_file)
    spec = distribution.CrossCorrSpec(F, M, c1, c2)
    if method == "brute":
        dist = distribution.distribution_brute(spec)
    elif method == "counting":
        dist = distribution.distribution_by_counting(spec, form)
    else:
        dist = distribution.distribution_per_tau(spec, form)
    if fmt == "json":
        _emit(_dump({"field": F.spec.to_json(), **dist.to_json()}), output)
    elif fmt == "csv":
        _emit(dist.to_csv(), output)
    else:
        lines = [f"C(0) = {_fmt_value(dist.tau_zero_value)}"]
        lines += [f"{e.count:6d} x {_fmt_value(e.value)}" for e in dist.entries]
        _emit("\n".join(lines), output)


@main.command()
@field_options
@click.option("--k", type=int, required=True, help="Character order.")
@click.option("--a", type=int, required=True)
@click.option("--b", type=int, required=True)
@click.option("--method", type=click.Choice(["auto", "brute", "pure", "conjugate"]), default="auto", show_default=True)
@output_options
def jacobi(p, m, field_file, k, a, b, method, fmt, output):
    """Jacobi sum J(chi^a, chi^b) for chi of order k."""
    F = _field(p, m, field_file)
    if method == "brute":
        res = charsums.jacobi_sum_brute(F, k, a, b)
    elif method == "pure":
        res = charsums.pure_jacobi(F.p, F.m, k, a, b)
    elif method == "conjugate":
        if (a + b) % k:
            raise InvalidArgument(f"a + b = {a + b} is not 0 mod {k}")
        res = charsums.jacobi_conjugate(F, k, a)
    else:
        res = charsums.jacobi_sum(F, k, a, b)
    if fmt == "json":
        _emit(_dump(res.to_json()), output)
    elif fmt == "csv":
        _emit(_value_rows([(res.method, res.value)], "method"), output)
    else:
        _emit(f"J(chi^{a}, chi^{b}) = {_fmt_value(res.value)} [{res.method}]", output)


@main.command()
@field_options
@click.option("--k", type=int, required=True, help="Character order.")
@click.option("--a", type=int, default=1, show_default=True, help="Character power.")
@click.option("--method", type=click.Choice(["brute", "pure"]), default="brute", show_default=True)
@output_options
def gauss(p, m, field_file, k, a, method, fmt, output):
    """Gauss sum G(chi^a) for chi of order k."""
    F = _field(p, m, field_file)
    if method == "pure":
        if a % k == 0:
            raise TrivialCharacter(f"chi^{a} is trivial for k={k}")
        order = k // math.gcd(k, a % k)
        value = charsums.pure_gauss(F.p, F.m, order)
    else:
        value = charsums.gauss_sum(charsums.CharacterSpec(F, k, a))
    data = {"p": F.p, "m": F.m, "k": k, "a": a, "method": method, "value": value.to_json()}
    if fmt == "json":
        _emit(_dump(data), output)
    elif fmt == "csv":
        _emit(_value_rows([(method, value)], "method"), output)
    else:
        _emit(f"G(chi^{a}) = {_fmt_value(value)} [{method}]", output)


@main.command()
@field_options
@click.option("--k", type=int, required=True)
@click.option("--method", type=click.Choice(["brute", "pure"]), default="brute", show_default=True)
@output_options
def cyclotomic(p, m, field_file, k, method, fmt, output):
    """k x k table of cyclotomic numbers (row u, column v)."""
    F = _field(p, m, field_file)
    table = cyclotomy.cyclotomic_numbers_pure(F.p, F.m, k) if method == "pure" else cyclotomy.cyclotomic_numbers(F, k)
    if fmt == "json":
        _emit(_dump(table.to_json()), output)
    elif fmt == "csv":
        _emit(table.to_csv(), output)
    else:
        width = max(len(str(x)) for x in table.numbers.ravel())
        _emit("\n".join(" ".join(str(x).rjust(width) for x in row) for row in table.numbers.tolist()), output)


@main.command()
@field_options
@click.option("--M", "M", type=int, required=True)
@output_options
def report(p, m, field_file, M, fmt, output):
    """Family report: bounds, C_max, balance and all pair distributions."""
    F = _field(p, m, field_file)
    rep = distribution.family_report(F, M)
    data = rep.to_json()
    if fmt == "json":
        _emit(_dump(data), output)
    elif fmt == "csv":
        keys = ["q", "M", "family_size", "welch_bound", "upper_bound", "c_max", "c_max_cross", "c_max_auto", "bounds_hold", "shift_inequivalent"]
        _emit(",".join(keys) + "\n" + ",".join(str(data[k]) for k in keys), output)
    else:
        _emit(
            "\n".join(
                [
                    f"GF({F.p}^{F.m}) M={M} alpha={list(F.spec.alpha)}",
                    f"Welch bound  {rep.welch:.6f}",
                    f"C_max        {rep.c_max:.6f} (cross {rep.c_max_cross:.6f}, auto {rep.c_max_auto:.6f})",
                    f"sqrt(q) + 3  {rep.upper:.6f}",
                    f"balanced     {all(rep.balanced.values())}",
                    f"inequivalent {rep.shift_inequivalent}",
                ]
            ),
            output,
        )


@main.command()
@click.option("--max-q", type=int, required=True, help="Check every odd prime power q <= max-q.")
@click.option("--max-M", "max_M", type=int, default=12, show_default=True)
@click.option("--form", type=click.Choice(["exact", "product"]), default="exact", show_default=True)
@click.option("--output", "-o", type=click.Path(dir_okay=False))
def verify(max_q, max_M, form, output):
    """Closed form vs direct summation for every q <= max-q, M | q-1, 2 <= M <= max-M."""
    families = distribution.sweep_specs(max_q, max_M)
    with ThreadPoolExecutor(max_workers=_threads()) as pool:
        chunks = list(pool.map(lambda fm: distribution.check_family(fm[0], fm[1], form), families))
    results = [r for chunk in chunks for r in chunk]
    failed = sum(not r.passed for r in results)
    lines = [r.line() for r in results]
    lines.append(f"{len(results) - failed}/{len(results)} instances passed")
    _emit("\n".join(lines), output)
    if failed:
        raise VerificationFailed(f"{failed} instance(s) failed")


# -- entry points -------------------------------------------------------------


def dispatch(argv: list[str] | None = None) -> int:
    """Run one command and return its exit code instead of exiting."""
    try:
        main.main(args=argv, prog_name="sidelcorr", standalone_mode=False)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.UsageError as exc:
        click.echo(f"usage error: {exc.format_message()}", err=True)
        return 1
    except click.ClickException as exc:
        click.echo(f"error: {exc.format_message()}", err=True)
        return 1
    except click.Abort:
        return 1
    except SidelcorrError as exc:
        click.echo(f"error: {exc.code}: {exc}", err=True)
        return 2
    except VerificationFailed as exc:
        click.echo(f"verification failed: {exc}", err=True)
        return 3
    return 0


def run() -> None:
    sys.exit(dispatch(sys.argv[1:]))


if __name__ == "__main__":
    run()
